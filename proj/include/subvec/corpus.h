// Copyright 2026 The Subvec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBVEC_CORPUS_H_
#define SUBVEC_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace subvec {

// Random stream used throughout training. One instance per worker.
using Rng = std::mt19937_64;

struct Token {
  std::string text;
  // Set for the boundary marker produced by a newline; `text` is empty then.
  bool end_of_sentence = false;

  bool operator==(const Token&) const = default;
};

// Splits a UTF-8 byte stream into maximal runs of non-whitespace bytes.
// Every newline additionally produces an end-of-sentence token. Ill-formed
// UTF-8 inside a token is replaced with U+FFFD.
//
// A tokenizer can be restricted to the byte range [begin, end): it then
// yields exactly the tokens whose first byte lies inside the range, so
// adjacent ranges partition the token stream of the whole input.
class Tokenizer {
 public:
  explicit Tokenizer(std::istream& in);
  Tokenizer(std::istream& in, uint64_t begin, uint64_t end);

  // Returns false once the stream (or range) is exhausted.
  bool next(Token& token);

 private:
  bool fill();

  std::istream& in_;
  uint64_t end_;
  uint64_t pos_;  // absolute offset of buffer_[cursor_]
  std::vector<char> buffer_;
  std::size_t cursor_ = 0;
  std::size_t filled_ = 0;
  bool skip_partial_ = false;
};

std::vector<Token> tokenize(std::string_view text);

struct WordEntry {
  std::string word;
  int64_t count = 0;

  bool operator==(const WordEntry&) const = default;
};

// Word vocabulary with dense ids 0..W-1, sorted by decreasing count (ties by
// byte order of the surface form). Immutable once built.
class Dictionary {
 public:
  Dictionary() = default;

  // Takes entries verbatim, in order; ids follow entry order. Used by the
  // model loader and for hand-built models. Throws on empty or duplicate
  // entries and non-positive counts.
  static Dictionary from_entries(std::vector<WordEntry> entries,
                                 double subsample_t);

  int32_t size() const { return static_cast<int32_t>(words_.size()); }
  std::optional<int32_t> find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word).has_value(); }
  const std::string& word(int32_t id) const { return words_[id].word; }
  int64_t count(int32_t id) const { return words_[id].count; }
  int64_t total_tokens() const { return total_tokens_; }
  double subsample_t() const { return subsample_t_; }
  std::span<const WordEntry> entries() const { return words_; }

  // max(0, 1 - sqrt(t / f(w))) with f(w) = count(w) / total_tokens.
  double discard_probability(int32_t id) const { return discard_[id]; }

  // Subsampling decision for one occurrence of `id`.
  bool keep_token(int32_t id, Rng& rng) const;

  bool operator==(const Dictionary& other) const {
    return words_ == other.words_ && subsample_t_ == other.subsample_t_;
  }

 private:
  std::vector<WordEntry> words_;
  std::unordered_map<std::string, int32_t> word2id_;
  std::vector<double> discard_;
  int64_t total_tokens_ = 0;
  double subsample_t_ = 1e-4;
};

// Counts words, then applies the frequency cutoff.
class DictionaryBuilder {
 public:
  void add(std::string_view word);
  // Throws std::runtime_error when no word reaches `min_count`.
  Dictionary build(int min_count, double subsample_t) const;

 private:
  std::unordered_map<std::string, int64_t> counts_;
};

Dictionary build_dictionary(std::istream& in, int min_count,
                            double subsample_t);
Dictionary build_dictionary(std::span<const Token> tokens, int min_count,
                            double subsample_t);

// Unigram^0.5 sampling table. Each word occupies a number of slots
// proportional to sqrt(count), so a uniform slot draw is an O(1) sample.
class NegativeSampler {
 public:
  static constexpr std::size_t kDefaultTableSize = 10'000'000;
  static constexpr int32_t kNone = -1;

  explicit NegativeSampler(const Dictionary& dict,
                           std::size_t table_size = kDefaultTableSize);

  // Draws a word id different from `forbidden` (redraws on collision).
  // Requires at least two words when `forbidden` is a valid id.
  int32_t sample(Rng& rng, int32_t forbidden = kNone) const;

  std::size_t table_size() const { return table_.size(); }

 private:
  std::vector<int32_t> table_;
};

}  // namespace subvec

#endif  // SUBVEC_CORPUS_H_
