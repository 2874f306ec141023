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

#include "subvec/corpus.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "subvec/utf8.h"

namespace subvec {
namespace {

constexpr std::size_t kReadBlock = 1 << 16;

}  // namespace

Tokenizer::Tokenizer(std::istream& in)
    : in_(in),
      end_(std::numeric_limits<uint64_t>::max()),
      pos_(0),
      buffer_(kReadBlock) {}

Tokenizer::Tokenizer(std::istream& in, uint64_t begin, uint64_t end)
    : in_(in), end_(end), pos_(begin), buffer_(kReadBlock) {
  in_.clear();
  if (begin > 0) {
    in_.seekg(static_cast<std::streamoff>(begin - 1));
    char prev = ' ';
    if (in_.get(prev)) skip_partial_ = !utf8::is_space(prev);
  } else {
    in_.seekg(0);
  }
}

bool Tokenizer::fill() {
  in_.read(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  filled_ = static_cast<std::size_t>(in_.gcount());
  cursor_ = 0;
  return filled_ > 0;
}

bool Tokenizer::next(Token& token) {
  token.text.clear();
  token.end_of_sentence = false;
  bool in_token = false;
  while (true) {
    if (cursor_ == filled_ && !fill()) break;
    const char c = buffer_[cursor_];
    if (utf8::is_space(c)) {
      if (in_token) break;
      skip_partial_ = false;
      if (pos_ >= end_) return false;
      ++cursor_;
      ++pos_;
      if (c == '\n') {
        token.end_of_sentence = true;
        return true;
      }
      continue;
    }
    if (skip_partial_) {
      ++cursor_;
      ++pos_;
      continue;
    }
    if (!in_token) {
      if (pos_ >= end_) return false;
      in_token = true;
    }
    token.text.push_back(c);
    ++cursor_;
    ++pos_;
  }
  if (!in_token) return false;
  if (!utf8::is_valid(token.text)) token.text = utf8::sanitize(token.text);
  return true;
}

std::vector<Token> tokenize(std::string_view text) {
  std::istringstream in{std::string(text)};
  Tokenizer tokenizer(in);
  std::vector<Token> out;
  Token token;
  while (tokenizer.next(token)) out.push_back(token);
  return out;
}

Dictionary Dictionary::from_entries(std::vector<WordEntry> entries,
                                    double subsample_t) {
  if (entries.empty()) throw std::runtime_error("empty vocabulary");
  Dictionary dict;
  dict.subsample_t_ = subsample_t;
  dict.words_ = std::move(entries);
  dict.word2id_.reserve(dict.words_.size());
  for (std::size_t i = 0; i < dict.words_.size(); ++i) {
    const WordEntry& e = dict.words_[i];
    if (e.count <= 0) {
      throw std::invalid_argument("non-positive count for word '" + e.word +
                                  "'");
    }
    if (!dict.word2id_.emplace(e.word, static_cast<int32_t>(i)).second) {
      throw std::invalid_argument("duplicate word '" + e.word + "'");
    }
    dict.total_tokens_ += e.count;
  }
  dict.discard_.resize(dict.words_.size());
  for (std::size_t i = 0; i < dict.words_.size(); ++i) {
    const double f = static_cast<double>(dict.words_[i].count) /
                     static_cast<double>(dict.total_tokens_);
    dict.discard_[i] = std::max(0.0, 1.0 - std::sqrt(subsample_t / f));
  }
  return dict;
}

std::optional<int32_t> Dictionary::find(std::string_view word) const {
  auto it = word2id_.find(std::string(word));
  if (it == word2id_.end()) return std::nullopt;
  return it->second;
}

bool Dictionary::keep_token(int32_t id, Rng& rng) const {
  const double p = discard_[id];
  if (p <= 0.0) return true;
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) >= p;
}

void DictionaryBuilder::add(std::string_view word) {
  auto it = counts_.find(std::string(word));
  if (it == counts_.end()) {
    counts_.emplace(std::string(word), 1);
  } else {
    ++it->second;
  }
}

Dictionary DictionaryBuilder::build(int min_count, double subsample_t) const {
  std::vector<WordEntry> entries;
  for (const auto& [word, count] : counts_) {
    if (count >= min_count) entries.push_back({word, count});
  }
  if (entries.empty()) {
    throw std::runtime_error("empty vocabulary: no word occurs at least " +
                             std::to_string(min_count) + " times");
  }
  std::sort(entries.begin(), entries.end(),
            [](const WordEntry& a, const WordEntry& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.word < b.word;
            });
  return Dictionary::from_entries(std::move(entries), subsample_t);
}

Dictionary build_dictionary(std::istream& in, int min_count,
                            double subsample_t) {
  DictionaryBuilder builder;
  Tokenizer tokenizer(in);
  Token token;
  while (tokenizer.next(token)) {
    if (!token.end_of_sentence) builder.add(token.text);
  }
  return builder.build(min_count, subsample_t);
}

Dictionary build_dictionary(std::span<const Token> tokens, int min_count,
                            double subsample_t) {
  DictionaryBuilder builder;
  for (const Token& token : tokens) {
    if (!token.end_of_sentence) builder.add(token.text);
  }
  return builder.build(min_count, subsample_t);
}

NegativeSampler::NegativeSampler(const Dictionary& dict,
                                 std::size_t table_size) {
  double z = 0.0;
  for (const WordEntry& e : dict.entries()) {
    z += std::sqrt(static_cast<double>(e.count));
  }
  table_.reserve(table_size + dict.entries().size());
  for (int32_t id = 0; id < dict.size(); ++id) {
    const double share = std::sqrt(static_cast<double>(dict.count(id))) / z;
    const auto slots = static_cast<std::size_t>(
        std::llround(share * static_cast<double>(table_size)));
    table_.insert(table_.end(), std::max<std::size_t>(slots, 1), id);
  }
}

int32_t NegativeSampler::sample(Rng& rng, int32_t forbidden) const {
  std::uniform_int_distribution<std::size_t> slot(0, table_.size() - 1);
  while (true) {
    const int32_t id = table_[slot(rng)];
    if (id != forbidden) return id;
  }
}

}  // namespace subvec
