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

#ifndef SUBVEC_SUBWORD_H_
#define SUBVEC_SUBWORD_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subvec/config.h"
#include "subvec/corpus.h"

namespace subvec {

inline constexpr char kBeginOfWord = '<';
inline constexpr char kEndOfWord = '>';

// 32-bit FNV-1a over raw bytes.
constexpr uint32_t fnv1a(std::string_view bytes) {
  uint32_t h = 2166136261u;
  for (char c : bytes) {
    h ^= static_cast<uint8_t>(c);
    h *= 16777619u;
  }
  return h;
}

// True when `word` can be split into n-grams: non-empty, valid UTF-8, no
// whitespace and no boundary symbols.
bool is_subword_compatible(std::string_view word);

// Every substring of "<word>" with n_min <= length <= n_max scalar values,
// ordered by start position then by length, occurrences repeated. The full
// "<word>" token is never included.
std::vector<std::string> enumerate_ngrams(std::string_view word, int n_min,
                                          int n_max);

// enumerate_ngrams with repeated strings dropped (first occurrence kept).
// Throws std::invalid_argument if !is_subword_compatible(word).
std::vector<std::string> extract_ngrams(std::string_view word, int n_min,
                                        int n_max);

// Embedding row of an n-gram: nwords + fnv1a(ngram) mod bucket.
inline int32_t ngram_row(std::string_view ngram, int32_t nwords,
                         int64_t bucket) {
  return nwords + static_cast<int32_t>(fnv1a(ngram) % bucket);
}

// Input-matrix rows that make up a word.
struct SubwordIndex {
  std::optional<int32_t> word_id;
  std::vector<std::string> ngrams;  // distinct, positional order
  std::vector<int32_t> ngram_rows;  // parallel to `ngrams`

  // word row first (when present), then the n-gram rows.
  std::vector<int32_t> rows() const;
};

// Index for any word. In-vocabulary words always have their own row; words
// that cannot be split into n-grams get only that row. Throws
// std::invalid_argument for an out-of-vocabulary word with no n-grams.
SubwordIndex subword_index(std::string_view word, const Dictionary& dict,
                           const TrainConfig& cfg);

// Flat row lists for every dictionary word, indexed by word id.
std::vector<std::vector<int32_t>> dictionary_rows(const Dictionary& dict,
                                                  const TrainConfig& cfg);

}  // namespace subvec

#endif  // SUBVEC_SUBWORD_H_
