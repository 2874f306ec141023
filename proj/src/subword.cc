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

#include "subvec/subword.h"

#include <stdexcept>
#include <unordered_set>

#include "subvec/utf8.h"

namespace subvec {

bool is_subword_compatible(std::string_view word) {
  if (word.empty() || !utf8::is_valid(word)) return false;
  for (char c : word) {
    if (c == kBeginOfWord || c == kEndOfWord || utf8::is_space(c)) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> enumerate_ngrams(std::string_view word, int n_min,
                                          int n_max) {
  std::string marked;
  marked.reserve(word.size() + 2);
  marked.push_back(kBeginOfWord);
  marked.append(word);
  marked.push_back(kEndOfWord);

  const std::vector<std::size_t> bounds = utf8::boundaries(marked);
  const int length = static_cast<int>(bounds.size()) - 1;
  std::vector<std::string> out;
  for (int start = 0; start < length; ++start) {
    for (int n = n_min; n <= n_max && start + n <= length; ++n) {
      if (start == 0 && n == length) continue;
      out.emplace_back(marked, bounds[start], bounds[start + n] - bounds[start]);
    }
  }
  return out;
}

std::vector<std::string> extract_ngrams(std::string_view word, int n_min,
                                        int n_max) {
  if (!is_subword_compatible(word)) {
    throw std::invalid_argument("cannot extract n-grams from '" +
                                utf8::sanitize(word) + "'");
  }
  std::vector<std::string> all = enumerate_ngrams(word, n_min, n_max);
  std::unordered_set<std::string> seen;
  std::vector<std::string> out;
  out.reserve(all.size());
  for (std::string& g : all) {
    if (seen.insert(g).second) out.push_back(std::move(g));
  }
  return out;
}

std::vector<int32_t> SubwordIndex::rows() const {
  std::vector<int32_t> out;
  out.reserve(ngram_rows.size() + 1);
  if (word_id) out.push_back(*word_id);
  out.insert(out.end(), ngram_rows.begin(), ngram_rows.end());
  return out;
}

SubwordIndex subword_index(std::string_view word, const Dictionary& dict,
                           const TrainConfig& cfg) {
  SubwordIndex index;
  index.word_id = dict.find(word);
  if (is_subword_compatible(word)) {
    index.ngrams = extract_ngrams(word, cfg.n_min, cfg.n_max);
    index.ngram_rows.reserve(index.ngrams.size());
    for (const std::string& g : index.ngrams) {
      index.ngram_rows.push_back(ngram_row(g, dict.size(), cfg.bucket));
    }
  }
  if (!index.word_id && index.ngram_rows.empty()) {
    throw std::invalid_argument("out-of-vocabulary word '" +
                                utf8::sanitize(word) + "' has no n-grams");
  }
  return index;
}

std::vector<std::vector<int32_t>> dictionary_rows(const Dictionary& dict,
                                                  const TrainConfig& cfg) {
  std::vector<std::vector<int32_t>> out;
  out.reserve(dict.size());
  for (int32_t id = 0; id < dict.size(); ++id) {
    out.push_back(subword_index(dict.word(id), dict, cfg).rows());
  }
  return out;
}

}  // namespace subvec
