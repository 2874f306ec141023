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

#ifndef SUBVEC_ANALYSIS_H_
#define SUBVEC_ANALYSIS_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "subvec/model.h"

namespace subvec {

struct NgramImportance {
  std::string ngram;
  // cosine(u_w, u_w - z_g)
  double cosine = 0.0;
  // u_w - z_g was the zero vector; `cosine` is the zero-vector convention.
  bool degenerate = false;
  std::vector<double> restricted;
};

struct ImportanceReport {
  std::string word;
  std::vector<double> full;  // u_w: word row (if any) plus every n-gram row
  std::vector<double> word_row;  // zero for out-of-vocabulary words
  // Most important first: increasing cosine, ties by n-gram string.
  std::vector<NgramImportance> ngrams;
};

// Leave-one-out ranking of a word's n-grams. The word's own row is never
// left out. Throws std::invalid_argument if the word has fewer than two
// index rows.
ImportanceReport ngram_importance(std::string_view word,
                                  const EmbeddingModel& model);

// Pairwise cosines between the n-gram vectors of two words. Axes follow
// n-gram position (start offset, then length).
struct MatchMatrix {
  std::vector<std::string> row_ngrams;  // word A
  std::vector<std::string> col_ngrams;  // word B
  std::vector<double> values;           // row-major

  std::size_t rows() const { return row_ngrams.size(); }
  std::size_t cols() const { return col_ngrams.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * cols() + j]; }
};

MatchMatrix match_matrix(std::string_view word_a, std::string_view word_b,
                         const EmbeddingModel& model);

// Header row and column hold the n-grams, cells have four decimals.
void write_csv(const MatchMatrix& m, std::ostream& out);

// Binary PPM (P6), `cell` pixels per entry. Positive cosines fade from white
// to red, negative ones from white to blue.
void write_ppm(const MatchMatrix& m, std::ostream& out, int cell = 8);

}  // namespace subvec

#endif  // SUBVEC_ANALYSIS_H_
