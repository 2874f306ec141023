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

#ifndef SUBVEC_EVAL_H_
#define SUBVEC_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subvec/model.h"

namespace subvec {

// How to represent words missing from the training vocabulary.
enum class OovPolicy {
  kNullVector,  // zero vector ("sisg-")
  kNgramSum,    // composed from character n-gram rows ("sisg")
};

std::string_view policy_label(OovPolicy policy);

// In-vocabulary words: word row plus n-gram rows, summed. Out-of-vocabulary
// words under kNgramSum: mean of the n-gram rows. Zero vector otherwise, and
// for OOV words without any usable n-gram.
std::vector<float> word_vector(std::string_view word,
                               const EmbeddingModel& model, OovPolicy policy);

// u.v / (|u| |v|), or 0 when either vector is zero.
double cosine(std::span<const float> u, std::span<const float> v);
double cosine(std::span<const double> u, std::span<const double> v);

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> fractional_ranks(std::span<const double> xs);

// Pearson correlation of fractional ranks. Throws std::invalid_argument for
// mismatched lengths, fewer than two items or NaN, std::domain_error when
// either sequence is constant.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct SimilarityPair {
  std::string word1;
  std::string word2;
  double human_score = 0.0;
};

struct SimilarityDataset {
  std::vector<SimilarityPair> pairs;
};

// "word1 word2 score" per line; blank lines and lines starting with '#' are
// skipped; words are lowercased. Errors carry "<source>:<line>:".
SimilarityDataset parse_similarity(std::istream& in, const std::string& source);
SimilarityDataset load_similarity(const std::filesystem::path& path);

struct SimilarityResult {
  double rho = 0.0;
  int rho_x100 = 0;  // rounded, as printed in result tables
  std::size_t pairs_used = 0;
  std::size_t oov_pairs = 0;  // pairs with at least one OOV word
};

SimilarityResult eval_similarity(const SimilarityDataset& dataset,
                                 const EmbeddingModel& model, OovPolicy policy);

enum class AnalogyCategory { kSemantic, kSyntactic };

struct AnalogyQuestion {
  std::string a, b, c, d;
  AnalogyCategory category = AnalogyCategory::kSemantic;
};

struct AnalogyDataset {
  std::vector<AnalogyQuestion> questions;
};

// ": section" headers followed by "a b c d" lines. Sections whose name
// contains "gram" are syntactic, all others semantic.
AnalogyDataset parse_analogy(std::istream& in, const std::string& source);
AnalogyDataset load_analogy(const std::filesystem::path& path);

struct AnalogyResult {
  std::size_t semantic_correct = 0;
  std::size_t semantic_attempted = 0;
  std::size_t syntactic_correct = 0;
  std::size_t syntactic_attempted = 0;
  std::size_t skipped = 0;

  // Empty when nothing in the category was attempted.
  std::optional<double> semantic_accuracy() const;
  std::optional<double> syntactic_accuracy() const;
  std::optional<double> overall_accuracy() const;
};

// 3CosAdd over length-normalized word vectors. Questions touching an OOV
// word are skipped and excluded from the accuracies.
AnalogyResult eval_analogy(const AnalogyDataset& dataset,
                           const EmbeddingModel& model);

struct Neighbor {
  int32_t id = 0;
  std::string word;
  double cosine = 0.0;
};

// Length-normalized composed vectors of every dictionary word.
class VectorIndex {
 public:
  explicit VectorIndex(const EmbeddingModel& model);

  // Top-k words by cosine with `query`, descending, ties by id. Words in
  // `exclude` are never returned.
  std::vector<Neighbor> nearest(std::span<const float> query, std::size_t k,
                                std::span<const int32_t> exclude = {}) const;

  std::span<const float> unit_vector(int32_t id) const;
  const EmbeddingModel& model() const { return model_; }

 private:
  const EmbeddingModel& model_;
  Matrix unit_;
};

// Nearest dictionary words to `query`, which may be out of vocabulary
// (composed from its n-grams). The query word itself is excluded.
std::vector<Neighbor> nearest_neighbors(std::string_view query, std::size_t k,
                                        const EmbeddingModel& model);

}  // namespace subvec

#endif  // SUBVEC_EVAL_H_
