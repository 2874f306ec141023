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

#ifndef SUBVEC_MODEL_H_
#define SUBVEC_MODEL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "subvec/config.h"
#include "subvec/corpus.h"

namespace subvec {

// Row-major dense matrix.
template <typename Real>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int64_t rows, int64_t cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  int64_t rows() const { return rows_; }
  int64_t cols() const { return cols_; }

  std::span<Real> row(int64_t i) {
    return {data_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<const Real> row(int64_t i) const {
    return {data_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }
  Real& operator()(int64_t i, int64_t j) { return data_[i * cols_ + j]; }
  Real operator()(int64_t i, int64_t j) const { return data_[i * cols_ + j]; }

  std::span<Real> data() { return data_; }
  std::span<const Real> data() const { return data_; }

  bool operator==(const DenseMatrix&) const = default;

 private:
  int64_t rows_ = 0;
  int64_t cols_ = 0;
  std::vector<Real> data_;
};

using Matrix = DenseMatrix<float>;

// Trained (or hand-built) subword skipgram model.
//
// `input` holds W word rows followed by `cfg.bucket` hashed n-gram rows;
// `output` holds one context vector per word.
struct EmbeddingModel {
  TrainConfig cfg;
  Dictionary dict;
  Matrix input;
  Matrix output;

  int32_t nwords() const { return dict.size(); }
  int dim() const { return cfg.dim; }

  // Sum of the given input rows.
  std::vector<float> sum_rows(std::span<const int32_t> rows) const;
};

// Zero model with the shapes implied by `dict` and `cfg`.
EmbeddingModel make_model(Dictionary dict, const TrainConfig& cfg);

// Training start point: input rows uniform in [-1/d, 1/d] drawn from a
// stream seeded with cfg.seed, output rows zero.
EmbeddingModel initialize_model(Dictionary dict, const TrainConfig& cfg);

}  // namespace subvec

#endif  // SUBVEC_MODEL_H_
