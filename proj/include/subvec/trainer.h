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

#ifndef SUBVEC_TRAINER_H_
#define SUBVEC_TRAINER_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "subvec/config.h"
#include "subvec/model.h"
#include "subvec/subword.h"

namespace subvec {

// log(1 + exp(-x)), accurate for large |x|.
inline double logistic_loss(double x) {
  if (x > 0) return std::log1p(std::exp(-x));
  return -x + std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// s(w, c): dot product of the summed input rows with output row `context`.
double score(std::span<const int32_t> rows, int32_t context,
             const EmbeddingModel& model);
double score(const SubwordIndex& index, int32_t context,
             const EmbeddingModel& model);

// Scratch vectors reused across steps by one worker.
template <typename Real>
struct StepWorkspace {
  std::vector<Real> hidden;
  std::vector<Real> grad;
  std::vector<Real> coef;
};

// One SGD update on the negative-sampling loss
//   l(s(w, context)) + sum_n l(-s(w, n)),   s(w, c) = (sum_r input_r) . output_c
// All scores and gradients are taken at the parameters as they were on
// entry. The input-side gradient is accumulated once and added to every row
// in `rows` (a row listed twice receives it twice). Returns the loss before
// the update.
template <typename Real>
Real sgd_step(std::span<const int32_t> rows, int32_t context,
              std::span<const int32_t> negatives, Real lr,
              DenseMatrix<Real>& input, DenseMatrix<Real>& output,
              StepWorkspace<Real>& ws) {
  const std::size_t d = static_cast<std::size_t>(input.cols());
  ws.hidden.assign(d, Real(0));
  ws.grad.assign(d, Real(0));
  ws.coef.resize(negatives.size() + 1);

  for (int32_t r : rows) {
    const Real* src = input.row(r).data();
    for (std::size_t j = 0; j < d; ++j) ws.hidden[j] += src[j];
  }

  double loss = 0.0;
  for (std::size_t i = 0; i <= negatives.size(); ++i) {
    const bool positive = i == 0;
    const int32_t target = positive ? context : negatives[i - 1];
    const Real* v = output.row(target).data();
    Real s = 0;
    for (std::size_t j = 0; j < d; ++j) s += ws.hidden[j] * v[j];
    double g;
    if (positive) {
      loss += logistic_loss(s);
      g = 1.0 - sigmoid(s);
    } else {
      loss += logistic_loss(-s);
      g = -sigmoid(s);
    }
    const Real c = static_cast<Real>(g) * lr;
    ws.coef[i] = c;
    for (std::size_t j = 0; j < d; ++j) ws.grad[j] += c * v[j];
  }

  for (std::size_t i = 0; i <= negatives.size(); ++i) {
    const int32_t target = i == 0 ? context : negatives[i - 1];
    Real* v = output.row(target).data();
    const Real c = ws.coef[i];
    for (std::size_t j = 0; j < d; ++j) v[j] += c * ws.hidden[j];
  }
  for (int32_t r : rows) {
    Real* dst = input.row(r).data();
    for (std::size_t j = 0; j < d; ++j) dst[j] += ws.grad[j];
  }
  return static_cast<Real>(loss);
}

// sgd_step on a model.
float step(const SubwordIndex& target, int32_t context,
           std::span<const int32_t> negatives, float lr, EmbeddingModel& model);

// lr0 * (1 - t / (T * P)), floored at 1e-5 * lr0.
double lr_schedule(int64_t tokens_processed, int64_t corpus_tokens,
                   int epochs, double lr0);

struct TrainProgress {
  int64_t tokens_processed = 0;
  double current_lr = 0.0;
  double running_loss = 0.0;  // exponential moving average per example
};

struct TrainReport {
  // Mean example loss over each pass, in pass order.
  std::vector<double> epoch_loss;
  int64_t tokens_processed = 0;
  int64_t examples = 0;
  double seconds = 0.0;
  TrainProgress final_progress;

  double tokens_per_second() const {
    return seconds > 0 ? static_cast<double>(tokens_processed) / seconds : 0.0;
  }
};

using ProgressCallback = std::function<void(const TrainProgress&)>;

// Trains on a whitespace-tokenized UTF-8 corpus. With cfg.threads > 1 the
// file is split into contiguous byte ranges, one per worker, and workers
// update the shared matrices without synchronization.
EmbeddingModel train(const std::filesystem::path& corpus,
                     const TrainConfig& cfg, TrainReport* report = nullptr,
                     const ProgressCallback& progress = {});

}  // namespace subvec

#endif  // SUBVEC_TRAINER_H_
