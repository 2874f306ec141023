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

#include "subvec/model.h"

#include <random>
#include <stdexcept>

namespace subvec {

std::vector<float> EmbeddingModel::sum_rows(
    std::span<const int32_t> rows) const {
  std::vector<float> out(static_cast<std::size_t>(input.cols()), 0.0f);
  for (int32_t r : rows) {
    const auto src = input.row(r);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += src[j];
  }
  return out;
}

EmbeddingModel make_model(Dictionary dict, const TrainConfig& cfg) {
  validate(cfg);
  if (dict.size() == 0) throw std::invalid_argument("empty vocabulary");
  EmbeddingModel model;
  model.cfg = cfg;
  model.input = Matrix(dict.size() + cfg.bucket, cfg.dim);
  model.output = Matrix(dict.size(), cfg.dim);
  model.dict = std::move(dict);
  return model;
}

EmbeddingModel initialize_model(Dictionary dict, const TrainConfig& cfg) {
  EmbeddingModel model = make_model(std::move(dict), cfg);
  Rng rng(cfg.seed);
  const float bound = 1.0f / static_cast<float>(cfg.dim);
  std::uniform_real_distribution<float> uniform(-bound, bound);
  for (float& x : model.input.data()) x = uniform(rng);
  return model;
}

}  // namespace subvec
