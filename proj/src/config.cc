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

#include "subvec/config.h"

#include <stdexcept>
#include <string>

namespace subvec {
namespace {

template <typename T>
void require_positive(T value, const char* name) {
  if (value <= 0) {
    throw std::invalid_argument(std::string(name) + " must be positive, got " +
                                std::to_string(value));
  }
}

}  // namespace

const TrainConfig& validate(const TrainConfig& cfg) {
  require_positive(cfg.dim, "dim");
  require_positive(cfg.n_min, "minn");
  require_positive(cfg.n_max, "maxn");
  require_positive(cfg.bucket, "bucket");
  require_positive(cfg.min_count, "min-count");
  require_positive(cfg.negatives, "neg");
  require_positive(cfg.max_window, "ws");
  require_positive(cfg.epochs, "epoch");
  require_positive(cfg.threads, "thread");
  if (cfg.n_min > cfg.n_max) {
    throw std::invalid_argument("minn (" + std::to_string(cfg.n_min) +
                                ") must not exceed maxn (" +
                                std::to_string(cfg.n_max) + ")");
  }
  // Rows are addressed with 32-bit indices.
  if (cfg.bucket > 1'000'000'000) {
    throw std::invalid_argument("bucket too large: " +
                                std::to_string(cfg.bucket));
  }
  if (!(cfg.subsample_t > 0.0 && cfg.subsample_t <= 1.0)) {
    throw std::invalid_argument("t must lie in (0, 1], got " +
                                std::to_string(cfg.subsample_t));
  }
  if (!(cfg.lr0 > 0.0)) {
    throw std::invalid_argument("lr must be positive, got " +
                                std::to_string(cfg.lr0));
  }
  return cfg;
}

}  // namespace subvec
