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

#ifndef SUBVEC_CONFIG_H_
#define SUBVEC_CONFIG_H_

#include <cstdint>

namespace subvec {

// Hyperparameters for subword skipgram training. Defaults are the values
// used for the published Wikipedia models.
struct TrainConfig {
  int dim = 300;
  int n_min = 3;
  int n_max = 6;
  int64_t bucket = 2000000;
  int min_count = 5;
  int negatives = 5;
  int max_window = 5;
  double subsample_t = 1e-4;
  double lr0 = 0.05;
  int epochs = 5;

  // Runtime knobs. Not persisted with the model.
  int threads = 1;
  uint64_t seed = 1;

  bool operator==(const TrainConfig&) const = default;
};

// Returns `cfg` unchanged when every field is in range, throws
// std::invalid_argument naming the offending field otherwise.
const TrainConfig& validate(const TrainConfig& cfg);

}  // namespace subvec

#endif  // SUBVEC_CONFIG_H_
