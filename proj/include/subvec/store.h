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

#ifndef SUBVEC_STORE_H_
#define SUBVEC_STORE_H_

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "subvec/model.h"

namespace subvec {

// Binary model file, all integers and floats little-endian:
//
//   char[8]  magic "SUBVEC\0\1"
//   u32      version
//   i32 dim, i32 minn, i32 maxn, i64 bucket, i32 min_count, i32 neg,
//   i32 ws, f64 t, f64 lr, i32 epoch
//   i64 W, then W x (u32 byte length, bytes, i64 count)
//   input matrix:  i64 rows, i64 cols, rows*cols f32
//   output matrix: i64 rows, i64 cols, rows*cols f32
inline constexpr char kModelMagic[8] = {'S', 'U', 'B', 'V', 'E', 'C', 0, 1};
inline constexpr uint32_t kModelVersion = 1;

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void save_model(const EmbeddingModel& model, const std::filesystem::path& path);
void save_model(const EmbeddingModel& model, std::ostream& out);

// Throws ModelFormatError for bad magic, unknown version, truncation or
// inconsistent shapes, std::runtime_error if the file cannot be read.
EmbeddingModel load_model(const std::filesystem::path& path);

// Word2vec text format: "W d" header, then one line per word with its
// composed vector (word row plus n-gram rows).
void export_text(const EmbeddingModel& model, const std::filesystem::path& path);
void export_text(const EmbeddingModel& model, std::ostream& out);

// Shortest decimal form that parses back to the same float.
std::string format_float(float x);

// One "word v1 ... vd" line.
void write_vector_line(std::ostream& out, const std::string& word,
                       const std::vector<float>& vec);

struct TextVectors {
  int dim = 0;
  std::vector<std::string> words;
  std::vector<std::vector<float>> vectors;
};

TextVectors load_text_vectors(const std::filesystem::path& path);

}  // namespace subvec

#endif  // SUBVEC_STORE_H_
