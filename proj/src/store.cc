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

#include "subvec/store.h"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <type_traits>

#include "subvec/subword.h"

namespace subvec {
namespace {

template <typename T>
T to_little_endian(T value) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return value;
}

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  template <typename T>
  void put(T value) {
    static_assert(std::is_arithmetic_v<T>);
    value = to_little_endian(value);
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }

  void put_bytes(const char* data, std::size_t n) {
    out_.write(data, static_cast<std::streamsize>(n));
  }

  void put_matrix(const Matrix& m) {
    put<int64_t>(m.rows());
    put<int64_t>(m.cols());
    if constexpr (std::endian::native == std::endian::little) {
      const auto data = m.data();
      put_bytes(reinterpret_cast<const char*>(data.data()),
                data.size() * sizeof(float));
    } else {
      for (float x : m.data()) put(x);
    }
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, uint64_t size) : in_(in), remaining_(size) {}

  template <typename T>
  T get() {
    static_assert(std::is_arithmetic_v<T>);
    T value;
    get_bytes(reinterpret_cast<char*>(&value), sizeof(T));
    return to_little_endian(value);
  }

  void get_bytes(char* data, std::size_t n) {
    if (n > remaining_) throw ModelFormatError("truncated model file");
    in_.read(data, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw ModelFormatError("truncated model file");
    }
    remaining_ -= n;
  }

  Matrix get_matrix(int64_t expect_rows, int64_t expect_cols,
                    const char* name) {
    const auto rows = get<int64_t>();
    const auto cols = get<int64_t>();
    if (rows != expect_rows || cols != expect_cols) {
      throw ModelFormatError(std::string(name) + " matrix has shape " +
                             std::to_string(rows) + "x" +
                             std::to_string(cols) + ", expected " +
                             std::to_string(expect_rows) + "x" +
                             std::to_string(expect_cols));
    }
    if (static_cast<uint64_t>(rows) * static_cast<uint64_t>(cols) >
        remaining_ / sizeof(float)) {
      throw ModelFormatError("truncated model file");
    }
    Matrix m(rows, cols);
    auto data = m.data();
    get_bytes(reinterpret_cast<char*>(data.data()), data.size() * sizeof(float));
    if constexpr (std::endian::native == std::endian::big) {
      for (float& x : data) x = to_little_endian(x);
    }
    return m;
  }

  uint64_t remaining() const { return remaining_; }

 private:
  std::istream& in_;
  uint64_t remaining_;
};

EmbeddingModel read_model(std::istream& in, uint64_t size) {
  Reader r(in, size);
  char magic[sizeof(kModelMagic)];
  r.get_bytes(magic, sizeof(magic));
  if (std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw ModelFormatError("not a subvec model file (bad magic)");
  }
  const auto version = r.get<uint32_t>();
  if (version != kModelVersion) {
    throw ModelFormatError("unsupported model version " +
                           std::to_string(version) + " (expected " +
                           std::to_string(kModelVersion) + ")");
  }

  TrainConfig cfg;
  cfg.dim = r.get<int32_t>();
  cfg.n_min = r.get<int32_t>();
  cfg.n_max = r.get<int32_t>();
  cfg.bucket = r.get<int64_t>();
  cfg.min_count = r.get<int32_t>();
  cfg.negatives = r.get<int32_t>();
  cfg.max_window = r.get<int32_t>();
  cfg.subsample_t = r.get<double>();
  cfg.lr0 = r.get<double>();
  cfg.epochs = r.get<int32_t>();
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(std::string("invalid stored config: ") + e.what());
  }

  const auto nwords = r.get<int64_t>();
  // Each entry takes at least 12 bytes.
  if (nwords <= 0 || static_cast<uint64_t>(nwords) > r.remaining() / 12) {
    throw ModelFormatError("invalid vocabulary size " + std::to_string(nwords));
  }
  std::vector<WordEntry> entries(static_cast<std::size_t>(nwords));
  for (WordEntry& e : entries) {
    const auto len = r.get<uint32_t>();
    if (len > r.remaining()) throw ModelFormatError("truncated model file");
    e.word.resize(len);
    r.get_bytes(e.word.data(), len);
    e.count = r.get<int64_t>();
  }
  Dictionary dict;
  try {
    dict = Dictionary::from_entries(std::move(entries), cfg.subsample_t);
  } catch (const std::exception& e) {
    throw ModelFormatError(std::string("invalid stored vocabulary: ") +
                           e.what());
  }

  EmbeddingModel model;
  model.cfg = cfg;
  model.input = r.get_matrix(nwords + cfg.bucket, cfg.dim, "input");
  model.output = r.get_matrix(nwords, cfg.dim, "output");
  model.dict = std::move(dict);
  if (r.remaining() != 0) {
    throw ModelFormatError("trailing bytes after model data");
  }
  return model;
}

}  // namespace

void save_model(const EmbeddingModel& model, std::ostream& out) {
  Writer w(out);
  w.put_bytes(kModelMagic, sizeof(kModelMagic));
  w.put<uint32_t>(kModelVersion);
  const TrainConfig& cfg = model.cfg;
  w.put<int32_t>(cfg.dim);
  w.put<int32_t>(cfg.n_min);
  w.put<int32_t>(cfg.n_max);
  w.put<int64_t>(cfg.bucket);
  w.put<int32_t>(cfg.min_count);
  w.put<int32_t>(cfg.negatives);
  w.put<int32_t>(cfg.max_window);
  w.put<double>(cfg.subsample_t);
  w.put<double>(cfg.lr0);
  w.put<int32_t>(cfg.epochs);
  w.put<int64_t>(model.dict.size());
  for (const WordEntry& e : model.dict.entries()) {
    w.put<uint32_t>(static_cast<uint32_t>(e.word.size()));
    w.put_bytes(e.word.data(), e.word.size());
    w.put<int64_t>(e.count);
  }
  w.put_matrix(model.input);
  w.put_matrix(model.output);
}

void save_model(const EmbeddingModel& model,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  save_model(model, out);
  out.flush();
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

EmbeddingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::error_code ec;
  const uint64_t size = std::filesystem::file_size(path, ec);
  if (ec) throw std::runtime_error("cannot stat '" + path.string() + "'");
  try {
    return read_model(in, size);
  } catch (const ModelFormatError& e) {
    throw ModelFormatError(path.string() + ": " + e.what());
  }
}

std::string format_float(float x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_vector_line(std::ostream& out, const std::string& word,
                       const std::vector<float>& vec) {
  out << word;
  for (float x : vec) out << ' ' << format_float(x);
  out << '\n';
}

void export_text(const EmbeddingModel& model, std::ostream& out) {
  out << model.nwords() << ' ' << model.dim() << '\n';
  const auto rows = dictionary_rows(model.dict, model.cfg);
  for (int32_t id = 0; id < model.nwords(); ++id) {
    write_vector_line(out, model.dict.word(id), model.sum_rows(rows[id]));
  }
}

void export_text(const EmbeddingModel& model,
                 const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  export_text(model, out);
  out.flush();
  if (!out) throw std::runtime_error("error writing '" + path.string() + "'");
}

TextVectors load_text_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  const auto fail = [&](std::size_t line, const std::string& what) {
    return std::runtime_error(path.string() + ":" + std::to_string(line) +
                              ": " + what);
  };

  TextVectors out;
  std::string line;
  std::size_t count = 0;
  if (!std::getline(in, line)) throw fail(1, "missing header");
  {
    std::istringstream header(line);
    if (!(header >> count >> out.dim) || out.dim <= 0) {
      throw fail(1, "expected \"<words> <dim>\" header");
    }
  }
  out.words.reserve(count);
  out.vectors.reserve(count);
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const std::size_t sp = line.find(' ');
    if (sp == std::string::npos) throw fail(lineno, "missing vector");
    std::vector<float> vec;
    vec.reserve(out.dim);
    const char* p = line.data() + sp;
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && *p == ' ') ++p;
      if (p == end) break;
      float x;
      const auto res = std::from_chars(p, end, x);
      if (res.ec != std::errc()) throw fail(lineno, "bad number");
      vec.push_back(x);
      p = res.ptr;
    }
    if (static_cast<int>(vec.size()) != out.dim) {
      throw fail(lineno, "expected " + std::to_string(out.dim) +
                             " components, got " + std::to_string(vec.size()));
    }
    out.words.push_back(line.substr(0, sp));
    out.vectors.push_back(std::move(vec));
  }
  if (out.words.size() != count) {
    throw fail(lineno, "header announces " + std::to_string(count) +
                           " words, found " + std::to_string(out.words.size()));
  }
  return out;
}

}  // namespace subvec
