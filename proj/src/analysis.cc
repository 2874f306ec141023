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

#include "subvec/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "subvec/eval.h"
#include "subvec/subword.h"

namespace subvec {
namespace {

std::vector<double> row_as_double(const EmbeddingModel& model, int32_t r) {
  const auto src = model.input.row(r);
  return {src.begin(), src.end()};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

unsigned char channel(double x) {
  return static_cast<unsigned char>(std::lround(255.0 * std::clamp(x, 0.0, 1.0)));
}

}  // namespace

ImportanceReport ngram_importance(std::string_view word,
                                  const EmbeddingModel& model) {
  const SubwordIndex index = subword_index(word, model.dict, model.cfg);
  if (index.rows().size() < 2) {
    throw std::invalid_argument("'" + std::string(word) +
                                "' needs at least two rows for importance");
  }
  const std::size_t d = static_cast<std::size_t>(model.dim());
  ImportanceReport report;
  report.word = std::string(word);
  report.full.assign(d, 0.0);
  report.word_row.assign(d, 0.0);
  if (index.word_id) report.word_row = row_as_double(model, *index.word_id);
  for (int32_t r : index.rows()) {
    const auto src = model.input.row(r);
    for (std::size_t j = 0; j < d; ++j) report.full[j] += src[j];
  }
  for (std::size_t i = 0; i < index.ngrams.size(); ++i) {
    const auto z = model.input.row(index.ngram_rows[i]);
    NgramImportance item;
    item.ngram = index.ngrams[i];
    item.restricted.resize(d);
    bool zero = true;
    for (std::size_t j = 0; j < d; ++j) {
      item.restricted[j] = report.full[j] - z[j];
      zero = zero && item.restricted[j] == 0.0;
    }
    item.degenerate = zero;
    item.cosine = cosine(std::span<const double>(report.full),
                         std::span<const double>(item.restricted));
    report.ngrams.push_back(std::move(item));
  }
  std::sort(report.ngrams.begin(), report.ngrams.end(),
            [](const NgramImportance& a, const NgramImportance& b) {
              if (a.cosine != b.cosine) return a.cosine < b.cosine;
              return a.ngram < b.ngram;
            });
  return report;
}

MatchMatrix match_matrix(std::string_view word_a, std::string_view word_b,
                         const EmbeddingModel& model) {
  const int n_min = model.cfg.n_min, n_max = model.cfg.n_max;
  MatchMatrix m;
  m.row_ngrams = extract_ngrams(word_a, n_min, n_max);
  m.col_ngrams = extract_ngrams(word_b, n_min, n_max);
  const auto row_of = [&](const std::string& g) {
    return model.input.row(ngram_row(g, model.nwords(), model.cfg.bucket));
  };
  m.values.reserve(m.rows() * m.cols());
  for (const std::string& ga : m.row_ngrams) {
    const auto za = row_of(ga);
    for (const std::string& gb : m.col_ngrams) {
      m.values.push_back(cosine(za, row_of(gb)));
    }
  }
  return m;
}

void write_csv(const MatchMatrix& m, std::ostream& out) {
  for (const std::string& g : m.col_ngrams) out << ',' << csv_field(g);
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << csv_field(m.row_ngrams[i]);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.4f", m.at(i, j));
      std::string cell = buf;
      if (cell == "-0.0000") cell = "0.0000";
      out << ',' << cell;
    }
    out << '\n';
  }
}

void write_ppm(const MatchMatrix& m, std::ostream& out, int cell) {
  if (cell <= 0) throw std::invalid_argument("cell size must be positive");
  const std::size_t width = m.cols() * cell;
  const std::size_t height = m.rows() * cell;
  out << "P6\n" << width << ' ' << height << "\n255\n";
  std::vector<unsigned char> line(width * 3);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = std::clamp(m.at(i, j), -1.0, 1.0);
      unsigned char r, g, b;
      if (v >= 0) {
        r = 255;
        g = b = channel(1.0 - v);
      } else {
        r = g = channel(1.0 + v);
        b = 255;
      }
      for (int k = 0; k < cell; ++k) {
        unsigned char* px = &line[(j * cell + k) * 3];
        px[0] = r;
        px[1] = g;
        px[2] = b;
      }
    }
    for (int k = 0; k < cell; ++k) {
      out.write(reinterpret_cast<const char*>(line.data()),
                static_cast<std::streamsize>(line.size()));
    }
  }
}

}  // namespace subvec
