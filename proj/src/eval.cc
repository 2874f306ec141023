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

#include "subvec/eval.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "subvec/subword.h"
#include "subvec/utf8.h"

namespace subvec {
namespace {

template <typename T>
double cosine_impl(std::span<const T> u, std::span<const T> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine of vectors with different lengths");
  }
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += static_cast<double>(u[i]) * v[i];
    nu += static_cast<double>(u[i]) * u[i];
    nv += static_cast<double>(v[i]) * v[i];
  }
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && utf8::is_space(line[i])) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !utf8::is_space(line[j])) ++j;
    fields.emplace_back(line, i, j - i);
    i = j;
  }
  return fields;
}

std::runtime_error parse_error(const std::string& source, std::size_t line,
                               const std::string& what) {
  return std::runtime_error(source + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  return in;
}

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void normalize(std::span<float> v) {
  double n = 0.0;
  for (float x : v) n += static_cast<double>(x) * x;
  if (n == 0.0) return;
  const auto inv = static_cast<float>(1.0 / std::sqrt(n));
  for (float& x : v) x *= inv;
}

}  // namespace

std::string_view policy_label(OovPolicy policy) {
  return policy == OovPolicy::kNgramSum ? "sisg" : "sisg-";
}

std::vector<float> word_vector(std::string_view word,
                               const EmbeddingModel& model, OovPolicy policy) {
  if (model.dict.contains(word)) {
    return model.sum_rows(subword_index(word, model.dict, model.cfg).rows());
  }
  std::vector<float> out(static_cast<std::size_t>(model.dim()), 0.0f);
  if (policy == OovPolicy::kNullVector || !is_subword_compatible(word)) {
    return out;
  }
  const SubwordIndex index = subword_index(word, model.dict, model.cfg);
  if (index.ngram_rows.empty()) return out;
  out = model.sum_rows(index.ngram_rows);
  const float inv = 1.0f / static_cast<float>(index.ngram_rows.size());
  for (float& x : out) x *= inv;
  return out;
}

double cosine(std::span<const float> u, std::span<const float> v) {
  return cosine_impl(u, v);
}

double cosine(std::span<const double> u, std::span<const double> v) {
  return cosine_impl(u, v);
}

std::vector<double> fractional_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    // positions i..j (0-based) share rank mean((i+1)..(j+1))
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("spearman: sequences differ in length");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("spearman: need at least two items");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::isnan(xs[i]) || std::isnan(ys[i])) {
      throw std::invalid_argument("spearman: NaN input");
    }
  }
  const std::vector<double> rx = fractional_ranks(xs);
  const std::vector<double> ry = fractional_ranks(ys);
  const double n = static_cast<double>(rx.size());
  const double mean = (n + 1.0) / 2.0;  // mean of any fractional ranking
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw std::domain_error("spearman: constant sequence, correlation undefined");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SimilarityDataset parse_similarity(std::istream& in,
                                   const std::string& source) {
  SimilarityDataset dataset;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.empty() || fields[0][0] == '#') continue;
    if (fields.size() != 3) {
      throw parse_error(source, lineno,
                        "expected \"word1 word2 score\", got " +
                            std::to_string(fields.size()) + " fields");
    }
    double score = 0.0;
    const std::string& s = fields[2];
    const auto res = std::from_chars(s.data(), s.data() + s.size(), score);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() ||
        !std::isfinite(score)) {
      throw parse_error(source, lineno, "bad score '" + s + "'");
    }
    dataset.pairs.push_back(
        {utf8::to_lower(fields[0]), utf8::to_lower(fields[1]), score});
  }
  if (dataset.pairs.size() < 2) {
    throw std::runtime_error(source + ": need at least two pairs, found " +
                             std::to_string(dataset.pairs.size()));
  }
  return dataset;
}

SimilarityDataset load_similarity(const std::filesystem::path& path) {
  std::ifstream in = open_dataset(path);
  return parse_similarity(in, path.string());
}

SimilarityResult eval_similarity(const SimilarityDataset& dataset,
                                 const EmbeddingModel& model,
                                 OovPolicy policy) {
  SimilarityResult result;
  std::vector<double> human, predicted;
  human.reserve(dataset.pairs.size());
  predicted.reserve(dataset.pairs.size());
  for (const SimilarityPair& p : dataset.pairs) {
    if (!model.dict.contains(p.word1) || !model.dict.contains(p.word2)) {
      ++result.oov_pairs;
    }
    const std::vector<float> u = word_vector(p.word1, model, policy);
    const std::vector<float> v = word_vector(p.word2, model, policy);
    human.push_back(p.human_score);
    predicted.push_back(cosine(u, v));
  }
  result.pairs_used = human.size();
  result.rho = spearman(human, predicted);
  result.rho_x100 = static_cast<int>(std::lround(100.0 * result.rho));
  return result;
}

AnalogyDataset parse_analogy(std::istream& in, const std::string& source) {
  AnalogyDataset dataset;
  AnalogyCategory category = AnalogyCategory::kSemantic;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0][0] == ':') {
      category = line.find("gram") != std::string::npos
                     ? AnalogyCategory::kSyntactic
                     : AnalogyCategory::kSemantic;
      continue;
    }
    if (fields.size() != 4) {
      throw parse_error(source, lineno,
                        "expected \"a b c d\", got " +
                            std::to_string(fields.size()) + " fields");
    }
    dataset.questions.push_back(
        {utf8::to_lower(fields[0]), utf8::to_lower(fields[1]),
         utf8::to_lower(fields[2]), utf8::to_lower(fields[3]), category});
  }
  return dataset;
}

AnalogyDataset load_analogy(const std::filesystem::path& path) {
  std::ifstream in = open_dataset(path);
  return parse_analogy(in, path.string());
}

std::optional<double> AnalogyResult::semantic_accuracy() const {
  return ratio(semantic_correct, semantic_attempted);
}

std::optional<double> AnalogyResult::syntactic_accuracy() const {
  return ratio(syntactic_correct, syntactic_attempted);
}

std::optional<double> AnalogyResult::overall_accuracy() const {
  return ratio(semantic_correct + syntactic_correct,
               semantic_attempted + syntactic_attempted);
}

AnalogyResult eval_analogy(const AnalogyDataset& dataset,
                           const EmbeddingModel& model) {
  AnalogyResult result;
  const VectorIndex index(model);
  const std::size_t d = static_cast<std::size_t>(model.dim());
  std::vector<float> query(d);
  for (const AnalogyQuestion& q : dataset.questions) {
    const auto a = model.dict.find(q.a);
    const auto b = model.dict.find(q.b);
    const auto c = model.dict.find(q.c);
    const auto expected = model.dict.find(q.d);
    if (!a || !b || !c || !expected) {
      ++result.skipped;
      continue;
    }
    const auto ua = index.unit_vector(*a);
    const auto ub = index.unit_vector(*b);
    const auto uc = index.unit_vector(*c);
    for (std::size_t j = 0; j < d; ++j) query[j] = ub[j] - ua[j] + uc[j];
    const int32_t exclude[] = {*a, *b, *c};
    const std::vector<Neighbor> best = index.nearest(query, 1, exclude);
    const bool correct = !best.empty() && best[0].id == *expected;
    if (q.category == AnalogyCategory::kSemantic) {
      ++result.semantic_attempted;
      result.semantic_correct += correct;
    } else {
      ++result.syntactic_attempted;
      result.syntactic_correct += correct;
    }
  }
  return result;
}

VectorIndex::VectorIndex(const EmbeddingModel& model)
    : model_(model), unit_(model.nwords(), model.dim()) {
  const auto rows = dictionary_rows(model.dict, model.cfg);
  for (int32_t id = 0; id < model.nwords(); ++id) {
    const std::vector<float> v = model.sum_rows(rows[id]);
    std::copy(v.begin(), v.end(), unit_.row(id).begin());
    normalize(unit_.row(id));
  }
}

std::span<const float> VectorIndex::unit_vector(int32_t id) const {
  return unit_.row(id);
}

std::vector<Neighbor> VectorIndex::nearest(
    std::span<const float> query, std::size_t k,
    std::span<const int32_t> exclude) const {
  std::vector<float> q(query.begin(), query.end());
  normalize(q);
  std::vector<std::pair<double, int32_t>> scored;
  scored.reserve(model_.nwords());
  for (int32_t id = 0; id < model_.nwords(); ++id) {
    if (std::find(exclude.begin(), exclude.end(), id) != exclude.end()) {
      continue;
    }
    const auto u = unit_.row(id);
    double dot = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      dot += static_cast<double>(u[j]) * q[j];
    }
    scored.emplace_back(dot, id);
  }
  const auto better = [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first > y.first;
    return x.second < y.second;
  };
  k = std::min(k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + k, scored.end(), better);
  std::vector<Neighbor> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto [cos, id] = scored[i];
    out.push_back({id, model_.dict.word(id), std::clamp(cos, -1.0, 1.0)});
  }
  return out;
}

std::vector<Neighbor> nearest_neighbors(std::string_view query, std::size_t k,
                                        const EmbeddingModel& model) {
  if (k == 0) return {};
  const VectorIndex index(model);
  const std::vector<float> q = word_vector(query, model, OovPolicy::kNgramSum);
  std::vector<int32_t> exclude;
  if (const auto id = model.dict.find(query)) exclude.push_back(*id);
  return index.nearest(q, k, exclude);
}

}  // namespace subvec
