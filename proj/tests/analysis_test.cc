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

#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "subvec/eval.h"
#include "subvec/subword.h"
#include "subvec/trainer.h"
#include "support/synthetic.h"

namespace subvec {
namespace {

TrainConfig trigram_config(int dim) {
  TrainConfig cfg;
  cfg.dim = dim;
  cfg.n_min = 3;
  cfg.n_max = 3;
  cfg.bucket = 100003;
  return cfg;
}

// "abc" has rows {word, <ab, abc, bc>}. Each gets its own basis vector.
EmbeddingModel orthogonal_model() {
  EmbeddingModel m = make_model(
      Dictionary::from_entries({{"abc", 3}, {"zz", 1}}, 1e-4), trigram_config(6));
  const SubwordIndex idx = subword_index("abc", m.dict, m.cfg);
  const auto rows = idx.rows();
  EXPECT_EQ(std::set<int32_t>(rows.begin(), rows.end()).size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.input(rows[i], i) = 1;
  return m;
}

TEST(ImportanceTest, OrthogonalRowsTieAndBreakByString) {
  const EmbeddingModel m = orthogonal_model();
  const ImportanceReport r = ngram_importance("abc", m);
  ASSERT_EQ(r.ngrams.size(), 3u);
  for (const auto& g : r.ngrams) {
    EXPECT_NEAR(g.cosine, std::sqrt(3.0 / 4.0), 1e-12);
    EXPECT_FALSE(g.degenerate);
  }
  EXPECT_EQ(r.ngrams[0].ngram, "<ab");
  EXPECT_EQ(r.ngrams[1].ngram, "abc");
  EXPECT_EQ(r.ngrams[2].ngram, "bc>");
  EXPECT_EQ(r.word_row, (std::vector<double>{1, 0, 0, 0, 0, 0}));
}

TEST(ImportanceTest, DominantNgramRanksFirst) {
  EmbeddingModel m = orthogonal_model();
  const SubwordIndex idx = subword_index("abc", m.dict, m.cfg);
  // Scale the "bc>" row.
  for (float& x : m.input.row(idx.ngram_rows[2])) x *= 10;
  const ImportanceReport r = ngram_importance("abc", m);
  EXPECT_EQ(r.ngrams.front().ngram, "bc>");
  EXPECT_LT(r.ngrams.front().cosine, r.ngrams.back().cosine);
}

TEST(ImportanceTest, DegenerateWhenOnlyOneRowRemains) {
  // Out of vocabulary with all mass on a single n-gram.
  EmbeddingModel m = make_model(
      Dictionary::from_entries({{"zz", 1}, {"yy", 1}}, 1e-4), trigram_config(3));
  const SubwordIndex idx = subword_index("ab", m.dict, m.cfg);
  ASSERT_EQ(idx.ngram_rows.size(), 2u);
  m.input(idx.ngram_rows[0], 0) = 1;
  const ImportanceReport r = ngram_importance("ab", m);
  ASSERT_EQ(r.ngrams.size(), 2u);
  const auto& first = r.ngrams.front();
  EXPECT_EQ(first.ngram, "<ab");
  EXPECT_TRUE(first.degenerate);
  EXPECT_EQ(first.cosine, 0.0);
  EXPECT_FALSE(r.ngrams.back().degenerate);
}

TEST(ImportanceTest, NeedsAtLeastTwoRows) {
  const EmbeddingModel m = make_model(
      Dictionary::from_entries({{"a", 2}, {"b", 1}}, 1e-4), trigram_config(3));
  EXPECT_THROW(ngram_importance("a", m), std::invalid_argument);
}

TEST(ImportanceTest, ContributionsReconstructFullVector) {
  TrainConfig cfg = trigram_config(12);
  cfg.n_max = 6;
  cfg.bucket = 997;
  const EmbeddingModel m = initialize_model(
      Dictionary::from_entries({{"walking", 4}, {"talked", 3}, {"été", 2}, {"x", 1}}, 1e-4),
      cfg);
  for (const char* w : {"walking", "talked", "été", "walkers"}) {
    const ImportanceReport r = ngram_importance(w, m);
    std::vector<double> sum(12, 0.0);
    for (const auto& g : r.ngrams)
      for (int j = 0; j < 12; ++j) sum[j] += r.full[j] - g.restricted[j];
    for (int j = 0; j < 12; ++j)
      EXPECT_NEAR(sum[j], r.full[j] - r.word_row[j], 1e-5) << w;
  }
}

TEST(MatchMatrixTest, SelfMatchHasUnitDiagonal) {
  TrainConfig cfg = trigram_config(8);
  const EmbeddingModel m = initialize_model(
      Dictionary::from_entries({{"house", 2}, {"x", 1}}, 1e-4), cfg);
  const MatchMatrix mm = match_matrix("house", "house", m);
  ASSERT_EQ(mm.rows(), extract_ngrams("house", 3, 3).size());
  ASSERT_EQ(mm.rows(), mm.cols());
  for (std::size_t i = 0; i < mm.rows(); ++i) {
    EXPECT_NEAR(mm.at(i, i), 1.0, 1e-9);
    for (std::size_t j = 0; j < mm.cols(); ++j) {
      EXPECT_GE(mm.at(i, j), -1.0);
      EXPECT_LE(mm.at(i, j), 1.0);
    }
  }
}

TEST(MatchMatrixTest, SwappingWordsTransposes) {
  TrainConfig cfg = trigram_config(8);
  cfg.n_max = 5;
  const EmbeddingModel m = initialize_model(
      Dictionary::from_entries({{"house", 2}, {"x", 1}}, 1e-4), cfg);
  const MatchMatrix ab = match_matrix("houseboat", "boathouse", m);
  const MatchMatrix ba = match_matrix("boathouse", "houseboat", m);
  ASSERT_EQ(ab.rows(), ba.cols());
  ASSERT_EQ(ab.cols(), ba.rows());
  for (std::size_t i = 0; i < ab.rows(); ++i)
    for (std::size_t j = 0; j < ab.cols(); ++j) EXPECT_EQ(ab.at(i, j), ba.at(j, i));
}

TEST(MatchMatrixTest, CsvAndPpmFormats) {
  MatchMatrix mm;
  mm.row_ngrams = {"<a", "a,b"};
  mm.col_ngrams = {"x>", "\"q"};
  mm.values = {1.0, -0.5, -0.00001, 0.25};
  std::ostringstream csv;
  write_csv(mm, csv);
  EXPECT_EQ(csv.str(),
            ",x>,\"\"\"q\"\n"
            "<a,1.0000,-0.5000\n"
            "\"a,b\",0.0000,0.2500\n");

  std::ostringstream ppm;
  write_ppm(mm, ppm, 2);
  const std::string img = ppm.str();
  const std::string header = "P6\n4 4\n255\n";
  ASSERT_EQ(img.substr(0, header.size()), header);
  ASSERT_EQ(img.size(), header.size() + 4 * 4 * 3);
  auto pixel = [&](int x, int y) {
    const std::size_t off = header.size() + (y * 4 + x) * 3;
    return std::array<unsigned char, 3>{static_cast<unsigned char>(img[off]),
                                        static_cast<unsigned char>(img[off + 1]),
                                        static_cast<unsigned char>(img[off + 2])};
  };
  EXPECT_EQ(pixel(0, 0), (std::array<unsigned char, 3>{255, 0, 0}));  // +1: red
  EXPECT_EQ(pixel(1, 1), pixel(0, 0));
  const auto neg = pixel(2, 0);  // -0.5: pale blue
  EXPECT_LT(neg[0], 255);
  EXPECT_EQ(neg[2], 255);
  EXPECT_EQ(neg[0], neg[1]);
}

TEST(MatchMatrixTest, TrainedStemsShareNgrams) {
  testing::TempDir dir;
  const auto corpus = dir / "toy.txt";
  testing::write_file(corpus, testing::make_stem_corpus(50000, 11).text);
  TrainConfig cfg = testing::toy_config(11);
  cfg.dim = 30;
  const EmbeddingModel m = train(corpus, cfg);
  // "walking" vs "walked": n-grams inside "walk" should match each other more
  // strongly than the rest of the matrix.
  const MatchMatrix mm = match_matrix("walking", "walked", m);
  double in_sum = 0, out_sum = 0;
  int in_n = 0, out_n = 0;
  auto stem_only = [](const std::string& g) {
    return std::string("<walk").find(g) != std::string::npos;
  };
  for (std::size_t i = 0; i < mm.rows(); ++i) {
    for (std::size_t j = 0; j < mm.cols(); ++j) {
      if (mm.row_ngrams[i] == mm.col_ngrams[j]) continue;
      if (stem_only(mm.row_ngrams[i]) && stem_only(mm.col_ngrams[j])) {
        in_sum += mm.at(i, j);
        ++in_n;
      } else {
        out_sum += mm.at(i, j);
        ++out_n;
      }
    }
  }
  ASSERT_GT(in_n, 0);
  EXPECT_GT(in_sum / in_n, out_sum / out_n);
}

}  // namespace
}  // namespace subvec
