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

#include "subvec/trainer.h"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "support/oracles.h"
#include "support/synthetic.h"

namespace subvec {
namespace {

EmbeddingModel tiny_model(int dim = 3) {
  TrainConfig cfg;
  cfg.dim = dim;
  cfg.bucket = 10;
  return make_model(Dictionary::from_entries({{"x", 3}, {"y", 2}, {"z", 1}}, 1e-4),
                    cfg);
}

TEST(ScoreTest, ZeroOutputRowScoresZero) {
  EmbeddingModel m = tiny_model();
  for (float& x : m.input.data()) x = 1.5f;
  const int32_t rows[] = {0, 4, 5};
  EXPECT_EQ(score(rows, 1, m), 0.0);
}

TEST(ScoreTest, UnitBasisAndLinearity) {
  EmbeddingModel m = tiny_model();
  m.input(4, 0) = 1;  // e1
  m.input(5, 1) = 1;  // e2
  m.output(2, 0) = 1;
  const int32_t one[] = {4};
  EXPECT_EQ(score(one, 2, m), 1.0);
  m.output(2, 1) = 1;
  const int32_t two[] = {4, 5};
  EXPECT_EQ(score(two, 2, m), 2.0);
}

TEST(LogisticLossTest, Values) {
  EXPECT_NEAR(logistic_loss(0.0), 0.6931471805599453, 1e-15);
  EXPECT_NEAR(logistic_loss(-3.0), 3.0 + logistic_loss(3.0), 1e-12);
  EXPECT_NEAR(logistic_loss(3.0) + logistic_loss(-3.0),
              3.0 + 2.0 * logistic_loss(3.0), 1e-12);
  const double tiny = logistic_loss(700.0);
  EXPECT_TRUE(std::isfinite(tiny));
  EXPECT_GE(tiny, 0.0);
  EXPECT_LT(tiny, 1e-300);
  EXPECT_DOUBLE_EQ(logistic_loss(-1000.0), 1000.0);
  EXPECT_TRUE(std::isfinite(logistic_loss(1000.0)));
}

TEST(SigmoidTest, StableAtExtremes) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
}

TEST(StepTest, LossAtZeroOutput) {
  TrainConfig cfg = testing::toy_config();
  cfg.dim = 10;
  cfg.bucket = 50;
  EmbeddingModel m = initialize_model(
      Dictionary::from_entries({{"walk", 9}, {"talk", 5}, {"jump", 3}}, 1e-4), cfg);
  const SubwordIndex target = subword_index("walk", m.dict, m.cfg);
  const int32_t negatives[] = {0, 2, 0, 2, 2};
  const float loss = step(target, 1, negatives, 0.05f, m);
  EXPECT_NEAR(loss, 6.0 * std::log(2.0), 1e-6);
}

TEST(StepTest, PositiveStepRaisesScore) {
  TrainConfig cfg = testing::toy_config();
  cfg.dim = 10;
  cfg.bucket = 50;
  EmbeddingModel m = initialize_model(
      Dictionary::from_entries({{"walk", 9}, {"talk", 5}}, 1e-4), cfg);
  const SubwordIndex target = subword_index("walk", m.dict, m.cfg);
  ASSERT_EQ(score(target, 1, m), 0.0);
  step(target, 1, {}, 0.05f, m);
  EXPECT_GT(score(target, 1, m), 0.0);
}

TEST(StepTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const testing::GradientCheck r = testing::gradient_check_trial(rng, 10, 5);
    ASSERT_LT(r.max_relative_error, 1e-4) << "trial " << trial;
    ASSERT_LT(r.loss_error, 1e-12) << "trial " << trial;
  }
}

TEST(StepTest, TouchesOnlyNamedRows) {
  std::mt19937_64 rng(77);
  DenseMatrix<float> in(30, 6), out(12, 6);
  std::uniform_real_distribution<float> value(-1, 1);
  for (float& x : in.data()) x = value(rng);
  for (float& x : out.data()) x = value(rng);
  StepWorkspace<float> ws;
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<int32_t> rows = {static_cast<int32_t>(rng() % 30),
                                       static_cast<int32_t>(rng() % 30)};
    const int32_t context = static_cast<int32_t>(rng() % 12);
    const std::vector<int32_t> negs = {static_cast<int32_t>((context + 1) % 12),
                                       static_cast<int32_t>((context + 5) % 12)};
    const auto in_before = in, out_before = out;
    sgd_step<float>(rows, context, negs, 0.1f, in, out, ws);
    const std::set<int32_t> in_touched(rows.begin(), rows.end());
    std::set<int32_t> out_touched(negs.begin(), negs.end());
    out_touched.insert(context);
    for (int32_t r = 0; r < 30; ++r) {
      if (in_touched.count(r)) continue;
      for (int j = 0; j < 6; ++j) ASSERT_EQ(in(r, j), in_before(r, j));
    }
    for (int32_t r = 0; r < 12; ++r) {
      if (out_touched.count(r)) continue;
      for (int j = 0; j < 6; ++j) ASSERT_EQ(out(r, j), out_before(r, j));
    }
  }
}

TEST(StepTest, StaysFiniteOverManySteps) {
  std::mt19937_64 rng(8);
  DenseMatrix<float> in(200, 8), out(10, 8);
  for (float& x : in.data()) x = std::uniform_real_distribution<float>(-0.125f, 0.125f)(rng);
  StepWorkspace<float> ws;
  std::vector<int32_t> rows;
  for (int i = 0; i < 50000; ++i) {
    rows.assign(1 + rng() % 20, 0);
    for (int32_t& r : rows) r = static_cast<int32_t>(rng() % 200);
    const int32_t context = static_cast<int32_t>(rng() % 10);
    const int32_t negs[] = {static_cast<int32_t>((context + 1 + rng() % 9) % 10),
                            static_cast<int32_t>((context + 1 + rng() % 9) % 10)};
    const float loss = sgd_step<float>(rows, context, negs, 0.1f, in, out, ws);
    ASSERT_TRUE(std::isfinite(loss)) << "step " << i;
  }
  for (float x : in.data()) ASSERT_TRUE(std::isfinite(x));
  for (float x : out.data()) ASSERT_TRUE(std::isfinite(x));
}

TEST(LrScheduleTest, LinearDecayWithFloor) {
  EXPECT_DOUBLE_EQ(lr_schedule(0, 1000, 5, 0.05), 0.05);
  EXPECT_DOUBLE_EQ(lr_schedule(2500, 1000, 5, 0.05), 0.025);
  EXPECT_DOUBLE_EQ(lr_schedule(5000, 1000, 5, 0.05), 0.05 * 1e-5);
  EXPECT_DOUBLE_EQ(lr_schedule(7000, 1000, 5, 0.05), 0.05 * 1e-5);
  double prev = lr_schedule(0, 977, 3, 0.1);
  for (int64_t t = 1; t <= 977 * 3 + 10; ++t) {
    const double lr = lr_schedule(t, 977, 3, 0.1);
    ASSERT_LE(lr, prev);
    prev = lr;
  }
}

TEST(InitTest, InputUniformOutputZero) {
  TrainConfig cfg;
  cfg.dim = 16;
  cfg.bucket = 200;
  const EmbeddingModel m = initialize_model(
      Dictionary::from_entries({{"a", 2}, {"b", 1}}, 1e-4), cfg);
  EXPECT_EQ(m.input.rows(), 202);
  EXPECT_EQ(m.output.rows(), 2);
  for (float x : m.input.data()) {
    ASSERT_GE(x, -1.0f / 16);
    ASSERT_LE(x, 1.0f / 16);
  }
  for (float x : m.output.data()) ASSERT_EQ(x, 0.0f);
}

class TrainTest : public ::testing::Test {
 protected:
  testing::TempDir dir_;
};

TEST_F(TrainTest, LossDecreasesOnCyclicCorpus) {
  const auto corpus = dir_ / "cyclic.txt";
  testing::write_file(corpus, testing::make_cyclic_corpus(10000));
  TrainConfig cfg;
  cfg.dim = 10;
  cfg.bucket = 1000;
  cfg.subsample_t = 1.0;
  cfg.lr0 = 0.05;
  // With wider windows "a" is also a context of "a"; only ws=1 is separable.
  cfg.max_window = 1;
  TrainReport report;
  const EmbeddingModel m = train(corpus, cfg, &report);
  ASSERT_EQ(report.epoch_loss.size(), 5u);
  EXPECT_LE(report.epoch_loss.back(), 0.8 * report.epoch_loss.front());
  EXPECT_EQ(report.tokens_processed, 50000);
  EXPECT_GT(report.final_progress.running_loss, 0.0);
  EXPECT_NEAR(report.final_progress.current_lr, 0.05 * 1e-5, 1e-9);
}

TEST_F(TrainTest, SingleThreadIsBitReproducible) {
  const auto corpus = dir_ / "toy.txt";
  testing::write_file(corpus, testing::make_stem_corpus(20000, 3).text);
  TrainConfig cfg = testing::toy_config(42);
  cfg.dim = 16;
  cfg.epochs = 2;
  const EmbeddingModel a = train(corpus, cfg);
  const EmbeddingModel b = train(corpus, cfg);
  EXPECT_EQ(a.input, b.input);
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.dict, b.dict);
  cfg.seed = 43;
  const EmbeddingModel c = train(corpus, cfg);
  EXPECT_NE(a.input, c.input);
}

TEST_F(TrainTest, MultiThreadedRunStaysFinite) {
  const auto corpus = dir_ / "toy.txt";
  testing::write_file(corpus, testing::make_stem_corpus(20000, 4).text);
  TrainConfig cfg = testing::toy_config(1);
  cfg.dim = 16;
  cfg.epochs = 2;
  cfg.threads = 4;
  TrainReport report;
  const EmbeddingModel m = train(corpus, cfg, &report);
  for (float x : m.input.data()) ASSERT_TRUE(std::isfinite(x));
  for (float x : m.output.data()) ASSERT_TRUE(std::isfinite(x));
  EXPECT_EQ(report.tokens_processed, 2 * m.dict.total_tokens());
}

TEST_F(TrainTest, ProgressCallbackReportsDecayingRate) {
  const auto corpus = dir_ / "toy.txt";
  testing::write_file(corpus, testing::make_stem_corpus(120000, 5).text);
  TrainConfig cfg = testing::toy_config(1);
  cfg.dim = 8;
  cfg.epochs = 2;
  std::vector<TrainProgress> seen;
  train(corpus, cfg, nullptr, [&](const TrainProgress& p) { seen.push_back(p); });
  ASSERT_GE(seen.size(), 2u);
  for (std::size_t i = 1; i < seen.size(); ++i) {
    EXPECT_GT(seen[i].tokens_processed, seen[i - 1].tokens_processed);
    EXPECT_LT(seen[i].current_lr, seen[i - 1].current_lr);
    EXPECT_GE(seen[i].running_loss, 0.0);
  }
}

TEST_F(TrainTest, Errors) {
  TrainConfig cfg = testing::toy_config();
  EXPECT_THROW(train(dir_ / "missing.txt", cfg), std::runtime_error);

  const auto sparse = dir_ / "sparse.txt";
  testing::write_file(sparse, "one two three\n");
  EXPECT_THROW(train(sparse, cfg), std::runtime_error);

  const auto single = dir_ / "single.txt";
  testing::write_file(single, "x x x x x y\n");
  EXPECT_THROW(train(single, cfg), std::runtime_error);

  cfg.epochs = 0;
  EXPECT_THROW(train(single, cfg), std::invalid_argument);
}

}  // namespace
}  // namespace subvec
