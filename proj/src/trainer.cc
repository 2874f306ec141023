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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace subvec {
namespace {

// Longer lines are processed in chunks of this many surviving tokens.
constexpr std::size_t kMaxSentence = 1000;
constexpr double kLossSmoothing = 0.01;
constexpr int64_t kProgressInterval = 100000;

Rng worker_rng(uint64_t seed, int worker) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(worker)};
  return Rng(seq);
}

struct SharedState {
  const EmbeddingModel* model = nullptr;
  Matrix* input = nullptr;
  Matrix* output = nullptr;
  const std::vector<std::vector<int32_t>>* rows = nullptr;
  const NegativeSampler* sampler = nullptr;
  std::filesystem::path corpus;
  uint64_t file_size = 0;
  std::atomic<int64_t> tokens{0};
};

struct WorkerResult {
  std::vector<double> loss_sum;
  std::vector<int64_t> examples;
  TrainProgress progress;
};

class Worker {
 public:
  Worker(SharedState& shared, int id, const ProgressCallback& progress)
      : shared_(shared),
        cfg_(shared.model->cfg),
        dict_(shared.model->dict),
        id_(id),
        rng_(worker_rng(cfg_.seed, id)),
        callback_(id == 0 ? progress : ProgressCallback{}) {
    result_.loss_sum.assign(cfg_.epochs, 0.0);
    result_.examples.assign(cfg_.epochs, 0);
    negatives_.resize(cfg_.negatives);
    sentence_.reserve(kMaxSentence);
  }

  WorkerResult run() {
    std::ifstream in(shared_.corpus, std::ios::binary);
    if (!in) {
      throw std::runtime_error("cannot open corpus '" +
                               shared_.corpus.string() + "'");
    }
    const uint64_t n = static_cast<uint64_t>(cfg_.threads);
    const uint64_t begin = shared_.file_size * id_ / n;
    const uint64_t end = shared_.file_size * (id_ + 1) / n;
    for (epoch_ = 0; epoch_ < cfg_.epochs; ++epoch_) {
      Tokenizer tokenizer(in, begin, end);
      Token token;
      sentence_.clear();
      while (tokenizer.next(token)) {
        if (token.end_of_sentence) {
          flush();
          continue;
        }
        const auto id = dict_.find(token.text);
        if (!id) continue;
        ++pending_tokens_;
        if (dict_.keep_token(*id, rng_)) sentence_.push_back(*id);
        if (sentence_.size() >= kMaxSentence) flush();
      }
      flush();
    }
    return std::move(result_);
  }

 private:
  void flush() {
    const int64_t done =
        shared_.tokens.fetch_add(pending_tokens_, std::memory_order_relaxed) +
        pending_tokens_;
    pending_tokens_ = 0;
    const double lr = lr_schedule(done, dict_.total_tokens(), cfg_.epochs,
                                  cfg_.lr0);
    process(static_cast<float>(lr));
    sentence_.clear();

    result_.progress.tokens_processed = done;
    result_.progress.current_lr = lr;
    if (callback_ && done >= next_report_) {
      next_report_ = done + kProgressInterval;
      callback_(result_.progress);
    }
  }

  void process(float lr) {
    const int n = static_cast<int>(sentence_.size());
    std::uniform_int_distribution<int> window(1, cfg_.max_window);
    for (int t = 0; t < n; ++t) {
      const int b = window(rng_);
      const auto& rows = (*shared_.rows)[sentence_[t]];
      for (int c = std::max(0, t - b); c <= std::min(n - 1, t + b); ++c) {
        if (c == t) continue;
        const int32_t context = sentence_[c];
        for (int32_t& neg : negatives_) {
          neg = shared_.sampler->sample(rng_, context);
        }
        const float loss = sgd_step<float>(rows, context, negatives_, lr,
                                           *shared_.input, *shared_.output,
                                           workspace_);
        result_.loss_sum[epoch_] += loss;
        ++result_.examples[epoch_];
        double& ema = result_.progress.running_loss;
        ema = ema == 0.0 ? loss : ema + kLossSmoothing * (loss - ema);
      }
    }
  }

  SharedState& shared_;
  const TrainConfig& cfg_;
  const Dictionary& dict_;
  const int id_;
  Rng rng_;
  ProgressCallback callback_;
  WorkerResult result_;
  std::vector<int32_t> sentence_;
  std::vector<int32_t> negatives_;
  StepWorkspace<float> workspace_;
  int epoch_ = 0;
  int64_t pending_tokens_ = 0;
  int64_t next_report_ = 0;
};

}  // namespace

double score(std::span<const int32_t> rows, int32_t context,
             const EmbeddingModel& model) {
  const std::vector<float> hidden = model.sum_rows(rows);
  const auto v = model.output.row(context);
  double s = 0.0;
  for (std::size_t j = 0; j < hidden.size(); ++j) {
    s += static_cast<double>(hidden[j]) * v[j];
  }
  return s;
}

double score(const SubwordIndex& index, int32_t context,
             const EmbeddingModel& model) {
  return score(index.rows(), context, model);
}

float step(const SubwordIndex& target, int32_t context,
           std::span<const int32_t> negatives, float lr,
           EmbeddingModel& model) {
  StepWorkspace<float> ws;
  return sgd_step<float>(target.rows(), context, negatives, lr, model.input,
                         model.output, ws);
}

double lr_schedule(int64_t tokens_processed, int64_t corpus_tokens,
                   int epochs, double lr0) {
  const double total =
      static_cast<double>(corpus_tokens) * static_cast<double>(epochs);
  const double progress =
      total > 0 ? static_cast<double>(tokens_processed) / total : 1.0;
  return std::max(lr0 * (1.0 - progress), 1e-5 * lr0);
}

EmbeddingModel train(const std::filesystem::path& corpus,
                     const TrainConfig& cfg, TrainReport* report,
                     const ProgressCallback& progress) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  std::ifstream in(corpus, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open corpus '" + corpus.string() + "'");
  }
  Dictionary dict = build_dictionary(in, cfg.min_count, cfg.subsample_t);
  if (dict.size() < 2) {
    throw std::runtime_error(
        "negative sampling needs at least two vocabulary words, got " +
        std::to_string(dict.size()));
  }

  EmbeddingModel model = initialize_model(std::move(dict), cfg);
  const std::vector<std::vector<int32_t>> rows =
      dictionary_rows(model.dict, model.cfg);
  const NegativeSampler sampler(model.dict);

  SharedState shared;
  shared.model = &model;
  shared.input = &model.input;
  shared.output = &model.output;
  shared.rows = &rows;
  shared.sampler = &sampler;
  shared.corpus = corpus;
  shared.file_size = std::filesystem::file_size(corpus);

  std::vector<WorkerResult> results(cfg.threads);
  if (cfg.threads == 1) {
    results[0] = Worker(shared, 0, progress).run();
  } else {
    std::vector<std::exception_ptr> errors(cfg.threads);
    std::vector<std::thread> threads;
    threads.reserve(cfg.threads);
    for (int i = 0; i < cfg.threads; ++i) {
      threads.emplace_back([&, i] {
        try {
          results[i] = Worker(shared, i, progress).run();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  if (report != nullptr) {
    report->epoch_loss.assign(cfg.epochs, 0.0);
    report->examples = 0;
    for (int e = 0; e < cfg.epochs; ++e) {
      double sum = 0.0;
      int64_t count = 0;
      for (const WorkerResult& r : results) {
        sum += r.loss_sum[e];
        count += r.examples[e];
      }
      report->epoch_loss[e] = count > 0 ? sum / static_cast<double>(count) : 0.0;
      report->examples += count;
    }
    report->tokens_processed = shared.tokens.load();
    report->final_progress = results[0].progress;
    report->final_progress.tokens_processed = report->tokens_processed;
    report->seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  }
  return model;
}

}  // namespace subvec
