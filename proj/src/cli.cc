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

#include "subvec/cli.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "subvec/analysis.h"
#include "subvec/eval.h"
#include "subvec/store.h"
#include "subvec/trainer.h"

namespace subvec::cli {
namespace {

constexpr std::string_view kUsage =
    "usage: subvec <command> [flags]\n"
    "\n"
    "commands:\n"
    "  train       -input corpus.txt -output model.bin [-dim -minn -maxn\n"
    "              -bucket -min-count -neg -ws -t -lr -epoch -thread -seed\n"
    "              -verbose]\n"
    "  similarity  -model m -data pairs.txt [-oov null|ngrams] [-pretty]\n"
    "  analogy     -model m -data questions.txt [-pretty]\n"
    "  nn          -model m -query word [-k 10] [-pretty]\n"
    "  vectors     -model m [-oov null|ngrams]   (words on standard input)\n"
    "  importance  -model m -word w [-pretty]\n"
    "  match       -model m -a word1 -b word2 -csv out.csv [-ppm out.ppm]\n"
    "  export      -model m -output vectors.txt\n";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single-dash flags: "-name value" or a bare "-switch".
class Flags {
 public:
  Flags(std::span<const std::string> args,
        std::initializer_list<std::string_view> valued,
        std::initializer_list<std::string_view> switches = {}) {
    for (std::size_t i = 0; i < args.size(); ++i) {
      const std::string& arg = args[i];
      if (arg.size() < 2 || arg[0] != '-') {
        throw UsageError("unexpected argument '" + arg + "'");
      }
      const std::string name = arg.substr(1);
      if (contains(switches, name)) {
        switches_.insert({name, true});
        continue;
      }
      if (!contains(valued, name)) throw UsageError("unknown flag " + arg);
      if (i + 1 >= args.size()) throw UsageError("flag " + arg + " needs a value");
      values_[name] = args[++i];
    }
  }

  bool has(const std::string& name) const {
    return values_.count(name) > 0 || switches_.count(name) > 0;
  }

  const std::string& require(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw UsageError("missing required flag -" + name);
    return it->second;
  }

  std::optional<std::string> get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  template <typename T>
  void read(const std::string& name, T& target) const {
    auto it = values_.find(name);
    if (it == values_.end()) return;
    const std::string& s = it->second;
    T value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw UsageError("invalid value '" + s + "' for -" + name);
    }
    target = value;
  }

 private:
  static bool contains(std::initializer_list<std::string_view> names,
                       std::string_view name) {
    for (std::string_view n : names) {
      if (n == name) return true;
    }
    return false;
  }

  std::map<std::string, std::string> values_;
  std::map<std::string, bool> switches_;
};

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, x);
  return buf;
}

std::string optional_fixed(const std::optional<double>& x) {
  return x ? fixed(*x) : "n/a";
}

OovPolicy parse_policy(const Flags& flags, OovPolicy fallback) {
  const auto value = flags.get("oov");
  if (!value) return fallback;
  if (*value == "null") return OovPolicy::kNullVector;
  if (*value == "ngrams") return OovPolicy::kNgramSum;
  throw UsageError("invalid value '" + *value + "' for -oov (null|ngrams)");
}

int cmd_train(std::span<const std::string> args, std::ostream& out,
              std::ostream& err) {
  const Flags flags(args,
                    {"input", "output", "dim", "minn", "maxn", "bucket",
                     "min-count", "neg", "ws", "t", "lr", "epoch", "thread",
                     "seed"},
                    {"verbose"});
  TrainConfig cfg;
  flags.read("dim", cfg.dim);
  flags.read("minn", cfg.n_min);
  flags.read("maxn", cfg.n_max);
  flags.read("bucket", cfg.bucket);
  flags.read("min-count", cfg.min_count);
  flags.read("neg", cfg.negatives);
  flags.read("ws", cfg.max_window);
  flags.read("t", cfg.subsample_t);
  flags.read("lr", cfg.lr0);
  flags.read("epoch", cfg.epochs);
  flags.read("thread", cfg.threads);
  flags.read("seed", cfg.seed);
  const std::string input = flags.require("input");
  const std::string output = flags.require("output");
  validate(cfg);

  ProgressCallback progress;
  if (flags.has("verbose")) {
    progress = [&err](const TrainProgress& p) {
      err << "tokens " << p.tokens_processed << "  lr " << fixed(p.current_lr)
          << "  loss " << fixed(p.running_loss) << '\n';
    };
  }
  TrainReport report;
  const EmbeddingModel model = train(input, cfg, &report, progress);
  save_model(model, output);

  out << "words\t" << model.nwords() << '\n';
  out << "tokens\t" << model.dict.total_tokens() << '\n';
  for (std::size_t e = 0; e < report.epoch_loss.size(); ++e) {
    out << "loss_epoch" << e + 1 << '\t' << fixed(report.epoch_loss[e]) << '\n';
  }
  err << "trained in " << fixed(report.seconds, 2) << "s, "
      << static_cast<int64_t>(report.tokens_per_second() / cfg.threads)
      << " tokens/s/thread\n";
  return 0;
}

int cmd_similarity(std::span<const std::string> args, std::ostream& out) {
  const Flags flags(args, {"model", "data", "oov"}, {"pretty"});
  const OovPolicy policy = parse_policy(flags, OovPolicy::kNullVector);
  const EmbeddingModel model = load_model(flags.require("model"));
  const SimilarityDataset data = load_similarity(flags.require("data"));
  const SimilarityResult r = eval_similarity(data, model, policy);
  if (flags.has("pretty")) {
    out << std::left << std::setw(8) << "model" << std::setw(8) << "rho"
        << std::setw(8) << "pairs" << "oov_pairs\n"
        << std::setw(8) << policy_label(policy) << std::setw(8) << r.rho_x100
        << std::setw(8) << r.pairs_used << r.oov_pairs << '\n';
    return 0;
  }
  out << "model\t" << policy_label(policy) << '\n'
      << "rho\t" << fixed(r.rho) << '\n'
      << "rho_x100\t" << r.rho_x100 << '\n'
      << "pairs\t" << r.pairs_used << '\n'
      << "oov_pairs\t" << r.oov_pairs << '\n';
  return 0;
}

int cmd_analogy(std::span<const std::string> args, std::ostream& out) {
  const Flags flags(args, {"model", "data"}, {"pretty"});
  const EmbeddingModel model = load_model(flags.require("model"));
  const AnalogyDataset data = load_analogy(flags.require("data"));
  const AnalogyResult r = eval_analogy(data, model);
  if (flags.has("pretty")) {
    const auto pct = [](const std::optional<double>& x) {
      return x ? fixed(100.0 * *x, 1) : std::string("n/a");
    };
    out << std::left << std::setw(12) << "category" << std::setw(10)
        << "accuracy" << "attempted\n"
        << std::setw(12) << "semantic" << std::setw(10)
        << pct(r.semantic_accuracy()) << r.semantic_attempted << '\n'
        << std::setw(12) << "syntactic" << std::setw(10)
        << pct(r.syntactic_accuracy()) << r.syntactic_attempted << '\n'
        << "skipped " << r.skipped << '\n';
    return 0;
  }
  out << "semantic_accuracy\t" << optional_fixed(r.semantic_accuracy()) << '\n'
      << "syntactic_accuracy\t" << optional_fixed(r.syntactic_accuracy())
      << '\n'
      << "semantic_attempted\t" << r.semantic_attempted << '\n'
      << "syntactic_attempted\t" << r.syntactic_attempted << '\n'
      << "skipped\t" << r.skipped << '\n';
  return 0;
}

int cmd_nn(std::span<const std::string> args, std::ostream& out) {
  const Flags flags(args, {"model", "query", "k"}, {"pretty"});
  int k = 10;
  flags.read("k", k);
  if (k < 0) throw UsageError("-k must not be negative");
  const EmbeddingModel model = load_model(flags.require("model"));
  const std::string& query = flags.require("query");
  const auto neighbors =
      nearest_neighbors(query, static_cast<std::size_t>(k), model);
  for (const Neighbor& n : neighbors) {
    if (flags.has("pretty")) {
      out << std::left << std::setw(24) << n.word << fixed(n.cosine, 4) << '\n';
    } else {
      out << n.word << '\t' << fixed(n.cosine) << '\n';
    }
  }
  return 0;
}

int cmd_vectors(std::span<const std::string> args, std::istream& in,
                std::ostream& out) {
  const Flags flags(args, {"model", "oov"});
  const OovPolicy policy = parse_policy(flags, OovPolicy::kNgramSum);
  const EmbeddingModel model = load_model(flags.require("model"));
  std::string word;
  while (in >> word) {
    write_vector_line(out, word, word_vector(word, model, policy));
  }
  return 0;
}

int cmd_importance(std::span<const std::string> args, std::ostream& out) {
  const Flags flags(args, {"model", "word"}, {"pretty"});
  const EmbeddingModel model = load_model(flags.require("model"));
  const ImportanceReport report =
      ngram_importance(flags.require("word"), model);
  for (const NgramImportance& g : report.ngrams) {
    if (flags.has("pretty")) {
      out << std::left << std::setw(12) << g.ngram << fixed(g.cosine, 4)
          << (g.degenerate ? "  (zero restricted vector)" : "") << '\n';
    } else {
      out << g.ngram << '\t' << fixed(g.cosine)
          << (g.degenerate ? "\tzero" : "") << '\n';
    }
  }
  return 0;
}

int cmd_match(std::span<const std::string> args, std::ostream& out) {
  const Flags flags(args, {"model", "a", "b", "csv", "ppm"});
  const EmbeddingModel model = load_model(flags.require("model"));
  const MatchMatrix m =
      match_matrix(flags.require("a"), flags.require("b"), model);
  const std::string& csv_path = flags.require("csv");
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("cannot write '" + csv_path + "'");
  write_csv(m, csv);
  if (const auto ppm_path = flags.get("ppm")) {
    std::ofstream ppm(*ppm_path, std::ios::binary);
    if (!ppm) throw std::runtime_error("cannot write '" + *ppm_path + "'");
    write_ppm(m, ppm);
  }
  out << "rows\t" << m.rows() << '\n' << "cols\t" << m.cols() << '\n';
  return 0;
}

int cmd_export(std::span<const std::string> args, std::ostream& out) {
  const Flags flags(args, {"model", "output"});
  const EmbeddingModel model = load_model(flags.require("model"));
  export_text(model, std::filesystem::path(flags.require("output")));
  out << "words\t" << model.nwords() << '\n' << "dim\t" << model.dim() << '\n';
  return 0;
}

}  // namespace

int run(std::span<const std::string> args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  if (args.empty()) {
    err << kUsage;
    return 1;
  }
  const std::string& command = args[0];
  const auto rest = args.subspan(1);
  try {
    if (command == "train") return cmd_train(rest, out, err);
    if (command == "similarity") return cmd_similarity(rest, out);
    if (command == "analogy") return cmd_analogy(rest, out);
    if (command == "nn") return cmd_nn(rest, out);
    if (command == "vectors") return cmd_vectors(rest, in, out);
    if (command == "importance") return cmd_importance(rest, out);
    if (command == "match") return cmd_match(rest, out);
    if (command == "export") return cmd_export(rest, out);
    if (command == "help" || command == "-h" || command == "--help") {
      out << kUsage;
      return 0;
    }
    err << "error: unknown command '" << command << "' (try 'subvec help')\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << command << ": " << e.what() << '\n';
    return 1;
  }
}

}  // namespace subvec::cli
