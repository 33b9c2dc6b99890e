// Copyright 2026 The hyperdt Authors.
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

// Command-line front end: run, stats, wilcoxon, train, inspect-tree and
// fixtures.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "hyperdt/arff.h"
#include "hyperdt/config.h"
#include "hyperdt/dtree.h"
#include "hyperdt/errors.h"
#include "hyperdt/runner.h"
#include "hyperdt/stats.h"

namespace hyperdt {
namespace {

namespace fs = std::filesystem;

std::string Fixed(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

int Run(const std::string& config_path, std::string output, double scale) {
  ExperimentConfig c = ParseExperimentConfig(ReadTextFile(config_path),
                                             fs::path(config_path).parent_path().string());
  if (scale > 0) c.budget_scale = scale;
  if (output.empty()) output = c.output_dir.empty() ? "hyperdt_out" : c.output_dir;
  const ExperimentResult r = RunExperiment(c);
  ReportOptions options;
  options.metrics = c.metrics;
  options.methods = c.methods;
  const std::vector<std::string> files = EmitReport(r.records, output, options);
  for (Metric metric : c.metrics) {
    for (double b : c.ScaledBudgets()) {
      std::cout << "# " << MetricName(metric) << ", budget " << FormatNumber(b) << "s\n"
                << RenderMatrix(Aggregate(r.records, r.datasets, c.methods, b, metric));
    }
  }
  std::cout << "wrote " << files.size() << " files to " << output << '\n';
  return 0;
}

int Stats(const std::string& path, double alpha, bool lower_better,
          const std::string& output) {
  const ResultMatrix m = ParseResultMatrix(
      ReadTextFile(path), lower_better ? Direction::kLowerBetter : Direction::kHigherBetter);
  const RankReport r = Analyze(m, alpha);
  std::cout << RenderMatrix(m) << '\n' << r.SummaryCsv() << '\n' << r.CdDiagramCsv();
  if (!output.empty()) {
    fs::create_directories(output);
    const std::string stem = fs::path(path).stem().string();
    WriteTextFile((fs::path(output) / ("ranks_" + stem + ".csv")).string(), r.RanksCsv());
    WriteTextFile((fs::path(output) / ("summary_" + stem + ".csv")).string(), r.SummaryCsv());
    WriteTextFile((fs::path(output) / ("cd_" + stem + ".csv")).string(), r.CdDiagramCsv());
  }
  return 0;
}

int WilcoxonCommand(const std::string& path, std::string a, std::string b, double alpha) {
  const ResultMatrix m = ParseResultMatrix(ReadTextFile(path));
  if (a.empty() && b.empty() && m.k() == 2) {
    a = m.methods[0];
    b = m.methods[1];
  }
  const int ia = m.MethodIndex(a), ib = m.MethodIndex(b);
  if (ia < 0 || ib < 0) throw ArgumentError("unknown column; have " + m.methods.front() + "...");
  const std::vector<double> x = m.Column(ia), y = m.Column(ib);
  const WinCount wins = CountWins(x, y);
  const WilcoxonResult w = Wilcoxon(x, y, alpha);
  std::cout << a << " vs " << b << ": wins " << wins.wins_a << '/' << wins.wins_b
            << ", ties " << wins.ties << '\n';
  if (w.no_decision) {
    std::cout << "all differences are zero: no decision\n";
    return 0;
  }
  std::cout << "n=" << w.n << " W+=" << FormatNumber(w.w_plus) << " W-="
            << FormatNumber(w.w_minus) << " p=" << Fixed(w.p_value, 4)
            << (w.exact ? " (exact)" : " (normal approximation)") << '\n'
            << (w.reject ? "reject" : "do not reject") << " H0 at alpha "
            << FormatNumber(alpha) << '\n';
  return 0;
}

int Train(const std::string& data, const std::string& config_path, const std::string& out,
          uint64_t seed) {
  const Dataset ds = LoadDataset(data);
  const DTConfig cfg = config_path.empty() ? DTConfig{} : ParseConfig(ReadTextFile(config_path));
  const DecisionTree tree = TrainTreeAlgorithm(cfg, ds, seed);
  const std::string text = WriteTree(tree, ds.schema());
  if (out.empty()) {
    std::cout << text;
  } else {
    WriteTextFile(out, text);
  }
  return 0;
}

int InspectTree(const std::string& path) {
  const LoadedTree t = ParseTree(ReadTextFile(path));
  std::cout << "relation " << t.schema.relation << "\nattributes "
            << t.schema.num_attributes() - 1 << "\nclasses " << t.schema.num_classes()
            << "\nnodes " << t.tree.num_nodes() << "\nleaves " << t.tree.num_leaves()
            << "\ndepth " << t.tree.depth() << "\n\n"
            << WriteTree(t.tree, t.schema);
  return 0;
}

int Fixtures(const std::string& dir) {
  int failed = 0;
  for (const FixtureCheck& c : VerifyFixtures(dir)) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
    failed += !c.pass;
  }
  std::cout << failed << " check(s) failed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace hyperdt

int main(int argc, char** argv) {
  using namespace hyperdt;
  CLI::App app{"hyperdt: evolved decision-tree algorithms vs. CASH search"};
  app.require_subcommand(1);

  std::string config, output;
  double scale = 0;
  CLI::App* run = app.add_subcommand("run", "run an experiment and write its report");
  run->add_option("--config", config, "experiment config file")->required();
  run->add_option("--output", output, "report directory");
  run->add_option("--budget-scale", scale, "override budget_scale");

  std::string matrix;
  double alpha = 0.05;
  bool lower_better = false;
  CLI::App* stats = app.add_subcommand("stats", "Friedman / Nemenyi analysis of a matrix");
  stats->add_option("--matrix", matrix, "CSV: dataset column then one column per method")
      ->required();
  stats->add_option("--alpha", alpha, "0.05 or 0.10");
  stats->add_flag("--lower-better", lower_better, "smaller values rank first");
  stats->add_option("--output", output, "also write ranks/summary/CD files here");

  std::string col_a, col_b;
  CLI::App* wilcoxon = app.add_subcommand("wilcoxon", "signed-rank test of two columns");
  wilcoxon->add_option("--matrix", matrix, "CSV result matrix")->required();
  wilcoxon->add_option("--a", col_a, "first column");
  wilcoxon->add_option("--b", col_b, "second column");
  wilcoxon->add_option("--alpha", alpha, "significance level");

  std::string data, model;
  uint64_t seed = 1;
  CLI::App* train = app.add_subcommand("train", "train one tree algorithm and save the model");
  train->add_option("--data", data, "ARFF or CSV dataset")->required();
  train->add_option("--config", config, "tree configuration (key = value)");
  train->add_option("--out", model, "model file (stdout when omitted)");
  train->add_option("--seed", seed, "pruning-set seed");

  CLI::App* inspect = app.add_subcommand("inspect-tree", "print a saved tree");
  inspect->add_option("model", model, "model file")->required();

  bool verify = false;
  std::string fixture_dir = HYPERDT_DEFAULT_FIXTURE_DIR;
  CLI::App* fixtures = app.add_subcommand("fixtures", "replay the published tables");
  fixtures->add_flag("--verify", verify, "check every footer")->required();
  fixtures->add_option("--dir", fixture_dir, "fixture directory");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return Run(config, output, scale);
    if (*stats) return Stats(matrix, alpha, lower_better, output);
    if (*wilcoxon) return WilcoxonCommand(matrix, col_a, col_b, alpha);
    if (*train) return Train(data, config, model, seed);
    if (*inspect) return InspectTree(model);
    if (*fixtures) return Fixtures(fixture_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
