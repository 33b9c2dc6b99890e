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

#include "hyperdt/runner.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hyperdt/arff.h"
#include "hyperdt/config.h"
#include "hyperdt/dtree.h"
#include "hyperdt/errors.h"
#include "hyperdt/learners.h"

namespace hyperdt {

namespace fs = std::filesystem;

std::string MethodName(Method m) {
  switch (m) {
    case Method::kEvolveDt: return "evolve_dt";
    case Method::kSmboCash: return "smbo_cash";
    case Method::kRandomCash: return "random_cash";
    case Method::kMajority: return "majority";
  }
  return "?";
}

Method ParseMethod(const std::string& name) {
  for (Method m : {Method::kEvolveDt, Method::kSmboCash, Method::kRandomCash,
                   Method::kMajority}) {
    if (MethodName(m) == name) return m;
  }
  throw ArgumentError("unknown method: " + name);
}

std::vector<double> ExperimentConfig::ScaledBudgets() const {
  std::vector<double> out;
  for (double b : budgets) out.push_back(b * budget_scale);
  return out;
}

void ExperimentConfig::Validate() const {
  if (datasets.empty()) throw ArgumentError("no datasets");
  if (methods.empty()) throw ArgumentError("no methods");
  if (seeds.empty()) throw ArgumentError("no seeds");
  if (metrics.empty()) throw ArgumentError("no metrics");
  if (budgets.empty()) throw ArgumentError("no budgets");
  if (!(budget_scale > 0)) throw ArgumentError("budget_scale must be positive");
  for (size_t i = 0; i < budgets.size(); ++i) {
    if (!(budgets[i] > 0)) throw ArgumentError("budgets must be positive");
    if (i > 0 && budgets[i] <= budgets[i - 1]) {
      throw ArgumentError("budgets must be strictly ascending");
    }
  }
  if (outer_k < 2) throw ArgumentError("outer_k must be at least 2");
  if (!(cash_timeout_fraction >= 0)) {
    throw ArgumentError("cash_timeout_fraction must be non-negative");
  }
  if (max_evaluations && *max_evaluations < 1) {
    throw ArgumentError("max_evaluations must be positive");
  }
  evolution.Validate();
}

namespace {

std::string Resolve(const std::string& base_dir, const std::string& path) {
  if (base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

template <typename F>
auto AtLine(const KeyValues& kv, std::string_view key, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string(key) + ": " + e.what(), kv.Line(key));
  }
}

}  // namespace

ExperimentConfig ParseExperimentConfig(const std::string& text,
                                       const std::string& base_dir) {
  const KeyValues kv = KeyValues::Parse(text);
  ExperimentConfig c;
  for (const std::string& d : kv.List("datasets")) c.datasets.push_back(Resolve(base_dir, d));
  if (kv.Has("methods")) {
    c.methods.clear();
    for (const std::string& m : kv.List("methods")) {
      c.methods.push_back(AtLine(kv, "methods", [&] { return ParseMethod(m); }));
    }
  }
  if (kv.Has("budgets")) c.budgets = kv.Numbers("budgets");
  c.budget_scale = kv.NumberOr("budget_scale", c.budget_scale);
  c.outer_k = kv.IntegerOr("outer_k", c.outer_k);
  if (kv.Has("seeds")) {
    c.seeds.clear();
    for (double s : kv.Numbers("seeds")) {
      if (s < 0 || s != static_cast<double>(static_cast<uint64_t>(s))) {
        throw ParseError("seeds must be non-negative integers", kv.Line("seeds"));
      }
      c.seeds.push_back(static_cast<uint64_t>(s));
    }
  }
  if (kv.Has("metrics")) {
    c.metrics.clear();
    for (const std::string& m : kv.List("metrics")) {
      c.metrics.push_back(AtLine(kv, "metrics", [&] { return ParseMetric(m); }));
    }
  }

  EvolutionParams& e = c.evolution;
  e.population = kv.IntegerOr("population", e.population);
  e.generations = kv.IntegerOr("generations", e.generations);
  e.resample_every = kv.IntegerOr("resample_every", e.resample_every);
  e.tournament_k = kv.IntegerOr("tournament_k", e.tournament_k);
  e.elitism_rate = kv.NumberOr("elitism_rate", e.elitism_rate);
  e.crossover_rate = kv.NumberOr("crossover_rate", e.crossover_rate);
  e.mutation_rate = kv.NumberOr("mutation_rate", e.mutation_rate);
  e.valid_fraction = kv.NumberOr("valid_fraction", e.valid_fraction);
  e.inner_cv_k = kv.IntegerOr("inner_cv_k", e.inner_cv_k);
  if (const auto t = kv.Get("evolve_timeout"); t && *t != "none") {
    e.evaluation_timeout_s = kv.Number("evolve_timeout");
  }
  c.cash_timeout_fraction = kv.NumberOr("cash_timeout_fraction", c.cash_timeout_fraction);
  c.cash.epsilon = kv.NumberOr("epsilon", c.cash.epsilon);
  c.cash.n_sample = kv.IntegerOr("n_sample", c.cash.n_sample);
  c.cash.holdout_fraction = kv.NumberOr("holdout_fraction", c.cash.holdout_fraction);
  c.cash.inner_k = kv.IntegerOr("cash_inner_k", c.cash.inner_k);
  if (kv.Has("max_evaluations")) c.max_evaluations = kv.Integer("max_evaluations");
  if (const auto p = kv.Get("tree_space")) {
    c.tree_space = AtLine(kv, "tree_space", [&] {
      ComponentSpace s = ParseSpaceConfig(ReadTextFile(Resolve(base_dir, *p)));
      if (s.IndexOf("criterion") < 0) throw ArgumentError("not a tree space");
      return s;
    });
  }
  if (const auto p = kv.Get("cash_space")) {
    c.cash_space = AtLine(kv, "cash_space", [&] {
      ComponentSpace s = ParseSpaceConfig(ReadTextFile(Resolve(base_dir, *p)));
      if (s.IndexOf("family") < 0) throw ArgumentError("not a CASH space");
      return s;
    });
  }
  if (const auto o = kv.Get("output_dir")) c.output_dir = Resolve(base_dir, *o);
  kv.RejectUnused();
  AtLine(kv, "datasets", [&] {
    c.Validate();
    return 0;
  });
  return c;
}

namespace {

int WorkerCount() {
  const char* env = std::getenv("HYPERDT_WORKERS");
  if (!env || !*env) return 1;
  const std::optional<double> v = ParseNumber(env);
  if (!v || *v < 1 || *v != static_cast<int>(*v)) {
    throw ArgumentError(std::string("HYPERDT_WORKERS must be a positive integer, got ") + env);
  }
  return static_cast<int>(*v);
}

std::string OneLine(const std::string& text) {
  std::string out;
  for (const std::string& line : SplitList(text, '\n')) {
    if (line.empty()) continue;
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out;
}

MetricSet Score(const Dataset& ds, const std::vector<int>& pred) {
  return ComputeMetrics(Confusion(ds.labels(), pred, ds.num_classes()));
}

void RunMethod(const ExperimentConfig& c, const Dataset& train, const Dataset& test,
               uint64_t seed, const SearchObserver& observer, RunRecord& r) {
  BudgetClock budget = BudgetClock::Seconds(r.budget_s);
  if (c.max_evaluations) budget.WithEvaluationLimit(*c.max_evaluations);
  if (observer) observer(r, train);
  const Clock::time_point start = Clock::now();
  switch (r.method) {
    case Method::kEvolveDt: {
      const EvolutionResult e = Evolve(c.tree_space, train, c.evolution, budget, seed);
      r.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
      r.search = e.best_metrics;
      r.evaluations = e.evaluations;
      r.configuration = OneLine(WriteConfig(e.best));
      const DecisionTree tree = TrainTreeAlgorithm(e.best, train, seed);
      r.test = Score(test, tree.PredictAll(test, e.best.missing_test));
      return;
    }
    case Method::kSmboCash:
    case Method::kRandomCash: {
      CashParams p = c.cash;
      if (c.cash_timeout_fraction > 0) {
        p.evaluation_timeout_s = r.budget_s * c.cash_timeout_fraction;
      }
      const SearchResult s = r.method == Method::kSmboCash
                                 ? SmboSearch(c.cash_space, train, budget, p, seed)
                                 : RandomSearch(c.cash_space, train, budget, p, seed);
      r.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
      r.search = s.history.entries()[s.best_index].metrics;
      r.evaluations = static_cast<int64_t>(s.history.size());
      r.configuration = OneLine(WriteCashConfig(s.best));
      r.test = Score(test, TrainClassifier(s.best, train, seed)->PredictAll(test));
      return;
    }
    case Method::kMajority: {
      const auto model = TrainClassifier(MajorityConfig{}, train, seed);
      r.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
      r.search = Score(train, model->PredictAll(train));
      r.configuration = OneLine(WriteCashConfig(MajorityConfig{}));
      r.test = Score(test, model->PredictAll(test));
      return;
    }
  }
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const SearchObserver& observer) {
  config.Validate();
  const int workers = WorkerCount();
  std::vector<Dataset> data;
  ExperimentResult out;
  for (const std::string& path : config.datasets) {
    data.push_back(LoadDataset(path));
    out.datasets.push_back(fs::path(path).stem().string());
  }

  struct Cell {
    size_t dataset;
    uint64_t seed;
    int fold;
  };
  std::vector<Cell> cells;
  std::vector<FoldPlan> plans;  // per (dataset, seed)
  for (size_t d = 0; d < data.size(); ++d) {
    for (uint64_t seed : config.seeds) {
      plans.push_back(StratifiedKFold(data[d], config.outer_k, seed));
      for (int f = 0; f < config.outer_k; ++f) cells.push_back({d, seed, f});
    }
  }
  const std::vector<double> budgets = config.ScaledBudgets();
  const size_t per_cell = config.methods.size() * budgets.size();
  out.records.resize(cells.size() * per_cell);

  auto run_cell = [&](size_t i) {
    const Cell& cell = cells[i];
    const FoldPlan& plan = plans[i / config.outer_k];
    const Dataset& ds = data[cell.dataset];
    const std::vector<size_t> train_rows = plan.TrainRows(cell.fold);
    const std::vector<size_t> test_rows = plan.TestRows(cell.fold);
    const Dataset train = ds.Subset(train_rows);
    const uint64_t seed = DeriveSeed(cell.seed, 1000 + cell.fold);
    size_t slot = i * per_cell;
    for (Method m : config.methods) {
      for (double b : budgets) {
        RunRecord& r = out.records[slot++];
        r.dataset = out.datasets[cell.dataset];
        r.method = m;
        r.budget_s = b;
        r.seed = cell.seed;
        r.fold = cell.fold;
        r.test_rows = test_rows;
        // The held-out fold is materialised only after the search returns.
        RunMethod(config, train, ds.Subset(test_rows), seed, observer, r);
      }
    }
  };

  if (workers <= 1) {
    for (size_t i = 0; i < cells.size(); ++i) run_cell(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  for (int w = 0; w < std::min<int>(workers, cells.size()); ++w) {
    threads.emplace_back([&] {
      for (size_t i; (i = next.fetch_add(1)) < cells.size();) {
        try {
          run_cell(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

ResultMatrix Aggregate(std::span<const RunRecord> records,
                       const std::vector<std::string>& datasets,
                       const std::vector<Method>& methods, double budget_s,
                       Metric metric) {
  ResultMatrix m;
  m.datasets = datasets;
  for (Method method : methods) m.methods.push_back(MethodName(method));
  for (const std::string& d : datasets) {
    std::vector<double> row;
    for (Method method : methods) {
      std::map<uint64_t, std::pair<double, int>> by_seed;
      for (const RunRecord& r : records) {
        if (r.dataset != d || r.method != method || r.budget_s != budget_s) continue;
        auto& [sum, count] = by_seed[r.seed];
        sum += Select(r.test, metric);
        ++count;
      }
      if (by_seed.empty()) {
        throw ArgumentError("no records for " + d + " / " + MethodName(method));
      }
      double mean = 0;
      for (const auto& [seed, acc] : by_seed) mean += acc.first / acc.second;
      row.push_back(mean / by_seed.size());
    }
    m.values.push_back(row);
  }
  return m;
}

OverfitGap MetaOverfitGap(std::span<const RunRecord> records, Metric metric) {
  if (records.empty()) throw ArgumentError("no records");
  OverfitGap out;
  for (const RunRecord& r : records) {
    out.search += Select(r.search, metric) / records.size();
    out.test += Select(r.test, metric) / records.size();
  }
  out.gap = out.search - out.test;
  return out;
}

namespace {

std::string Fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string RenderMatrix(const ResultMatrix& m, int decimals) {
  std::ostringstream out;
  out << "dataset";
  for (const std::string& name : m.methods) out << ',' << name;
  out << '\n';
  std::vector<double> mean(m.k(), 0.0), rank(m.k(), 0.0);
  for (int i = 0; i < m.n(); ++i) {
    out << m.datasets[i];
    for (double v : m.values[i]) out << ',' << Fixed(v, decimals);
    out << '\n';
    const std::vector<double> r = RankRow(m.values[i], m.direction);
    for (int j = 0; j < m.k(); ++j) {
      mean[j] += m.values[i][j];
      rank[j] += r[j];
    }
  }
  out << "Average";
  for (double v : mean) out << ',' << Fixed(v / m.n(), decimals);
  out << "\nAverage Rank";
  for (double v : rank) out << ',' << Fixed(v / m.n(), decimals);
  out << '\n';
  return out.str();
}

std::string RecordsCsv(std::span<const RunRecord> records) {
  static const char* kMetricNames[] = {"accuracy", "gmean", "fmeasure",
                                       "sens_weighted", "spec_weighted"};
  std::ostringstream out;
  out << "dataset,method,budget_s,seed,fold";
  for (const char* prefix : {"search_", "test_"}) {
    for (const char* name : kMetricNames) out << ',' << prefix << name;
  }
  out << ",elapsed_s,evaluations,configuration\n";
  for (const RunRecord& r : records) {
    out << r.dataset << ',' << MethodName(r.method) << ',' << FormatNumber(r.budget_s)
        << ',' << r.seed << ',' << r.fold;
    for (const MetricSet* m : {&r.search, &r.test}) {
      for (double v : {m->accuracy, m->gmean, m->fmeasure, m->sens_weighted,
                       m->spec_weighted}) {
        out << ',' << FormatNumber(v);
      }
    }
    out << ',' << FormatNumber(r.elapsed_s) << ',' << r.evaluations << ",\""
        << r.configuration << "\"\n";
  }
  return out.str();
}

std::vector<std::string> EmitReport(std::span<const RunRecord> records,
                                    const std::string& dir,
                                    const ReportOptions& options) {
  if (records.empty()) throw ArgumentError("no records to report");
  std::vector<std::string> datasets;
  std::vector<Method> methods;
  std::vector<double> budgets;
  for (const RunRecord& r : records) {
    if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end()) {
      datasets.push_back(r.dataset);
    }
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) {
      methods.push_back(r.method);
    }
    if (std::find(budgets.begin(), budgets.end(), r.budget_s) == budgets.end()) {
      budgets.push_back(r.budget_s);
    }
  }
  std::sort(budgets.begin(), budgets.end());
  if (options.methods) {
    std::vector<Method> kept;
    for (Method m : *options.methods) {
      if (std::find(methods.begin(), methods.end(), m) != methods.end()) kept.push_back(m);
    }
    methods = kept;
  }
  if (methods.empty()) throw ArgumentError("method selection is empty");
  if (options.metrics.empty()) throw ArgumentError("no metrics to report");

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::string& text) {
    const std::string path = (fs::path(dir) / name).string();
    WriteTextFile(path, text);
    written.push_back(path);
  };

  write("records.csv", RecordsCsv(records));
  std::ostringstream gaps;
  gaps << "method,budget_s,metric,search,test,gap\n";
  for (Metric metric : options.metrics) {
    const std::string metric_name = MetricName(metric);
    for (double b : budgets) {
      const ResultMatrix m = Aggregate(records, datasets, methods, b, metric);
      const std::string tag = metric_name + "_" + FormatNumber(b) + "s";
      write("matrix_" + tag + ".csv", RenderMatrix(m));
      if (m.k() >= 2 && m.n() >= 2) {
        const RankReport report = Analyze(m, options.alpha);
        write("ranks_" + tag + ".csv", report.RanksCsv());
        write("summary_" + tag + ".csv", report.SummaryCsv());
        write("cd_" + tag + ".csv", report.CdDiagramCsv());
      }
      if (m.k() == 2) {
        const std::vector<double> a = m.Column(0), c = m.Column(1);
        const WinCount w = CountWins(a, c);
        std::ostringstream text;
        text << "method_a,method_b,wins_a,wins_b,ties,wilcoxon_w,p_value,reject\n"
             << m.methods[0] << ',' << m.methods[1] << ',' << w.wins_a << ','
             << w.wins_b << ',' << w.ties;
        try {
          const WilcoxonResult wx = Wilcoxon(a, c, options.alpha);
          if (wx.no_decision) {
            text << ",,,no_decision\n";
          } else {
            text << ',' << FormatNumber(wx.w) << ',' << FormatNumber(wx.p_value) << ','
                 << (wx.reject ? "yes" : "no") << '\n';
          }
        } catch (const ArgumentError&) {
          text << ",,,too_few_pairs\n";
        }
        write("wins_" + tag + ".csv", text.str());
      }
      for (Method method : methods) {
        std::vector<RunRecord> subset;
        for (const RunRecord& r : records) {
          if (r.method == method && r.budget_s == b) subset.push_back(r);
        }
        const OverfitGap g = MetaOverfitGap(subset, metric);
        gaps << MethodName(method) << ',' << FormatNumber(b) << ',' << metric_name << ','
             << Fixed(g.search, 4) << ',' << Fixed(g.test, 4) << ',' << Fixed(g.gap, 4)
             << '\n';
      }
    }
  }
  write("meta_overfit.csv", gaps.str());
  return written;
}

}  // namespace hyperdt
