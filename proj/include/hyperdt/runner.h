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

#ifndef HYPERDT_RUNNER_H_
#define HYPERDT_RUNNER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperdt/cash.h"
#include "hyperdt/dataset.h"
#include "hyperdt/evolution.h"
#include "hyperdt/metrics.h"
#include "hyperdt/search_space.h"
#include "hyperdt/stats.h"

namespace hyperdt {

enum class Method { kEvolveDt, kSmboCash, kRandomCash, kMajority };

std::string MethodName(Method m);
// ArgumentError on unknown names.
Method ParseMethod(const std::string& name);

// Experiment description. Text form, one `key = value` per line:
//   datasets = data/a.arff, data/b.arff   (relative to the config file)
//   methods = evolve_dt, smbo_cash, random_cash, majority
//   budgets = 1000, 2000                  (seconds, ascending)
//   budget_scale = 0.001
//   outer_k = 10
//   seeds = 1, 2, 3, 4, 5
//   metrics = accuracy, gmean
// optional tuning keys: population, generations, resample_every,
// tournament_k, elitism_rate, crossover_rate, mutation_rate,
// valid_fraction, inner_cv_k, evolve_timeout, cash_timeout_fraction,
// epsilon, n_sample, holdout_fraction, cash_inner_k, max_evaluations,
// tree_space, cash_space (space config files), output_dir.
struct ExperimentConfig {
  std::vector<std::string> datasets;
  std::vector<Method> methods = {Method::kEvolveDt, Method::kSmboCash,
                                 Method::kRandomCash};
  std::vector<double> budgets = {1000, 2000, 3000, 4000, 5000,
                                 6000, 7000, 8000, 9000, 10000};
  double budget_scale = 1;
  int outer_k = 10;
  std::vector<uint64_t> seeds = {1, 2, 3, 4, 5};
  std::vector<Metric> metrics = {Metric::kAccuracy, Metric::kGMean};

  EvolutionParams evolution;
  CashParams cash;
  // Per-evaluation timeout of the CASH learners as a fraction of the
  // budget; 0 disables it.
  double cash_timeout_fraction = 0.01;
  // Evaluation-count cap on top of the wall-clock budget.
  std::optional<int64_t> max_evaluations;
  ComponentSpace tree_space = DefaultTreeSpace();
  ComponentSpace cash_space = DefaultCashSpace();
  std::string output_dir;

  // Seconds actually granted to one search.
  std::vector<double> ScaledBudgets() const;
  // ArgumentError on empty lists, unsorted or non-positive budgets, or
  // outer_k < 2.
  void Validate() const;
};

// `base_dir` resolves relative paths. ParseError with the line on bad
// values or unknown keys.
ExperimentConfig ParseExperimentConfig(const std::string& text,
                                       const std::string& base_dir = "");

struct RunRecord {
  std::string dataset;
  Method method = Method::kMajority;
  double budget_s = 0;  // scaled
  uint64_t seed = 0;
  int fold = 0;
  MetricSet search;  // validation or internal cross-validation
  MetricSet test;
  double elapsed_s = 0;  // search wall time
  int64_t evaluations = 0;
  std::string configuration;  // key-value text, lines joined by "; "
  // Original row indices of the held-out fold.
  std::vector<size_t> test_rows;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  std::vector<std::string> datasets;  // display names
};

// Called with every dataset handed to a search, before the search runs.
using SearchObserver = std::function<void(const RunRecord& cell, const Dataset& data)>;

// Loads every dataset first (a parse error aborts before any run), then for
// each (dataset, seed, fold) cell runs every method under every budget.
// Cells run on HYPERDT_WORKERS threads (default 1). Folds depend only on
// (dataset, seed).
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const SearchObserver& observer = {});

// Mean over seeds of the mean over folds, one row per dataset.
ResultMatrix Aggregate(std::span<const RunRecord> records,
                       const std::vector<std::string>& datasets,
                       const std::vector<Method>& methods, double budget_s,
                       Metric metric);

struct OverfitGap {
  double search = 0;
  double test = 0;
  double gap = 0;  // search - test
};

OverfitGap MetaOverfitGap(std::span<const RunRecord> records, Metric metric);

// The matrix at `decimals` places with `Average` and `Average Rank` rows.
std::string RenderMatrix(const ResultMatrix& m, int decimals = 3);
std::string RecordsCsv(std::span<const RunRecord> records);

struct ReportOptions {
  std::vector<Metric> metrics = {Metric::kAccuracy, Metric::kGMean};
  // Empty: all methods present in the records.
  std::optional<std::vector<Method>> methods;
  double alpha = 0.05;
};

// Writes records.csv, one matrix per (metric, budget) with its stats files
// (ranks, summary, CD-diagram data, or win counts and Wilcoxon for two
// methods) and meta_overfit.csv into `dir`. Returns the paths written.
// ArgumentError on no records or an empty method selection; IoError on
// write failure.
std::vector<std::string> EmitReport(std::span<const RunRecord> records,
                                    const std::string& dir,
                                    const ReportOptions& options = {});

struct FixtureCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Replays the published tables under `fixture_dir`: average and rank
// footers, win counts, Wilcoxon decisions and meta-overfitting gaps.
std::vector<FixtureCheck> VerifyFixtures(const std::string& fixture_dir);

}  // namespace hyperdt

#endif  // HYPERDT_RUNNER_H_
