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

#ifndef HYPERDT_STATS_H_
#define HYPERDT_STATS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperdt {

enum class Direction { kHigherBetter, kLowerBetter };

// Methods in columns, datasets in rows.
struct ResultMatrix {
  std::vector<std::string> methods;
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> values;  // [dataset][method]
  Direction direction = Direction::kHigherBetter;

  int k() const { return static_cast<int>(methods.size()); }
  int n() const { return static_cast<int>(datasets.size()); }
  std::vector<double> Column(int j) const;
  int MethodIndex(const std::string& name) const;  // -1 if absent
  // ArgumentError unless k >= 2, n >= 2, the shape is consistent and every
  // value is finite.
  void Validate() const;
  // Keeps the named columns in the given order. ArgumentError on unknown
  // names or an empty selection.
  ResultMatrix SelectMethods(const std::vector<std::string>& names) const;
};

// Header row `<anything>,method...`, then `dataset,value...` rows. Throws
// ParseError (with line) on malformed text, then validates.
ResultMatrix ParseResultMatrix(const std::string& text,
                               Direction direction = Direction::kHigherBetter);
std::string WriteResultMatrix(const ResultMatrix& m);

struct Ranks {
  std::vector<std::vector<double>> per_row;
  std::vector<double> average;
};

// Rank 1 is the best value of a row; tied values share the mean of the
// ranks they span.
std::vector<double> RankRow(std::span<const double> row, Direction direction);
Ranks RankRows(const ResultMatrix& m);

struct FriedmanResult {
  double chi2_f = 0;
  double f_f = 0;  // infinite when chi2_f == n (k - 1)
  bool f_f_infinite = false;
  int df1 = 0;
  int df2 = 0;
  double p_value = 0;  // upper tail of F(df1, df2) at f_f
};

FriedmanResult Friedman(std::span<const double> avg_ranks, int n);
// Upper alpha quantile of F(df1, df2).
double FCritical(int df1, int df2, double alpha);

// Studentized range based q_alpha for k = 2..10, alpha 0.05 or 0.10;
// ArgumentError otherwise.
double NemenyiQ(int k, double alpha);
// q_alpha(k) sqrt(k (k + 1) / (6 n)).
double NemenyiCD(int k, int n, double alpha = 0.05);

// significant[i][j]: |R_i - R_j| > cd.
std::vector<std::vector<bool>> PairwiseSignificance(
    std::span<const double> avg_ranks, double cd);
// Maximal groups of methods whose ranks lie within cd of each other, as
// method indices sorted by rank. Groups of one are omitted.
std::vector<std::vector<int>> NonSignificantCliques(
    std::span<const double> avg_ranks, double cd);

struct RankReport {
  ResultMatrix matrix;
  Ranks ranks;
  FriedmanResult friedman;
  double alpha = 0.05;
  double f_critical = 0;
  double cd = 0;
  std::vector<std::vector<bool>> significant;
  std::vector<std::vector<int>> cliques;

  // dataset,<methods> rows of ranks and an average_rank row.
  std::string RanksCsv() const;
  // statistic,value lines, then the pairwise gaps.
  std::string SummaryCsv() const;
  // method,avg_rank,groups (semicolon-separated clique ids).
  std::string CdDiagramCsv() const;
};

RankReport Analyze(const ResultMatrix& m, double alpha = 0.05);

struct WilcoxonResult {
  int n = 0;  // non-zero differences
  double w_plus = 0;
  double w_minus = 0;
  double w = 0;  // min(w_plus, w_minus)
  double p_value = 1;
  bool exact = false;
  bool reject = false;
  bool no_decision = false;  // every difference was zero
};

// Signed-rank test on a - b. Zero differences are dropped and tied
// |differences| share average ranks. Exact two-sided p for n <= 20,
// otherwise the normal approximation with continuity and tie corrections.
// ArgumentError when the lengths differ or 1 <= n < 5.
WilcoxonResult Wilcoxon(std::span<const double> a, std::span<const double> b,
                        double alpha = 0.05);
// P(T+ <= t) under the null for the given (possibly tied) ranks, by
// dynamic programming over sign patterns. Ranks must be multiples of 0.5.
double SignedRankCdf(std::span<const double> ranks, double t);

struct WinCount {
  int wins_a = 0;
  int wins_b = 0;
  int ties = 0;
  bool operator==(const WinCount&) const = default;
};

// Strict per-row comparison, optionally after rounding to `decimals`.
WinCount CountWins(std::span<const double> a, std::span<const double> b,
                   Direction direction = Direction::kHigherBetter,
                   std::optional<int> decimals = std::nullopt);

}  // namespace hyperdt

#endif  // HYPERDT_STATS_H_
