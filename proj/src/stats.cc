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

#include "hyperdt/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>

#include "hyperdt/config.h"
#include "hyperdt/errors.h"

namespace hyperdt {

namespace {

// |differences| closer than this are treated as tied.
constexpr double kTieTolerance = 1e-9;

// Mean ranks (1-based) of `values` in ascending order; values within
// `tol` of their sorted neighbour form one tie group.
std::vector<double> AverageRanks(const std::vector<double>& values, double tol) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i + 1;
    while (j < order.size() && values[order[j]] - values[order[j - 1]] <= tol) ++j;
    const double r = (i + 1 + j) / 2.0;
    for (size_t t = i; t < j; ++t) ranks[order[t]] = r;
    i = j;
  }
  return ranks;
}

}  // namespace

std::vector<double> ResultMatrix::Column(int j) const {
  std::vector<double> out;
  for (const auto& row : values) out.push_back(row.at(j));
  return out;
}

int ResultMatrix::MethodIndex(const std::string& name) const {
  const auto it = std::find(methods.begin(), methods.end(), name);
  return it == methods.end() ? -1 : static_cast<int>(it - methods.begin());
}

void ResultMatrix::Validate() const {
  if (k() < 2) throw ArgumentError("result matrix needs at least 2 methods");
  if (n() < 2) throw ArgumentError("result matrix needs at least 2 datasets");
  if (values.size() != datasets.size()) throw ArgumentError("row count mismatch");
  for (size_t r = 0; r < values.size(); ++r) {
    if (static_cast<int>(values[r].size()) != k()) {
      throw ArgumentError("row " + datasets[r] + " has the wrong number of values");
    }
    for (double v : values[r]) {
      if (!std::isfinite(v)) throw ArgumentError("non-finite value in row " + datasets[r]);
    }
  }
}

ResultMatrix ResultMatrix::SelectMethods(const std::vector<std::string>& names) const {
  if (names.empty()) throw ArgumentError("no methods selected");
  ResultMatrix out;
  out.datasets = datasets;
  out.direction = direction;
  out.values.resize(values.size());
  for (const std::string& name : names) {
    const int j = MethodIndex(name);
    if (j < 0) throw ArgumentError("unknown method: " + name);
    out.methods.push_back(name);
    for (size_t r = 0; r < values.size(); ++r) out.values[r].push_back(values[r][j]);
  }
  return out;
}

ResultMatrix ParseResultMatrix(const std::string& text, Direction direction) {
  ResultMatrix m;
  m.direction = direction;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(Trim(cell));
    if (line.back() == ',') cells.push_back("");
    if (header) {
      if (cells.size() < 2) throw ParseError("header needs method columns", line_no);
      m.methods.assign(cells.begin() + 1, cells.end());
      header = false;
      continue;
    }
    if (cells.size() != m.methods.size() + 1) {
      throw ParseError("expected " + std::to_string(m.methods.size() + 1) + " cells", line_no);
    }
    std::vector<double> values;
    for (size_t c = 1; c < cells.size(); ++c) {
      const std::optional<double> v = ParseNumber(cells[c]);
      if (!v) throw ParseError("bad number '" + cells[c] + "'", line_no);
      if (!std::isfinite(*v)) throw ParseError("non-finite value", line_no);
      values.push_back(*v);
    }
    m.datasets.push_back(cells[0]);
    m.values.push_back(std::move(values));
  }
  if (header) throw ParseError("empty matrix", line_no);
  m.Validate();
  return m;
}

std::string WriteResultMatrix(const ResultMatrix& m) {
  std::ostringstream out;
  out << "dataset";
  for (const std::string& name : m.methods) out << ',' << name;
  out << '\n';
  for (size_t r = 0; r < m.values.size(); ++r) {
    out << m.datasets[r];
    for (double v : m.values[r]) out << ',' << FormatNumber(v);
    out << '\n';
  }
  return out.str();
}

std::vector<double> RankRow(std::span<const double> row, Direction direction) {
  std::vector<double> keyed(row.begin(), row.end());
  if (direction == Direction::kHigherBetter) {
    for (double& v : keyed) v = -v;
  }
  return AverageRanks(keyed, 0.0);
}

Ranks RankRows(const ResultMatrix& m) {
  m.Validate();
  Ranks out;
  out.average.assign(m.k(), 0.0);
  for (const auto& row : m.values) {
    out.per_row.push_back(RankRow(row, m.direction));
    for (int j = 0; j < m.k(); ++j) out.average[j] += out.per_row.back()[j];
  }
  for (double& a : out.average) a /= m.n();
  return out;
}

FriedmanResult Friedman(std::span<const double> avg_ranks, int n) {
  const int k = static_cast<int>(avg_ranks.size());
  if (k < 2 || n < 2) throw ArgumentError("Friedman test needs k >= 2 and N >= 2");
  double sum_sq = 0;
  for (double r : avg_ranks) sum_sq += r * r;
  FriedmanResult out;
  out.chi2_f = 12.0 * n / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0) * (k + 1.0) / 4.0);
  out.df1 = k - 1;
  out.df2 = (k - 1) * (n - 1);
  const double denom = n * (k - 1.0) - out.chi2_f;
  if (denom <= 0) {
    out.f_f = std::numeric_limits<double>::infinity();
    out.f_f_infinite = true;
    out.p_value = 0;
  } else {
    out.f_f = (n - 1.0) * out.chi2_f / denom;
    boost::math::fisher_f dist(out.df1, out.df2);
    out.p_value = boost::math::cdf(boost::math::complement(dist, std::max(0.0, out.f_f)));
  }
  return out;
}

double FCritical(int df1, int df2, double alpha) {
  if (df1 < 1 || df2 < 1 || !(alpha > 0 && alpha < 1)) {
    throw ArgumentError("bad F quantile arguments");
  }
  return boost::math::quantile(boost::math::complement(boost::math::fisher_f(df1, df2), alpha));
}

double NemenyiQ(int k, double alpha) {
  static constexpr double kQ05[] = {1.960, 2.343, 2.569, 2.728, 2.850,
                                    2.949, 3.031, 3.102, 3.164};
  static constexpr double kQ10[] = {1.645, 2.052, 2.291, 2.459, 2.589,
                                    2.693, 2.780, 2.855, 2.920};
  if (k < 2 || k > 10) throw ArgumentError("Nemenyi q is tabulated for k = 2..10");
  if (alpha == 0.05) return kQ05[k - 2];
  if (alpha == 0.10) return kQ10[k - 2];
  throw ArgumentError("Nemenyi q is tabulated for alpha 0.05 and 0.10");
}

double NemenyiCD(int k, int n, double alpha) {
  if (n < 1) throw ArgumentError("N must be positive");
  return NemenyiQ(k, alpha) * std::sqrt(k * (k + 1.0) / (6.0 * n));
}

std::vector<std::vector<bool>> PairwiseSignificance(std::span<const double> avg_ranks,
                                                    double cd) {
  const size_t k = avg_ranks.size();
  std::vector<std::vector<bool>> out(k, std::vector<bool>(k, false));
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) out[i][j] = std::abs(avg_ranks[i] - avg_ranks[j]) > cd;
  }
  return out;
}

std::vector<std::vector<int>> NonSignificantCliques(std::span<const double> avg_ranks,
                                                    double cd) {
  std::vector<int> order(avg_ranks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return avg_ranks[a] < avg_ranks[b]; });
  std::vector<std::vector<int>> out;
  size_t last_end = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    size_t j = i;
    while (j + 1 < order.size() && avg_ranks[order[j + 1]] - avg_ranks[order[i]] <= cd) ++j;
    if (j > i && j + 1 > last_end) {
      out.emplace_back(order.begin() + i, order.begin() + j + 1);
      last_end = j + 1;
    }
  }
  return out;
}

std::string RankReport::RanksCsv() const {
  std::ostringstream out;
  out << "dataset";
  for (const std::string& name : matrix.methods) out << ',' << name;
  out << '\n';
  for (size_t r = 0; r < ranks.per_row.size(); ++r) {
    out << matrix.datasets[r];
    for (double v : ranks.per_row[r]) out << ',' << FormatNumber(v);
    out << '\n';
  }
  out << "average_rank";
  for (double v : ranks.average) out << ',' << FormatNumber(v);
  out << '\n';
  return out.str();
}

std::string RankReport::SummaryCsv() const {
  std::ostringstream out;
  out << "statistic,value\n"
      << "k," << matrix.k() << "\nn," << matrix.n() << '\n'
      << "chi2_f," << FormatNumber(friedman.chi2_f) << '\n'
      << "f_f," << (friedman.f_f_infinite ? "inf" : FormatNumber(friedman.f_f)) << '\n'
      << "df1," << friedman.df1 << "\ndf2," << friedman.df2 << '\n'
      << "p_value," << FormatNumber(friedman.p_value) << '\n'
      << "alpha," << FormatNumber(alpha) << '\n'
      << "f_critical," << FormatNumber(f_critical) << '\n'
      << "nemenyi_cd," << FormatNumber(cd) << '\n';
  out << "\nmethod_a,method_b,rank_gap,significant\n";
  for (int i = 0; i < matrix.k(); ++i) {
    for (int j = i + 1; j < matrix.k(); ++j) {
      out << matrix.methods[i] << ',' << matrix.methods[j] << ','
          << FormatNumber(std::abs(ranks.average[i] - ranks.average[j])) << ','
          << (significant[i][j] ? "yes" : "no") << '\n';
    }
  }
  return out.str();
}

std::string RankReport::CdDiagramCsv() const {
  std::ostringstream out;
  out << "method,avg_rank,groups\n";
  for (int j = 0; j < matrix.k(); ++j) {
    out << matrix.methods[j] << ',' << FormatNumber(ranks.average[j]) << ',';
    bool first = true;
    for (size_t g = 0; g < cliques.size(); ++g) {
      if (std::find(cliques[g].begin(), cliques[g].end(), j) == cliques[g].end()) continue;
      out << (first ? "" : ";") << g + 1;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

RankReport Analyze(const ResultMatrix& m, double alpha) {
  RankReport out;
  out.matrix = m;
  out.alpha = alpha;
  out.ranks = RankRows(m);
  out.friedman = Friedman(out.ranks.average, m.n());
  out.f_critical = FCritical(out.friedman.df1, out.friedman.df2, alpha);
  out.cd = NemenyiCD(m.k(), m.n(), alpha);
  out.significant = PairwiseSignificance(out.ranks.average, out.cd);
  out.cliques = NonSignificantCliques(out.ranks.average, out.cd);
  return out;
}

double SignedRankCdf(std::span<const double> ranks, double t) {
  std::vector<int> doubled;
  int total = 0;
  for (double r : ranks) {
    const double d = 2 * r;
    if (!(r > 0) || std::abs(d - std::round(d)) > 1e-9) {
      throw ArgumentError("signed ranks must be positive multiples of 0.5");
    }
    doubled.push_back(static_cast<int>(std::lround(d)));
    total += doubled.back();
  }
  // ways[s]: sign patterns whose positive ranks sum to s / 2.
  std::vector<double> ways(total + 1, 0.0);
  ways[0] = 1;
  int reach = 0;
  for (int r : doubled) {
    for (int s = reach; s >= 0; --s) {
      if (ways[s] != 0) ways[s + r] += ways[s];
    }
    reach += r;
  }
  const double limit = 2 * t + 1e-9;
  double below = 0;
  for (int s = 0; s <= total && s <= limit; ++s) below += ways[s];
  return below / std::ldexp(1.0, static_cast<int>(doubled.size()));
}

WilcoxonResult Wilcoxon(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() != b.size()) throw ArgumentError("Wilcoxon needs paired samples");
  std::vector<double> diffs;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0) diffs.push_back(d);
  }
  WilcoxonResult out;
  out.n = static_cast<int>(diffs.size());
  if (out.n == 0) {
    out.no_decision = true;
    return out;
  }
  if (out.n < 5) throw ArgumentError("Wilcoxon needs at least 5 non-zero differences");
  std::vector<double> magnitude;
  for (double d : diffs) magnitude.push_back(std::abs(d));
  const std::vector<double> ranks = AverageRanks(magnitude, kTieTolerance);
  for (int i = 0; i < out.n; ++i) (diffs[i] > 0 ? out.w_plus : out.w_minus) += ranks[i];
  out.w = std::min(out.w_plus, out.w_minus);
  if (out.n <= 20) {
    out.exact = true;
    out.p_value = std::min(1.0, 2 * SignedRankCdf(ranks, out.w));
  } else {
    const double n = out.n;
    double ties = 0;
    std::vector<double> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i < sorted.size();) {
      size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const double t = j - i;
      ties += t * t * t - t;
      i = j;
    }
    const double mean = n * (n + 1) / 4;
    const double sd = std::sqrt(n * (n + 1) * (2 * n + 1) / 24 - ties / 48);
    const double z = std::max(0.0, std::abs(out.w_plus - mean) - 0.5) / sd;
    out.p_value = std::min(
        1.0, 2 * boost::math::cdf(boost::math::complement(boost::math::normal(), z)));
  }
  out.reject = out.p_value <= alpha;
  return out;
}

WinCount CountWins(std::span<const double> a, std::span<const double> b,
                   Direction direction, std::optional<int> decimals) {
  if (a.size() != b.size()) throw ArgumentError("CountWins needs paired samples");
  const double scale = decimals ? std::pow(10.0, *decimals) : 1.0;
  auto round = [&](double v) { return decimals ? std::round(v * scale) : v; };
  WinCount out;
  for (size_t i = 0; i < a.size(); ++i) {
    double x = round(a[i]), y = round(b[i]);
    if (direction == Direction::kLowerBetter) std::swap(x, y);
    if (x > y) {
      ++out.wins_a;
    } else if (y > x) {
      ++out.wins_b;
    } else {
      ++out.ties;
    }
  }
  return out;
}

}  // namespace hyperdt
