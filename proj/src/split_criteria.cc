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

#include "hyperdt/split_criteria.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "hyperdt/errors.h"

namespace hyperdt {
namespace {

constexpr std::array<const char*, kNumSplitCriteria> kNames = {
    "info_gain", "gain_ratio",      "gini_gain",      "chi_squared",
    "g_statistic", "dkm", "normalized_gain", "error_reduction"};

double Entropy(const double* counts, int k, double total) {
  double h = 0;
  for (int c = 0; c < k; ++c) {
    if (counts[c] > 0) {
      const double p = counts[c] / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double Gini(const double* counts, int k, double total) {
  double s = 0;
  for (int c = 0; c < k; ++c) {
    const double p = counts[c] / total;
    s += p * p;
  }
  return 1.0 - s;
}

double Dkm(const double* counts, int k, double total) {
  double s = 0;
  for (int c = 0; c < k; ++c) {
    const double p = counts[c] / total;
    s += 2.0 * std::sqrt(p * (1.0 - p));
  }
  return s / k;
}

double MisclassificationError(const double* counts, int k, double total) {
  return 1.0 - *std::max_element(counts, counts + k) / total;
}

using Impurity = double (*)(const double*, int, double);

struct Table {
  const double* cells;
  int rows;
  int cols;
  std::vector<double> parent;
  std::vector<double> row_totals;
  double total = 0;

  Table(const double* c, int r, int k)
      : cells(c), rows(r), cols(k), parent(k, 0.0), row_totals(r, 0.0) {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < k; ++j) {
        parent[j] += c[i * k + j];
        row_totals[i] += c[i * k + j];
      }
      total += row_totals[i];
    }
  }
};

double ImpurityReduction(const Table& t, Impurity f) {
  double children = 0;
  for (int i = 0; i < t.rows; ++i) {
    if (t.row_totals[i] <= 0) continue;
    children += t.row_totals[i] / t.total * f(t.cells + i * t.cols, t.cols,
                                                t.row_totals[i]);
  }
  // Clamp rounding noise so degenerate splits score exactly 0.
  return std::max(0.0, f(t.parent.data(), t.cols, t.total) - children);
}

}  // namespace

std::string ToString(SplitCriterion c) {
  return kNames[static_cast<int>(c)];
}

SplitCriterion ParseSplitCriterion(const std::string& name) {
  for (int i = 0; i < kNumSplitCriteria; ++i) {
    if (name == kNames[i]) return static_cast<SplitCriterion>(i);
  }
  throw ArgumentError("unknown split criterion '" + name + "'");
}

ChiSquare ChiSquareOfTable(const double* children, int num_children,
                           int num_classes) {
  const Table t(children, num_children, num_classes);
  ChiSquare out;
  if (t.total <= 0) return out;
  int rows = 0, cols = 0;
  for (int i = 0; i < num_children; ++i) rows += t.row_totals[i] > 0;
  for (int j = 0; j < num_classes; ++j) cols += t.parent[j] > 0;
  for (int i = 0; i < num_children; ++i) {
    for (int j = 0; j < num_classes; ++j) {
      const double expected = t.row_totals[i] * t.parent[j] / t.total;
      if (expected <= 0) continue;
      const double d = children[i * num_classes + j] - expected;
      out.statistic += d * d / expected;
    }
  }
  out.df = std::max(0, (rows - 1) * (cols - 1));
  return out;
}

double ScoreSplit(SplitCriterion criterion, const double* children,
                  int num_children, int num_classes) {
  const Table t(children, num_children, num_classes);
  if (t.total <= 0) return 0;
  switch (criterion) {
    case SplitCriterion::kInfoGain:
      return ImpurityReduction(t, Entropy);
    case SplitCriterion::kGainRatio: {
      const double gain = ImpurityReduction(t, Entropy);
      const double split_info =
          Entropy(t.row_totals.data(), t.rows, t.total);
      return split_info > 0 ? gain / split_info : 0.0;
    }
    case SplitCriterion::kGiniGain:
      return ImpurityReduction(t, Gini);
    case SplitCriterion::kChiSquared:
      return ChiSquareOfTable(children, num_children, num_classes).statistic;
    case SplitCriterion::kGStatistic: {
      double g = 0;
      for (int i = 0; i < t.rows; ++i) {
        for (int j = 0; j < t.cols; ++j) {
          const double o = children[i * t.cols + j];
          if (o <= 0) continue;
          const double e = t.row_totals[i] * t.parent[j] / t.total;
          g += o * std::log(o / e);
        }
      }
      return std::max(0.0, 2.0 * g);
    }
    case SplitCriterion::kDkm:
      return ImpurityReduction(t, Dkm);
    case SplitCriterion::kNormalizedGain: {
      int branches = 0;
      for (double n : t.row_totals) branches += n > 0;
      if (branches < 2) return 0.0;
      return ImpurityReduction(t, Entropy) / std::log2(branches);
    }
    case SplitCriterion::kErrorReduction:
      return ImpurityReduction(t, MisclassificationError);
  }
  return 0;
}

double CriterionScore(SplitCriterion criterion, std::span<const double> parent,
                      std::span<const double> children) {
  const int k = static_cast<int>(parent.size());
  if (k == 0 || children.size() % k != 0) {
    throw ArgumentError("child table width does not match the parent");
  }
  double total = 0;
  for (double v : parent) {
    if (v < 0) throw ArgumentError("negative class count");
    total += v;
  }
  if (total <= 0) throw ArgumentError("empty parent");
  const int rows = static_cast<int>(children.size()) / k;
  for (int j = 0; j < k; ++j) {
    double col = 0;
    for (int i = 0; i < rows; ++i) {
      if (children[i * k + j] < 0) throw ArgumentError("negative class count");
      col += children[i * k + j];
    }
    if (std::abs(col - parent[j]) > 1e-9 * std::max(1.0, total)) {
      throw ArgumentError("children do not partition the parent");
    }
  }
  return ScoreSplit(criterion, children.data(), rows, k);
}

double CriterionScore(SplitCriterion criterion, std::span<const double> parent,
                      const std::vector<std::vector<double>>& children) {
  std::vector<double> flat;
  for (const auto& child : children) {
    if (child.size() != parent.size()) {
      throw ArgumentError("child width does not match the parent");
    }
    flat.insert(flat.end(), child.begin(), child.end());
  }
  return CriterionScore(criterion, parent, std::span<const double>(flat));
}

}  // namespace hyperdt
