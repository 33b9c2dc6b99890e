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

#ifndef HYPERDT_SPLIT_CRITERIA_H_
#define HYPERDT_SPLIT_CRITERIA_H_

#include <span>
#include <string>
#include <vector>

namespace hyperdt {

// Feature evaluation functions. Every score is oriented so that larger is
// better and the degenerate split (one non-empty child equal to the parent)
// scores 0, the minimum.
enum class SplitCriterion {
  kInfoGain,        // H(parent) - sum_i w_i H(child_i), bits
  kGainRatio,       // information gain / split information
  kGiniGain,        // Gini(parent) - sum_i w_i Gini(child_i)
  kChiSquared,      // Pearson statistic of the child x class table
  kGStatistic,      // 2 sum O ln(O/E) = 2 N ln2 * information gain
  kDkm,             // DKM impurity reduction
  kNormalizedGain,  // information gain / log2(non-empty children)
  kErrorReduction,  // misclassification-error reduction
};

inline constexpr int kNumSplitCriteria = 8;

std::string ToString(SplitCriterion c);
// Throws ArgumentError on unknown names.
SplitCriterion ParseSplitCriterion(const std::string& name);

// Scores a split given as a row-major table `children` of
// `num_children x parent.size()` class weights. Children must partition the
// parent (column sums equal within 1e-9 relative), otherwise ArgumentError;
// an empty parent is also an ArgumentError.
double CriterionScore(SplitCriterion criterion, std::span<const double> parent,
                      std::span<const double> children);

// Convenience overload taking one vector per child.
double CriterionScore(SplitCriterion criterion, std::span<const double> parent,
                      const std::vector<std::vector<double>>& children);

// Unchecked variant used on the induction hot path; `parent` is implied by
// the column sums of `children`.
double ScoreSplit(SplitCriterion criterion, const double* children,
                  int num_children, int num_classes);

// Pearson chi-squared statistic and its degrees of freedom, counting only
// non-empty children and classes.
struct ChiSquare {
  double statistic = 0;
  int df = 0;
};
ChiSquare ChiSquareOfTable(const double* children, int num_children,
                           int num_classes);

}  // namespace hyperdt

#endif  // HYPERDT_SPLIT_CRITERIA_H_
