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

#ifndef HYPERDT_METRICS_H_
#define HYPERDT_METRICS_H_

#include <span>
#include <string>
#include <vector>

namespace hyperdt {

// counts[t][p]: instances of true class t predicted as p.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(int num_classes);
  ConfusionMatrix(std::vector<std::string> classes);

  int num_classes() const { return static_cast<int>(counts_.size()); }
  const std::vector<std::string>& classes() const { return classes_; }
  long long at(int truth, int pred) const { return counts_[truth][pred]; }
  void Add(int truth, int pred, long long n = 1);
  long long total() const { return total_; }
  long long trace() const;
  long long TruthCount(int c) const;
  long long PredictedCount(int c) const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::vector<std::string> classes_;
  std::vector<std::vector<long long>> counts_;
  long long total_ = 0;
};

// Throws ArgumentError on length mismatch or labels outside [0, classes).
ConfusionMatrix Confusion(std::span<const int> truth, std::span<const int> pred,
                          int num_classes);
// String-label overload; labels must appear in `classes`.
ConfusionMatrix Confusion(const std::vector<std::string>& truth,
                          const std::vector<std::string>& pred,
                          const std::vector<std::string>& classes);

struct SensSpec {
  double sensitivity = 0;
  double specificity = 0;
};

// One-vs-rest rates for class `c`. An empty denominator yields 0.
SensSpec PerClassSensSpec(const ConfusionMatrix& cm, int c);

// Weighted per-class measures. Class weights are truth frequencies, so
// classes absent from the truth contribute nothing.
double Accuracy(const ConfusionMatrix& cm);
double GMean(const ConfusionMatrix& cm);     // sum_c w_c sqrt(sens_c spec_c)
double FMeasure(const ConfusionMatrix& cm);  // sum_c w_c F1_c
double WeightedSensitivity(const ConfusionMatrix& cm);
double WeightedSpecificity(const ConfusionMatrix& cm);

struct MetricSet {
  double accuracy = 0;
  double gmean = 0;
  double fmeasure = 0;
  double sens_weighted = 0;
  double spec_weighted = 0;

  bool operator==(const MetricSet&) const = default;
};

// All measures from one pass over the matrix (row/column sums and diagonal,
// then closed-form per-class terms). Agrees with the per-class functions.
MetricSet ComputeMetrics(const ConfusionMatrix& cm);

enum class Metric { kAccuracy, kGMean, kFMeasure };

double Select(const MetricSet& m, Metric metric);
std::string MetricName(Metric metric);
// Accepts "accuracy", "gmean", "fmeasure". Throws ArgumentError otherwise.
Metric ParseMetric(const std::string& name);

}  // namespace hyperdt

#endif  // HYPERDT_METRICS_H_
