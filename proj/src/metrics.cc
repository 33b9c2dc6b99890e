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

#include "hyperdt/metrics.h"

#include <cmath>

#include "hyperdt/errors.h"

namespace hyperdt {

ConfusionMatrix::ConfusionMatrix(int num_classes)
    : counts_(num_classes, std::vector<long long>(num_classes, 0)) {
  if (num_classes < 1) throw ArgumentError("confusion matrix needs a class");
  for (int c = 0; c < num_classes; ++c) classes_.push_back(std::to_string(c));
}

ConfusionMatrix::ConfusionMatrix(std::vector<std::string> classes)
    : ConfusionMatrix(static_cast<int>(classes.size())) {
  classes_ = std::move(classes);
}

void ConfusionMatrix::Add(int truth, int pred, long long n) {
  counts_[truth][pred] += n;
  total_ += n;
}

long long ConfusionMatrix::trace() const {
  long long t = 0;
  for (int c = 0; c < num_classes(); ++c) t += counts_[c][c];
  return t;
}

long long ConfusionMatrix::TruthCount(int c) const {
  long long n = 0;
  for (long long v : counts_[c]) n += v;
  return n;
}

long long ConfusionMatrix::PredictedCount(int c) const {
  long long n = 0;
  for (const auto& row : counts_) n += row[c];
  return n;
}

ConfusionMatrix Confusion(std::span<const int> truth, std::span<const int> pred,
                          int num_classes) {
  if (truth.size() != pred.size()) {
    throw ArgumentError("truth and prediction lengths differ");
  }
  ConfusionMatrix cm(num_classes);
  for (size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= num_classes || pred[i] < 0 ||
        pred[i] >= num_classes) {
      throw ArgumentError("label outside the class set at position " +
                          std::to_string(i));
    }
    cm.Add(truth[i], pred[i]);
  }
  return cm;
}

ConfusionMatrix Confusion(const std::vector<std::string>& truth,
                          const std::vector<std::string>& pred,
                          const std::vector<std::string>& classes) {
  if (truth.size() != pred.size()) {
    throw ArgumentError("truth and prediction lengths differ");
  }
  auto index = [&](const std::string& label) {
    for (size_t c = 0; c < classes.size(); ++c) {
      if (classes[c] == label) return static_cast<int>(c);
    }
    throw ArgumentError("unknown label '" + label + "'");
  };
  ConfusionMatrix cm(classes);
  for (size_t i = 0; i < truth.size(); ++i) cm.Add(index(truth[i]), index(pred[i]));
  return cm;
}

namespace {

double Ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

double Weight(const ConfusionMatrix& cm, int c) {
  return Ratio(static_cast<double>(cm.TruthCount(c)),
               static_cast<double>(cm.total()));
}

}  // namespace

SensSpec PerClassSensSpec(const ConfusionMatrix& cm, int c) {
  const double tp = static_cast<double>(cm.at(c, c));
  const double fn = static_cast<double>(cm.TruthCount(c)) - tp;
  const double fp = static_cast<double>(cm.PredictedCount(c)) - tp;
  const double tn = static_cast<double>(cm.total()) - tp - fn - fp;
  return {Ratio(tp, tp + fn), Ratio(tn, tn + fp)};
}

double Accuracy(const ConfusionMatrix& cm) {
  return Ratio(static_cast<double>(cm.trace()), static_cast<double>(cm.total()));
}

double GMean(const ConfusionMatrix& cm) {
  double sum = 0;
  for (int c = 0; c < cm.num_classes(); ++c) {
    const SensSpec s = PerClassSensSpec(cm, c);
    sum += Weight(cm, c) * std::sqrt(s.sensitivity * s.specificity);
  }
  return sum;
}

double FMeasure(const ConfusionMatrix& cm) {
  double sum = 0;
  for (int c = 0; c < cm.num_classes(); ++c) {
    const double tp = static_cast<double>(cm.at(c, c));
    const double precision = Ratio(tp, static_cast<double>(cm.PredictedCount(c)));
    const double recall = Ratio(tp, static_cast<double>(cm.TruthCount(c)));
    sum += Weight(cm, c) *
           Ratio(2 * precision * recall, precision + recall);
  }
  return sum;
}

double WeightedSensitivity(const ConfusionMatrix& cm) {
  double sum = 0;
  for (int c = 0; c < cm.num_classes(); ++c) {
    sum += Weight(cm, c) * PerClassSensSpec(cm, c).sensitivity;
  }
  return sum;
}

double WeightedSpecificity(const ConfusionMatrix& cm) {
  double sum = 0;
  for (int c = 0; c < cm.num_classes(); ++c) {
    sum += Weight(cm, c) * PerClassSensSpec(cm, c).specificity;
  }
  return sum;
}

MetricSet ComputeMetrics(const ConfusionMatrix& cm) {
  const int k = cm.num_classes();
  std::vector<double> row(k, 0), col(k, 0), diag(k, 0);
  double total = 0;
  for (int t = 0; t < k; ++t) {
    for (int p = 0; p < k; ++p) {
      const double v = static_cast<double>(cm.at(t, p));
      row[t] += v;
      col[p] += v;
      total += v;
      if (t == p) diag[t] = v;
    }
  }
  MetricSet m;
  if (total <= 0) return m;
  double trace = 0;
  for (int c = 0; c < k; ++c) {
    trace += diag[c];
    const double w = row[c] / total;
    const double sens = Ratio(diag[c], row[c]);
    const double negatives = total - row[c];
    const double spec = Ratio(negatives - (col[c] - diag[c]), negatives);
    const double prec = Ratio(diag[c], col[c]);
    m.gmean += w * std::sqrt(sens * spec);
    m.fmeasure += w * Ratio(2 * prec * sens, prec + sens);
    m.sens_weighted += w * sens;
    m.spec_weighted += w * spec;
  }
  m.accuracy = trace / total;
  return m;
}

double Select(const MetricSet& m, Metric metric) {
  switch (metric) {
    case Metric::kAccuracy:
      return m.accuracy;
    case Metric::kGMean:
      return m.gmean;
    case Metric::kFMeasure:
      return m.fmeasure;
  }
  return 0;
}

std::string MetricName(Metric metric) {
  switch (metric) {
    case Metric::kAccuracy:
      return "accuracy";
    case Metric::kGMean:
      return "gmean";
    case Metric::kFMeasure:
      return "fmeasure";
  }
  return "";
}

Metric ParseMetric(const std::string& name) {
  if (name == "accuracy") return Metric::kAccuracy;
  if (name == "gmean") return Metric::kGMean;
  if (name == "fmeasure") return Metric::kFMeasure;
  throw ArgumentError("unknown metric '" + name + "'");
}

}  // namespace hyperdt
