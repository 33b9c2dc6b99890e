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

#include "hyperdt/learners.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperdt/errors.h"

namespace hyperdt {

std::vector<int> Classifier::PredictAll(const Dataset& ds) const {
  std::vector<int> out(ds.num_rows());
  for (size_t r = 0; r < ds.num_rows(); ++r) out[r] = Predict(ds.row(r));
  return out;
}

namespace {

int ArgMaxFirst(const std::vector<double>& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

NaiveBayes::NaiveBayes(const NaiveBayesConfig& cfg, const Dataset& train)
    : num_classes_(train.num_classes()), class_index_(train.class_index()) {
  if (train.empty()) throw ArgumentError("naive Bayes needs training rows");
  const int k = num_classes_;
  const int attrs = train.num_attributes();
  const double alpha = cfg.alpha;
  const std::vector<size_t> class_counts = train.ClassCounts();
  const double n = static_cast<double>(train.num_rows());
  log_prior_.resize(k);
  for (int c = 0; c < k; ++c) {
    log_prior_[c] = std::log((class_counts[c] + alpha) / (n + alpha * k));
  }
  nominal_.assign(attrs, false);
  log_likelihood_.resize(attrs);
  mean_.assign(attrs, std::vector<double>(k, 0.0));
  variance_.assign(attrs, std::vector<double>(k, 1.0));
  for (int a = 0; a < attrs; ++a) {
    if (a == class_index_) continue;
    const Attribute& attr = train.attribute(a);
    if (attr.is_nominal()) {
      nominal_[a] = true;
      const int values = attr.num_values();
      std::vector<std::vector<double>> counts(k, std::vector<double>(values, 0.0));
      for (size_t r = 0; r < train.num_rows(); ++r) {
        const double v = train.value(r, a);
        if (!IsMissing(v)) counts[train.label(r)][static_cast<int>(v)] += 1;
      }
      auto& ll = log_likelihood_[a];
      ll.assign(k, std::vector<double>(values, 0.0));
      for (int c = 0; c < k; ++c) {
        double total = 0;
        for (double x : counts[c]) total += x;
        for (int v = 0; v < values; ++v) {
          ll[c][v] = std::log((counts[c][v] + alpha) / (total + alpha * values));
        }
      }
      continue;
    }
    // Per-class Gaussian; classes without known values fall back to the
    // pooled estimate, and variances are floored relative to it.
    double pooled_sum = 0, pooled_sq = 0, pooled_n = 0;
    std::vector<double> sum(k, 0.0), sq(k, 0.0), cnt(k, 0.0);
    for (size_t r = 0; r < train.num_rows(); ++r) {
      const double v = train.value(r, a);
      if (IsMissing(v)) continue;
      const int c = train.label(r);
      sum[c] += v, sq[c] += v * v, cnt[c] += 1;
      pooled_sum += v, pooled_sq += v * v, pooled_n += 1;
    }
    const double pooled_mean = pooled_n > 0 ? pooled_sum / pooled_n : 0.0;
    const double pooled_var =
        pooled_n > 1 ? std::max(0.0, pooled_sq / pooled_n - pooled_mean * pooled_mean)
                     : 1.0;
    const double floor = std::max(1e-9, 1e-6 * pooled_var);
    for (int c = 0; c < k; ++c) {
      if (cnt[c] > 0) {
        mean_[a][c] = sum[c] / cnt[c];
        const double var = cnt[c] > 1 ? (sq[c] - cnt[c] * mean_[a][c] * mean_[a][c]) /
                                            (cnt[c] - 1)
                                      : pooled_var;
        variance_[a][c] = std::max(floor, var);
      } else {
        mean_[a][c] = pooled_mean;
        variance_[a][c] = std::max(floor, pooled_var);
      }
    }
  }
}

std::vector<double> NaiveBayes::LogScores(std::span<const double> row) const {
  std::vector<double> score = log_prior_;
  for (size_t a = 0; a < nominal_.size(); ++a) {
    if (static_cast<int>(a) == class_index_) continue;
    const double v = row[a];
    if (IsMissing(v)) continue;
    for (int c = 0; c < num_classes_; ++c) {
      if (nominal_[a]) {
        score[c] += log_likelihood_[a][c][static_cast<int>(v)];
      } else {
        const double var = variance_[a][c];
        const double d = v - mean_[a][c];
        score[c] += -0.5 * std::log(2 * std::numbers::pi * var) - d * d / (2 * var);
      }
    }
  }
  return score;
}

int NaiveBayes::Predict(std::span<const double> row) const {
  return ArgMaxFirst(LogScores(row));
}

Knn::Knn(const KnnConfig& cfg, const Dataset& train) : k_(cfg.k), train_(train) {
  if (train.empty()) throw ArgumentError("k-NN needs training rows");
  if (cfg.k < 1) throw ArgumentError("k must be positive");
  if (cfg.distance != "standardized_overlap") {
    throw ArgumentError("unknown k-NN distance '" + cfg.distance + "'");
  }
  const int attrs = train.num_attributes();
  mean_.assign(attrs, 0.0);
  scale_.assign(attrs, 1.0);
  for (int a = 0; a < attrs; ++a) {
    if (a == train.class_index() || train.attribute(a).is_nominal()) continue;
    double sum = 0, sq = 0, n = 0;
    for (size_t r = 0; r < train.num_rows(); ++r) {
      const double v = train.value(r, a);
      if (!IsMissing(v)) sum += v, sq += v * v, n += 1;
    }
    if (n == 0) continue;
    mean_[a] = sum / n;
    const double sd = std::sqrt(std::max(0.0, sq / n - mean_[a] * mean_[a]));
    scale_[a] = sd > 0 ? sd : 1.0;
  }
}

double Knn::Distance(std::span<const double> a, std::span<const double> b) const {
  double d = 0;
  for (int i = 0; i < train_.num_attributes(); ++i) {
    if (i == train_.class_index()) continue;
    if (IsMissing(a[i]) || IsMissing(b[i])) {
      d += 1;
    } else if (train_.attribute(i).is_nominal()) {
      d += a[i] != b[i];
    } else {
      const double z = (a[i] - b[i]) / scale_[i];
      d += z * z;
    }
  }
  return d;
}

int Knn::Predict(std::span<const double> row) const {
  const size_t n = train_.num_rows();
  std::vector<std::pair<double, size_t>> dist(n);
  for (size_t r = 0; r < n; ++r) dist[r] = {Distance(row, train_.row(r)), r};
  const size_t k = std::min<size_t>(k_, n);
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
  std::vector<double> votes(train_.num_classes(), 0.0);
  for (size_t i = 0; i < k; ++i) votes[train_.label(dist[i].second)] += 1;
  const double top = *std::max_element(votes.begin(), votes.end());
  for (size_t i = 0; i < k; ++i) {
    const int c = train_.label(dist[i].second);
    if (votes[c] == top) return c;
  }
  return 0;
}

Majority::Majority(const Dataset& train) {
  if (train.empty()) throw ArgumentError("majority learner needs training rows");
  const std::vector<size_t> counts = train.ClassCounts();
  label_ = static_cast<int>(std::max_element(counts.begin(), counts.end()) -
                            counts.begin());
}

std::unique_ptr<Classifier> TrainClassifier(const CashConfiguration& config,
                                            const Dataset& train, uint64_t seed,
                                            const Deadline& deadline) {
  deadline.Check();
  if (const auto* tree = std::get_if<DTConfig>(&config)) {
    return std::make_unique<TreeClassifier>(
        TrainTreeAlgorithm(*tree, train, seed, deadline), tree->missing_test);
  }
  if (const auto* nb = std::get_if<NaiveBayesConfig>(&config)) {
    return std::make_unique<NaiveBayes>(*nb, train);
  }
  if (const auto* knn = std::get_if<KnnConfig>(&config)) {
    return std::make_unique<Knn>(*knn, train);
  }
  return std::make_unique<Majority>(train);
}

}  // namespace hyperdt
