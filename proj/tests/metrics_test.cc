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

#include <cmath>

#include <gtest/gtest.h>

#include "hyperdt/errors.h"
#include "hyperdt/metrics.h"
#include "hyperdt/random.h"
#include "oracles.h"

namespace hyperdt {
namespace {

using testing::BruteForce;
using testing::MetricOracle;
using testing::RandomMatrix;

// Binary matrix with class 0 as the positive class.
ConfusionMatrix Binary(long long tp, long long fn, long long fp, long long tn) {
  ConfusionMatrix cm(2);
  cm.Add(0, 0, tp);
  cm.Add(0, 1, fn);
  cm.Add(1, 0, fp);
  cm.Add(1, 1, tn);
  return cm;
}

TEST(ConfusionTest, IdentityIsDiagonal) {
  std::vector<int> labels = {0, 1, 2, 0, 1, 2, 0, 0, 1, 2};
  const ConfusionMatrix cm = Confusion(labels, labels, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j) EXPECT_EQ(cm.at(i, j), 0);
    }
  }
  EXPECT_EQ(cm.trace(), 10);
}

TEST(ConfusionTest, StringLabels) {
  const ConfusionMatrix cm = Confusion({"a", "a", "b"}, {"a", "b", "b"}, {"a", "b"});
  EXPECT_EQ(cm.at(0, 0), 1);
  EXPECT_EQ(cm.at(0, 1), 1);
  EXPECT_EQ(cm.at(1, 1), 1);
  EXPECT_EQ(cm.at(1, 0), 0);
}

TEST(ConfusionTest, Errors) {
  std::vector<int> a = {0, 1}, b = {0};
  EXPECT_THROW(Confusion(a, b, 2), ArgumentError);
  std::vector<int> c = {0, 2};
  EXPECT_THROW(Confusion(a, c, 2), ArgumentError);
  EXPECT_THROW(Confusion({"a"}, {"z"}, {"a", "b"}), ArgumentError);
}

TEST(ConfusionTest, MatchesTally) {
  Rng rng(1);
  std::vector<int> truth(200), pred(200);
  for (int t = 0; t < 200; ++t) {
    truth[t] = static_cast<int>(rng.UniformIndex(4));
    pred[t] = static_cast<int>(rng.UniformIndex(4));
  }
  const ConfusionMatrix cm = Confusion(truth, pred, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      long long n = 0;
      for (int t = 0; t < 200; ++t) n += truth[t] == i && pred[t] == j;
      EXPECT_EQ(cm.at(i, j), n);
    }
  }
  EXPECT_EQ(cm.total(), 200);
}

TEST(SensSpecTest, PerfectAndHandArithmetic) {
  const SensSpec perfect = PerClassSensSpec(Binary(5, 0, 0, 5), 0);
  EXPECT_EQ(perfect.sensitivity, 1.0);
  EXPECT_EQ(perfect.specificity, 1.0);
  const SensSpec s = PerClassSensSpec(Binary(8, 2, 4, 6), 0);
  EXPECT_DOUBLE_EQ(s.sensitivity, 0.8);
  EXPECT_DOUBLE_EQ(s.specificity, 0.6);
}

TEST(SensSpecTest, AbsentClassFallsBackToZero) {
  ConfusionMatrix cm(3);
  cm.Add(0, 0, 4);
  cm.Add(1, 2, 3);
  EXPECT_EQ(PerClassSensSpec(cm, 2).sensitivity, 0.0);
}

TEST(GMeanTest, Examples) {
  EXPECT_DOUBLE_EQ(GMean(Binary(7, 0, 0, 3)), 1.0);
  EXPECT_NEAR(GMean(Binary(8, 2, 4, 6)), std::sqrt(0.48), 1e-12);
  // All-majority predictor on 70/30 data.
  const ConfusionMatrix majority = Binary(70, 0, 30, 0);
  EXPECT_LT(GMean(majority), Accuracy(majority));
}

TEST(GMeanTest, BelowAccuracyForEveryMajorityPredictor) {
  for (int minority = 1; minority < 50; ++minority) {
    const ConfusionMatrix cm = Binary(100 - minority, 0, minority, 0);
    EXPECT_LT(GMean(cm), Accuracy(cm));
  }
}

TEST(GMeanTest, InvariantUnderLabelSwapAndBounded) {
  Rng rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const ConfusionMatrix cm = RandomMatrix(rng, 2, 20);
    ConfusionMatrix swapped(2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) swapped.Add(1 - i, 1 - j, cm.at(i, j));
    }
    EXPECT_NEAR(GMean(cm), GMean(swapped), 1e-12);
    const double g = GMean(cm);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, 1.0 + 1e-12);
    const bool diagonal = cm.at(0, 1) == 0 && cm.at(1, 0) == 0;
    const bool both_present = cm.TruthCount(0) > 0 && cm.TruthCount(1) > 0;
    EXPECT_EQ(std::abs(g - 1.0) < 1e-12, diagonal && both_present);
  }
}

TEST(FMeasureTest, Examples) {
  EXPECT_DOUBLE_EQ(FMeasure(Binary(7, 0, 0, 3)), 1.0);
  const double f_pos = 2 * (8.0 / 12) * 0.8 / (8.0 / 12 + 0.8);
  const double f_neg = 2 * (6.0 / 8) * 0.6 / (6.0 / 8 + 0.6);
  EXPECT_NEAR(f_pos, 0.727272727, 1e-9);
  EXPECT_NEAR(FMeasure(Binary(8, 2, 4, 6)), 0.5 * f_pos + 0.5 * f_neg, 1e-12);
  // Class 1 is never predicted: its term is zero.
  EXPECT_NEAR(FMeasure(Binary(6, 0, 4, 0)), 0.6 * (2 * 0.6 / 1.6), 1e-12);
}

TEST(AccuracyTest, Examples) {
  EXPECT_DOUBLE_EQ(Accuracy(Binary(3, 0, 0, 9)), 1.0);
  EXPECT_DOUBLE_EQ(Accuracy(Binary(40, 10, 15, 35)), 0.75);
}

TEST(MetricsTest, RoutesAgreeWithBruteForceOracle) {
  Rng rng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = 2 + static_cast<int>(rng.UniformIndex(4));
    const ConfusionMatrix cm = RandomMatrix(rng, k, 30);
    const MetricOracle o = BruteForce(cm);
    const MetricSet m = ComputeMetrics(cm);
    EXPECT_NEAR(Accuracy(cm), o.accuracy, 1e-12);
    EXPECT_NEAR(GMean(cm), o.gmean, 1e-12);
    EXPECT_NEAR(FMeasure(cm), o.fmeasure, 1e-12);
    EXPECT_NEAR(WeightedSensitivity(cm), o.sens, 1e-12);
    EXPECT_NEAR(WeightedSpecificity(cm), o.spec, 1e-12);
    EXPECT_NEAR(m.accuracy, o.accuracy, 1e-12);
    EXPECT_NEAR(m.gmean, o.gmean, 1e-12);
    EXPECT_NEAR(m.fmeasure, o.fmeasure, 1e-12);
    EXPECT_NEAR(m.sens_weighted, o.sens, 1e-12);
    EXPECT_NEAR(m.spec_weighted, o.spec, 1e-12);
  }
}

TEST(MetricsTest, NamesRoundTrip) {
  for (Metric m : {Metric::kAccuracy, Metric::kGMean, Metric::kFMeasure}) {
    EXPECT_EQ(ParseMetric(MetricName(m)), m);
  }
  EXPECT_THROW(ParseMetric("auc"), ArgumentError);
  MetricSet set{0.1, 0.2, 0.3, 0.4, 0.5};
  EXPECT_EQ(Select(set, Metric::kGMean), 0.2);
}

}  // namespace
}  // namespace hyperdt
