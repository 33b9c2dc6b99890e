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
#include <set>

#include <gtest/gtest.h>

#include "hyperdt/arff.h"
#include "hyperdt/cash.h"
#include "hyperdt/errors.h"
#include "hyperdt/learners.h"
#include "test_util.h"

namespace hyperdt {
namespace {

using testing::LabelsOnly;

const Dataset& Separable() {
  static const Dataset ds = LoadDataset(testing::DataPath("separable300.arff"));
  return ds;
}

double TestAccuracy(const CashConfiguration& c, const DataSplit& s) {
  return 1.0 - Loss(c, s.train, s.valid, 1);
}

TEST(LearnersTest, SeparableFixtureSanity) {
  const DataSplit s = MetaSplit(Separable(), 0.3, 17);
  EXPECT_GE(TestAccuracy(NaiveBayesConfig{0.1}, s), 0.9);
  for (int k : {1, 3, 5, 7, 11}) {
    EXPECT_GE(TestAccuracy(KnnConfig{k, "standardized_overlap"}, s), 0.9) << k;
  }
  EXPECT_GE(TestAccuracy(DTConfig{}, s), 0.9);
  // Majority: exactly the majority frequency of the scored part.
  const auto counts = s.valid.ClassCounts();
  EXPECT_DOUBLE_EQ(TestAccuracy(MajorityConfig{}, s),
                   double(*std::max_element(counts.begin(), counts.end())) /
                       s.valid.num_rows());
}

TEST(LearnersTest, NaiveBayesMatchesHandComputation) {
  Schema schema;
  schema.relation = "nb";
  schema.attributes = {Attribute::Nominal("a", {"x", "y"}),
                       Attribute::Nominal("c", {"p", "q"})};
  schema.class_index = 1;
  const Dataset ds =
      Dataset::FromRows(schema, {{0, 0}, {0, 0}, {1, 0}, {1, 1}, {kMissing, 1}});
  const NaiveBayes nb(NaiveBayesConfig{0.5}, ds);
  const std::vector<double> row = {1, 0};
  const std::vector<double> s = nb.LogScores(row);
  // prior p: (3 + .5) / (5 + 1); P(a=y | p) = (1 + .5) / (3 + 1).
  EXPECT_NEAR(s[0], std::log(3.5 / 6) + std::log(1.5 / 4), 1e-12);
  // prior q: (2 + .5) / 6; the missing cell is skipped: (1 + .5) / (1 + 1).
  EXPECT_NEAR(s[1], std::log(2.5 / 6) + std::log(1.5 / 2), 1e-12);
  EXPECT_EQ(nb.Predict(row), 1);
}

TEST(LearnersTest, KnnTieBreaksAndMissingDistance) {
  const Dataset ds = LabelsOnly({0, 1, 1, 0}, 2);  // x = 0, 1, 2, 3
  const Knn one(KnnConfig{1, "standardized_overlap"}, ds);
  const std::vector<double> mid = {0.5, 0};
  EXPECT_EQ(one.Predict(mid), 0);  // equidistant: earlier row
  const Knn two(KnnConfig{2, "standardized_overlap"}, ds);
  const std::vector<double> near1 = {1.4, 0};
  EXPECT_EQ(two.Predict(near1), 1);  // rows 1 and 2
  const std::vector<double> near01 = {0.4, 0};
  EXPECT_EQ(two.Predict(near01), 0);  // 1-1 vote: nearest neighbour's class
  const std::vector<double> missing = {kMissing, 0};
  EXPECT_EQ(one.Predict(missing), 0);  // every row at distance 1
  EXPECT_THROW(Knn(KnnConfig{1, "manhattan"}, ds), ArgumentError);
}

TEST(LossTest, Examples) {
  // Far-apart clusters: 1-NN is perfect.
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 20; ++i) rows.push_back({i < 10 ? i : 1000.0 + i, i < 10 ? 0.0 : 1.0});
  const Dataset ds = Dataset::FromRows(LabelsOnly({0, 1}, 2).schema(), rows);
  const DataSplit s = MetaSplit(ds, 0.3, 2);
  EXPECT_EQ(Loss(KnnConfig{1, "standardized_overlap"}, s.train, s.valid, 1), 0.0);

  std::vector<int> seventy(70, 0);
  seventy.insert(seventy.end(), 30, 1);
  const Dataset skewed = LabelsOnly(seventy, 2);
  EXPECT_DOUBLE_EQ(Loss(MajorityConfig{}, skewed, skewed, 1), 0.30);

  DTConfig rep;
  rep.pruning = {Pruning::Kind::kReducedError, 0.25};
  const DataSplit t = MetaSplit(Separable(), 0.3, 3);
  EXPECT_EQ(Loss(rep, t.train, t.valid, 9), Loss(rep, t.train, t.valid, 9));
}

ComponentSpace OneGene(int size) {
  Gene g;
  g.name = "v";
  for (int i = 0; i < size; ++i) g.labels.push_back(std::to_string(i));
  return ComponentSpace({g});
}

TEST(SurrogateTest, PriorThenSingleEntry) {
  const ComponentSpace space = DefaultCashSpace();
  Surrogate m(space);
  Rng rng(1);
  EXPECT_EQ(m.Predict(RandomGenome(space, rng)), 0.5);
  const Genome g = RandomGenome(space, rng);
  m.Fit({g}, {0.27});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(m.Predict(RandomGenome(space, rng)), 0.27);
  EXPECT_THROW(m.Fit({}, {}), ArgumentError);
}

TEST(SurrogateTest, OrdersFamiliesByMeanLoss) {
  const ComponentSpace space = DefaultCashSpace();
  Rng rng(2);
  const double family_loss[] = {0.1, 0.4, 0.25, 0.6};
  std::vector<Genome> genomes;
  std::vector<double> losses;
  const int family = space.IndexOf("family");
  for (int i = 0; i < 200; ++i) {
    Genome g = RandomGenome(space, rng);
    genomes.push_back(g);
    losses.push_back(family_loss[g[family]]);
  }
  Surrogate m(space);
  m.Fit(genomes, losses);
  for (int i = 0; i < 200; ++i) {
    const Genome g = RandomGenome(space, rng);
    EXPECT_DOUBLE_EQ(m.Predict(g), family_loss[g[family]]);
  }
}

TEST(SurrogateTest, TrainingErrorBeatsConstantMeanAndIsDeterministic) {
  const ComponentSpace space = DefaultCashSpace();
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Genome> genomes;
    std::vector<double> losses;
    const size_t n = 1 + rng.UniformIndex(60);
    for (size_t i = 0; i < n; ++i) {
      genomes.push_back(RandomGenome(space, rng));
      losses.push_back(rng.Uniform01());
    }
    Surrogate a(space), b(space);
    a.Fit(genomes, losses);
    b.Fit(genomes, losses);
    double mean = 0;
    for (double l : losses) mean += l / n;
    double mae = 0, mae_const = 0;
    for (size_t i = 0; i < n; ++i) {
      mae += std::abs(a.Predict(genomes[i]) - losses[i]);
      mae_const += std::abs(mean - losses[i]);
      EXPECT_EQ(a.Predict(genomes[i]), b.Predict(genomes[i]));
    }
    EXPECT_LE(mae, mae_const + 1e-12);
  }
}

TEST(ProposeTest, EpsilonOneIsUniform) {
  const ComponentSpace space = OneGene(4);
  Surrogate m(space);
  m.Fit({{0}, {1}, {2}, {3}}, {0.0, 1.0, 1.0, 1.0});
  Rng rng(4);
  const int n = 40000;
  std::vector<int> counts(4);
  for (int i = 0; i < n; ++i) counts[ProposeCandidate(m, space, rng, 500, 1.0)[0]]++;
  for (int c : counts) EXPECT_NEAR(c, n / 4.0, 3 * std::sqrt(n * 0.25 * 0.75));
}

TEST(ProposeTest, SingleSampleIsUniform) {
  const ComponentSpace space = OneGene(4);
  Surrogate m(space);
  m.Fit({{0}, {1}, {2}, {3}}, {0.0, 1.0, 1.0, 1.0});
  Rng rng(5);
  const int n = 40000;
  std::vector<int> counts(4);
  for (int i = 0; i < n; ++i) counts[ProposeCandidate(m, space, rng, 1, 0.1)[0]]++;
  for (int c : counts) EXPECT_NEAR(c, n / 4.0, 3 * std::sqrt(n * 0.25 * 0.75));
}

TEST(ProposeTest, PerfectSurrogateFindsTheBest) {
  const ComponentSpace space = OneGene(10);
  Surrogate m(space);
  std::vector<Genome> all;
  std::vector<double> losses;
  for (int i = 0; i < 10; ++i) {
    all.push_back({i});
    losses.push_back(std::abs(i - 6) / 10.0);  // best is 6
  }
  m.Fit(all, losses);
  Rng rng(6);
  const double epsilon = 0.1;
  const int n = 20000;
  int best = 0;
  for (int i = 0; i < n; ++i) best += ProposeCandidate(m, space, rng, 500, epsilon)[0] == 6;
  EXPECT_GE(double(best) / n, 1 - epsilon);
}

TEST(SearchHistoryTest, ArgMinEarliestOnTies) {
  SearchHistory h;
  EXPECT_THROW(h.ArgMin(), ArgumentError);
  for (double loss : {0.4, 0.1, 0.3, 0.1}) {
    HistoryEntry e;
    e.loss = loss;
    h.Append(e);
  }
  EXPECT_EQ(h.ArgMin(), 1u);
}

TEST(SmboSearchTest, ContractsUnderEvaluationBudgets) {
  const ComponentSpace space = DefaultCashSpace();
  const DataSplit s = MetaSplit(Separable(), 0.3, 7);
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    BudgetClock budget = BudgetClock::Evaluations(12);
    const SearchResult r = SmboSearch(space, s.train, budget, CashParams{}, seed);
    ASSERT_EQ(r.history.size(), 12u);
    EXPECT_EQ(budget.evaluations(), 12);
    // Replay: the result is the exact argmin entry.
    size_t best = 0;
    for (size_t i = 0; i < r.history.size(); ++i) {
      EXPECT_TRUE(space.Valid(r.history.entries()[i].genome));
      if (r.history.entries()[i].loss < r.history.entries()[best].loss) best = i;
    }
    EXPECT_EQ(r.best_index, best);
    EXPECT_EQ(r.best, r.history.entries()[best].config);
    EXPECT_EQ(r.best, DecodeCash(space, r.best_genome));
  }
}

TEST(SmboSearchTest, ExpiredBudgetEvaluatesExactlyOne) {
  const ComponentSpace space = DefaultCashSpace();
  BudgetClock budget = BudgetClock::Seconds(0);
  const SearchResult r = SmboSearch(space, Separable(), budget, CashParams{}, 1);
  EXPECT_EQ(r.history.size(), 1u);
  EXPECT_EQ(r.best_index, 0u);
}

TEST(SmboSearchTest, ReproducibleFromSeedAndCount) {
  const ComponentSpace space = DefaultCashSpace();
  const DataSplit s = MetaSplit(Separable(), 0.3, 8);
  BudgetClock a = BudgetClock::Evaluations(10), b = BudgetClock::Evaluations(10);
  const SearchResult x = SmboSearch(space, s.train, a, CashParams{}, 3);
  const SearchResult y = SmboSearch(space, s.train, b, CashParams{}, 3);
  for (size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(x.history.entries()[i].genome, y.history.entries()[i].genome);
    EXPECT_EQ(x.history.entries()[i].loss, y.history.entries()[i].loss);
  }
}

TEST(RandomSearchTest, EqualsSmboWithEpsilonOne) {
  const ComponentSpace space = DefaultCashSpace();
  const DataSplit s = MetaSplit(Separable(), 0.3, 9);
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    CashParams p;
    p.epsilon = 1.0;
    BudgetClock a = BudgetClock::Evaluations(15), b = BudgetClock::Evaluations(15);
    const SearchResult smbo = SmboSearch(space, s.train, a, p, seed);
    const SearchResult rnd = RandomSearch(space, s.train, b, CashParams{}, seed);
    ASSERT_EQ(smbo.history.size(), rnd.history.size());
    for (size_t i = 0; i < smbo.history.size(); ++i) {
      EXPECT_EQ(smbo.history.entries()[i].genome, rnd.history.entries()[i].genome);
      EXPECT_EQ(smbo.history.entries()[i].config, rnd.history.entries()[i].config);
      EXPECT_EQ(smbo.history.entries()[i].loss, rnd.history.entries()[i].loss);
    }
  }
}

TEST(RandomSearchTest, BestOfNIsNonIncreasing) {
  const ComponentSpace space = DefaultCashSpace();
  const DataSplit s = MetaSplit(Separable(), 0.3, 10);
  const int max_n = 12, seeds = 20;
  std::vector<double> mean_best(max_n, 0.0);
  for (int seed = 0; seed < seeds; ++seed) {
    BudgetClock budget = BudgetClock::Evaluations(max_n);
    const SearchResult r = RandomSearch(space, s.train, budget, CashParams{}, seed);
    double best = 1.0;
    for (int n = 0; n < max_n; ++n) {
      best = std::min(best, r.history.entries()[n].loss);
      mean_best[n] += best / seeds;
    }
    // A shorter budget replays a prefix of the same history.
    BudgetClock shorter = BudgetClock::Evaluations(5);
    const SearchResult p = RandomSearch(space, s.train, shorter, CashParams{}, seed);
    for (size_t i = 0; i < 5; ++i) {
      EXPECT_EQ(p.history.entries()[i].genome, r.history.entries()[i].genome);
    }
  }
  for (int n = 1; n < max_n; ++n) EXPECT_LE(mean_best[n], mean_best[n - 1]);
}

TEST(SmboSearchTest, TimeoutsAreFlaggedAsWorstLoss) {
  const ComponentSpace space = DefaultCashSpace();
  CashParams p;
  p.evaluation_timeout_s = 0.0;
  BudgetClock budget = BudgetClock::Evaluations(3);
  const SearchResult r = SmboSearch(space, Separable(), budget, p, 1);
  for (const HistoryEntry& e : r.history.entries()) {
    EXPECT_TRUE(e.timed_out);
    EXPECT_EQ(e.loss, 1.0);
  }
}

TEST(SmboSearchTest, InnerFoldsAverageLoss) {
  const ComponentSpace space = DefaultCashSpace();
  CashParams p;
  p.inner_k = 3;
  BudgetClock budget = BudgetClock::Evaluations(2);
  const SearchResult r = SmboSearch(space, Separable(), budget, p, 2);
  for (const HistoryEntry& e : r.history.entries()) {
    EXPECT_NEAR(e.loss, 1 - e.metrics.accuracy, 1e-12);
  }
}

TEST(SmboSearchTest, BeatsRandomSearchAtEqualEvaluationCount) {
  const ComponentSpace space = DefaultCashSpace();
  int at_least_as_good = 0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    const DataSplit s = MetaSplit(Separable(), 0.3, 100 + t);
    BudgetClock a = BudgetClock::Evaluations(20), b = BudgetClock::Evaluations(20);
    const SearchResult smbo = SmboSearch(space, s.train, a, CashParams{}, t);
    const SearchResult rnd = RandomSearch(space, s.train, b, CashParams{}, t);
    const double e_smbo = Loss(smbo.best, s.train, s.valid, 1);
    const double e_rnd = Loss(rnd.best, s.train, s.valid, 1);
    at_least_as_good += e_smbo <= e_rnd;
  }
  EXPECT_GE(at_least_as_good, 35) << at_least_as_good << " / " << trials;
}

TEST(SearchHistoryTest, CsvLeavesInertGenesBlank) {
  const ComponentSpace space = DefaultCashSpace();
  BudgetClock budget = BudgetClock::Evaluations(3);
  const SearchResult r = SmboSearch(space, Separable(), budget, CashParams{}, 4);
  const std::string csv = r.history.ToCsv(space);
  EXPECT_EQ(csv.substr(0, 26), "iteration,family,family,tr");
  size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  EXPECT_EQ(lines, 4u);
}

}  // namespace
}  // namespace hyperdt
