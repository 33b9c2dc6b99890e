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

// Acceptance suite: one PASS/FAIL line per criterion. With
// `--criterion N` only that criterion runs. Exit status 1 when any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hyperdt/arff.h"
#include "hyperdt/cash.h"
#include "hyperdt/dtree.h"
#include "hyperdt/evolution.h"
#include "hyperdt/metrics.h"
#include "hyperdt/runner.h"
#include "hyperdt/split_criteria.h"
#include "hyperdt/stats.h"
#include "oracles.h"
#include "test_util.h"

namespace hyperdt {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures; the first few are kept for the report line.
class Check {
 public:
  void operator()(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ < 3) detail_ += (detail_.empty() ? "" : "; ") + what;
  }
  Outcome Result(const std::string& summary) const {
    if (failures_ == 0) return {true, summary};
    return {false, std::to_string(failures_) + " failure(s): " + detail_};
  }

 private:
  int failures_ = 0;
  std::string detail_;
};

std::string F3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string Join3(const std::vector<double>& v) {
  std::string out;
  for (double x : v) out += (out.empty() ? "" : ", ") + F3(x);
  return "(" + out + ")";
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

ResultMatrix Fixture(const std::string& name) {
  return ParseResultMatrix(ReadTextFile(testing::DataPath("fixtures/" + name + ".csv")));
}

Outcome TableFiveReplay() {
  const auto start = std::chrono::steady_clock::now();
  const ResultMatrix m = Fixture("table5_gmean_1000s");
  const std::vector<double> ranks = RankRows(m).average;
  std::vector<double> means;
  for (int j = 0; j < m.k(); ++j) {
    double s = 0;
    for (double v : m.Column(j)) s += v;
    means.push_back(s / m.n());
  }
  const double elapsed = Seconds(start);
  Check check;
  check(ranks == std::vector<double>{2, 2, 4, 2}, "ranks " + Join3(ranks));
  const double published[] = {0.776, 0.774, 0.523, 0.775};
  for (int j = 0; j < 4; ++j) {
    check(std::abs(means[j] - published[j]) <= 0.0005 + 1e-12,
          m.methods[j] + " mean " + std::to_string(means[j]));
  }
  check(elapsed < 1.0, "took " + std::to_string(elapsed) + "s");
  return check.Result("ranks " + Join3(ranks) + ", means " + Join3(means) +
                      " within 0.0005, " + std::to_string(elapsed * 1e3).substr(0, 5) + " ms");
}

Outcome FooterReplay() {
  const std::pair<const char*, std::vector<std::string>> tables[] = {
      {"table6_gmean_10000s", {"2.050", "2.100", "3.850", "2.000"}},
      {"table7_accuracy_1000s", {"2.150", "2.025", "4.000", "1.825"}},
      {"table8_accuracy_10000s", {"2.150", "2.050", "3.950", "1.850"}}};
  Check check;
  std::string summary;
  for (const auto& [name, printed] : tables) {
    std::vector<std::string> got;
    for (double r : RankRows(Fixture(name)).average) got.push_back(F3(r));
    std::string text;
    for (const std::string& g : got) text += (text.empty() ? "" : ", ") + g;
    check(got == printed, std::string(name) + " replayed (" + text + ")");
    summary += (summary.empty() ? "" : ", ") + std::string(name) + " (" + text + ")";
  }
  return check.Result(summary);
}

Outcome NemenyiConclusion() {
  Check check;
  const double cd = NemenyiCD(4, 20, 0.05);
  check(std::abs(cd - 1.049) <= 0.005, "CD " + std::to_string(cd));
  for (const char* name : {"table5_gmean_1000s", "table7_accuracy_1000s"}) {
    const ResultMatrix m = Fixture(name);
    const std::vector<double> ranks = RankRows(m).average;
    const auto sig = PairwiseSignificance(ranks, cd);
    const int ggp = m.MethodIndex("GGP-RI");
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        const bool expected = i == ggp || j == ggp;
        check(sig[i][j] == expected, std::string(name) + " " + m.methods[i] + " vs " +
                                         m.methods[j] + (sig[i][j] ? " flagged" : " not flagged"));
      }
    }
  }
  return check.Result("CD " + F3(cd) + "; only GGP-RI differs on tables 5 and 7");
}

Outcome FriedmanFooter() {
  const std::vector<double> ranks = RankRows(Fixture("table5_gmean_1000s")).average;
  const FriedmanResult f = Friedman(ranks, 20);
  Check check;
  check(std::abs(f.chi2_f - 36.0) <= 1e-9, "chi2_F " + std::to_string(f.chi2_f));
  check(std::abs(f.f_f - 28.5) <= 1e-9, "F_F " + std::to_string(f.f_f));
  std::ostringstream s;
  s << "chi2_F " << f.chi2_f << ", F_F " << f.f_f << ", df (" << f.df1 << ", " << f.df2 << ")";
  return check.Result(s.str());
}

Outcome WinCounts() {
  const std::pair<const char*, WinCount> expected[] = {
      {"table9_accuracy_1000s", {18, 21, 1}},
      {"table9_accuracy_10000s", {17, 23, 0}},
      {"table10_gmean_1000s", {24, 16, 0}},
      {"table10_gmean_10000s", {21, 19, 0}}};
  Check check;
  std::string summary;
  for (const auto& [name, want] : expected) {
    const ResultMatrix m = Fixture(name);
    const WinCount w = CountWins(m.Column(0), m.Column(1), Direction::kHigherBetter, 3);
    const std::string text = std::to_string(w.wins_a) + "/" + std::to_string(w.wins_b);
    check(w.wins_a == want.wins_a && w.wins_b == want.wins_b, std::string(name) + " " + text);
    summary += (summary.empty() ? "" : ", ") + text;
  }
  return check.Result("wins " + summary);
}

Outcome WilcoxonDecisions() {
  Check check;
  std::string summary;
  for (const char* name : {"table9_accuracy_1000s", "table9_accuracy_10000s",
                           "table10_gmean_1000s", "table10_gmean_10000s"}) {
    const ResultMatrix m = Fixture(name);
    const WilcoxonResult w = Wilcoxon(m.Column(0), m.Column(1), 0.05);
    check(!w.reject && !w.no_decision, std::string(name) + " p=" + std::to_string(w.p_value));
    summary += (summary.empty() ? "p " : ", ") + F3(w.p_value);
  }
  // Exact branch against sign enumeration for every n <= 12.
  Rng rng(12);
  int cases = 0;
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 50; ++trial, ++cases) {
      std::vector<double> mag;
      for (int i = 0; i < n; ++i) mag.push_back(1 + rng.UniformIndex(5));
      std::vector<double> ranks;
      for (double x : mag) {
        double below = 0, equal = 0;
        for (double o : mag) {
          below += o < x;
          equal += o == x;
        }
        ranks.push_back(below + (equal + 1) / 2);
      }
      std::vector<int> signs;
      double plus = 0, minus = 0;
      for (int i = 0; i < n; ++i) {
        signs.push_back(rng.Bernoulli(0.5) ? 1 : -1);
        (signs.back() > 0 ? plus : minus) += ranks[i];
      }
      const double w = std::min(plus, minus);
      int at_most = 0;
      for (int mask = 0; mask < (1 << n); ++mask) {
        double t = 0;
        for (int i = 0; i < n; ++i) {
          if (mask >> i & 1) t += ranks[i];
        }
        at_most += t <= w + 1e-9;
      }
      const double enumerated = std::min(1.0, 2.0 * at_most / (1 << n));
      const double dp = std::min(1.0, 2 * SignedRankCdf(ranks, w));
      check(std::abs(dp - enumerated) < 1e-12, "n=" + std::to_string(n) + " exact p mismatch");
      if (n >= 5) {
        std::vector<double> a, zero(n, 0.0);
        for (int i = 0; i < n; ++i) a.push_back(signs[i] * mag[i]);
        const WilcoxonResult r = Wilcoxon(a, zero);
        check(r.exact && std::abs(r.p_value - enumerated) < 1e-12,
              "n=" + std::to_string(n) + " Wilcoxon p mismatch");
      }
    }
  }
  return check.Result(summary + " (none reject at 0.05); exact p equals enumeration on " +
                      std::to_string(cases) + " cases, n <= 12");
}

Outcome OverfitGaps() {
  auto gap = [](double search, double test) {
    RunRecord r;
    r.search.gmean = search;
    r.test.gmean = test;
    const std::vector<RunRecord> one = {r};
    return MetaOverfitGap(one, Metric::kGMean).gap;
  };
  const double head = gap(0.756, 0.770), autoweka = gap(0.896, 0.757);
  Check check;
  check(F3(head) == "-0.014", "HEAD-DT-style gap " + F3(head));
  check(F3(autoweka) == "0.139", "Auto-WEKA-style gap " + F3(autoweka));
  return check.Result("gaps " + F3(head) + " and +" + F3(autoweka));
}

Outcome EvolutionProperties() {
  const auto start = std::chrono::steady_clock::now();
  const ComponentSpace space = DefaultTreeSpace();
  Rng rng(8);
  Check check;
  int windows_checked = 0;
  for (int run = 0; run < 200; ++run) {
    const Dataset ds = testing::RandomDataset(rng, 30 + rng.UniformIndex(40),
                                              1 + rng.UniformIndex(3), rng.UniformIndex(3),
                                              2 + rng.UniformIndex(2), 0.05);
    EvolutionParams p;
    p.population = 2 + rng.UniformIndex(9);
    p.generations = 1 + rng.UniformIndex(12);
    p.resample_every = 1 + rng.UniformIndex(4);
    p.elitism_rate = rng.Uniform01() * 0.3;
    p.inner_cv_k = 3;
    const int64_t limit = 1 + rng.UniformIndex(80);
    const uint64_t seed = rng.UniformIndex(1 << 20);
    BudgetClock b1 = BudgetClock::Evaluations(limit), b2 = BudgetClock::Evaluations(limit);
    const EvolutionResult r = Evolve(space, ds, p, b1, seed);
    const EvolutionResult again = Evolve(space, ds, p, b2, seed);
    const std::string id = "run " + std::to_string(run);
    for (size_t i = 1; i < r.trace.size(); ++i) {
      if (r.trace[i].window != r.trace[i - 1].window) continue;
      ++windows_checked;
      check(r.trace[i].best_f >= r.trace[i - 1].best_f, id + " elite fitness dropped");
    }
    const int s = p.resample_every;
    check(r.best_set.size() == static_cast<size_t>((r.completed_generations + s - 1) / s),
          id + " |BestSet| " + std::to_string(r.best_set.size()));
    check(r.population.size() == static_cast<size_t>(p.population), id + " population size");
    bool same = r.best_genome == again.best_genome && r.trace.size() == again.trace.size();
    for (size_t i = 0; same && i < r.trace.size(); ++i) {
      same = r.trace[i].best_f == again.trace[i].best_f && r.trace[i].mean_f == again.trace[i].mean_f;
    }
    check(same, id + " not deterministic");
  }
  const double elapsed = Seconds(start);
  check(elapsed < 180, "suite took " + std::to_string(elapsed) + "s");
  return check.Result("200 runs: elitism monotone (" + std::to_string(windows_checked) +
                      " steps), |BestSet| exact, deterministic; " + F3(elapsed) + " s");
}

Outcome TreeAndMetricOracles() {
  Check check;
  Rng rng(9);
  const SplitCriterion all[] = {
      SplitCriterion::kInfoGain,   SplitCriterion::kGainRatio,
      SplitCriterion::kGiniGain,   SplitCriterion::kChiSquared,
      SplitCriterion::kGStatistic, SplitCriterion::kDkm,
      SplitCriterion::kNormalizedGain, SplitCriterion::kErrorReduction};
  for (int i = 0; i < 1000; ++i) {
    const testing::Table t = testing::RandomTable(rng, 2 + rng.UniformIndex(4));
    for (SplitCriterion c : all) {
      const double want = testing::SplitOracle(c, t);
      const double got = CriterionScore(c, testing::Parent(t), t);
      check(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)),
            ToString(c) + " table " + std::to_string(i));
    }
  }
  for (int i = 0; i < 500; ++i) {
    const int classes = 2 + rng.UniformIndex(2);
    const Dataset train = testing::RandomDataset(rng, 30 + rng.UniformIndex(50), 2, 2, classes, 0.1);
    const Dataset prune = testing::RandomDataset(rng, 5 + rng.UniformIndex(40), 2, 2, classes, 0.1);
    DTConfig cfg = testing::RandomConfig(rng);
    cfg.pruning = {Pruning::Kind::kReducedError, 0.25};
    const DecisionTree tree = BuildTree(cfg, train);
    const DecisionTree pruned = Prune(tree, cfg, prune);
    check(CountErrors(pruned, prune, cfg.missing_test) <= CountErrors(tree, prune, cfg.missing_test),
          "REP pair " + std::to_string(i));
  }
  for (int i = 0; i < 1000; ++i) {
    const ConfusionMatrix cm = testing::RandomMatrix(rng, 2 + rng.UniformIndex(5), 30);
    const testing::MetricOracle o = testing::BruteForce(cm);
    check(std::abs(GMean(cm) - o.gmean) <= 1e-12, "GMean matrix " + std::to_string(i));
    check(std::abs(FMeasure(cm) - o.fmeasure) <= 1e-12, "F matrix " + std::to_string(i));
  }
  return check.Result("8 criteria x 1000 tables at 1e-12, REP on 500 pairs, GMean/F on 1000 matrices");
}

Outcome EndToEnd() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig c;
  c.datasets = {testing::DataPath("separable300.arff")};
  c.methods = {Method::kEvolveDt, Method::kSmboCash, Method::kMajority};
  c.budgets = {5};
  c.outer_k = 5;
  c.seeds = {1, 2};
  const ExperimentResult r = RunExperiment(c);
  const ResultMatrix m = Aggregate(r.records, r.datasets, c.methods, 5, Metric::kAccuracy);
  const double evolve = m.values[0][0], smbo = m.values[0][1], majority = m.values[0][2];
  const double elapsed = Seconds(start);
  Check check;
  check(evolve >= 0.9 && evolve > majority, "evolve_dt accuracy " + F3(evolve));
  check(smbo >= 0.9 && smbo > majority, "smbo_cash accuracy " + F3(smbo));
  check(elapsed < 300, "took " + std::to_string(elapsed) + "s");
  double overshoot = 0;
  for (const RunRecord& rec : r.records) overshoot = std::max(overshoot, rec.elapsed_s - rec.budget_s);
  return check.Result("test accuracy evolve_dt " + F3(evolve) + ", smbo_cash " + F3(smbo) +
                      ", majority " + F3(majority) + "; max overshoot " + F3(overshoot) +
                      " s; " + F3(elapsed) + " s total");
}

Outcome SmboContract() {
  const ComponentSpace space = DefaultCashSpace();
  const Dataset ds = LoadDataset(testing::DataPath("separable300.arff"));
  Check check;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const DataSplit split = MetaSplit(ds, 0.3, seed);
    BudgetClock b = BudgetClock::Evaluations(15);
    const SearchResult s = SmboSearch(space, split.train, b, CashParams{}, seed);
    size_t argmin = 0;
    for (size_t i = 1; i < s.history.size(); ++i) {
      if (s.history.entries()[i].loss < s.history.entries()[argmin].loss) argmin = i;
    }
    check(s.best_index == argmin && s.best == s.history.entries()[argmin].config,
          "seed " + std::to_string(seed) + " not the argmin");
    CashParams eps1;
    eps1.epsilon = 1.0;
    BudgetClock b1 = BudgetClock::Evaluations(15), b2 = BudgetClock::Evaluations(15);
    const SearchResult x = SmboSearch(space, split.train, b1, eps1, seed);
    const SearchResult y = RandomSearch(space, split.train, b2, CashParams{}, seed);
    bool same = x.history.size() == y.history.size();
    for (size_t i = 0; same && i < x.history.size(); ++i) {
      same = x.history.entries()[i].genome == y.history.entries()[i].genome &&
             x.history.entries()[i].loss == y.history.entries()[i].loss;
    }
    check(same, "seed " + std::to_string(seed) + " histories differ");
  }
  return check.Result("argmin replay exact and eps=1 SMBO == random search on 10 seeds x 15 evaluations");
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace hyperdt

int main(int argc, char** argv) {
  using namespace hyperdt;
  const std::vector<Criterion> criteria = {
      {1, "table 5 replay", TableFiveReplay},
      {2, "tables 6/7/8 rank footers", FooterReplay},
      {3, "Nemenyi conclusion", NemenyiConclusion},
      {4, "Friedman statistic", FriedmanFooter},
      {5, "win counts", WinCounts},
      {6, "Wilcoxon", WilcoxonDecisions},
      {7, "meta-overfitting gaps", OverfitGaps},
      {8, "EA properties", EvolutionProperties},
      {9, "tree/metric oracles", TreeAndMetricOracles},
      {10, "end-to-end smoke", EndToEnd},
      {11, "SMBO contract", SmboContract},
  };
  int only = 0;
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) only = std::atoi(argv[2]);
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (only && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.title << ": "
              << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
