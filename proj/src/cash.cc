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

#include "hyperdt/cash.h"

#include <algorithm>
#include <sstream>

#include "hyperdt/config.h"
#include "hyperdt/errors.h"
#include "hyperdt/learners.h"

namespace hyperdt {

double Loss(const CashConfiguration& config, const Dataset& d_train,
            const Dataset& d_valid, uint64_t seed, const Deadline& deadline,
            MetricSet* metrics) {
  if (d_valid.empty()) throw ArgumentError("empty validation set");
  const auto model = TrainClassifier(config, d_train, seed, deadline);
  const std::vector<int> pred = model->PredictAll(d_valid);
  const MetricSet m =
      ComputeMetrics(Confusion(d_valid.labels(), pred, d_valid.num_classes()));
  if (metrics) *metrics = m;
  return 1.0 - m.accuracy;
}

size_t SearchHistory::ArgMin() const {
  if (entries_.empty()) throw ArgumentError("empty search history");
  size_t best = 0;
  for (size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].loss < entries_[best].loss) best = i;
  }
  return best;
}

std::string SearchHistory::ToCsv(const ComponentSpace& space) const {
  std::ostringstream out;
  out << "iteration,family";
  for (const Gene& g : space.genes()) out << ',' << g.name;
  out << ",loss,elapsed_s\n";
  for (size_t i = 0; i < entries_.size(); ++i) {
    const HistoryEntry& e = entries_[i];
    out << i + 1 << ',' << FamilyName(e.config);
    const std::vector<bool> active = space.Active(e.genome);
    for (int j = 0; j < space.num_genes(); ++j) {
      out << ',';
      if (!active[j]) continue;
      const Gene& g = space.gene(j);
      out << (g.numeric() ? FormatNumber(g.grid[e.genome[j]]) : g.labels[e.genome[j]]);
    }
    out << ',' << FormatNumber(e.loss) << ',' << FormatNumber(e.elapsed_s) << '\n';
  }
  return out.str();
}

Surrogate::Surrogate(const ComponentSpace& space) : space_(&space) {
  for (const Gene& g : space.genes()) {
    offsets_.push_back(num_features_);
    num_features_ += g.size();
  }
}

std::vector<uint8_t> Surrogate::Features(const Genome& g) const {
  std::vector<uint8_t> x(num_features_, 0);
  const std::vector<bool> active = space_->Active(g);
  for (size_t i = 0; i < g.size(); ++i) {
    if (active[i]) x[offsets_[i] + g[i]] = 1;
  }
  return x;
}

namespace {

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

constexpr int kMaxSurrogateDepth = 16;

}  // namespace

void Surrogate::Fit(const SearchHistory& history) {
  std::vector<Genome> genomes;
  std::vector<double> losses;
  for (const HistoryEntry& e : history.entries()) {
    genomes.push_back(e.genome);
    losses.push_back(e.loss);
  }
  Fit(genomes, losses);
}

void Surrogate::Fit(const std::vector<Genome>& genomes,
                    const std::vector<double>& losses) {
  if (genomes.empty() || genomes.size() != losses.size()) {
    throw ArgumentError("surrogate needs a non-empty history");
  }
  std::vector<std::vector<uint8_t>> x;
  x.reserve(genomes.size());
  for (const Genome& g : genomes) x.push_back(Features(g));
  std::vector<size_t> rows(genomes.size());
  for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  nodes_.clear();
  Grow(x, losses, std::move(rows), 0);
}

int Surrogate::Grow(const std::vector<std::vector<uint8_t>>& x,
                    const std::vector<double>& y, std::vector<size_t> rows,
                    int depth) {
  const int index = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  std::vector<double> ys;
  double sum = 0, sq = 0;
  for (size_t r : rows) {
    ys.push_back(y[r]);
    sum += y[r];
    sq += y[r] * y[r];
  }
  nodes_[index].value = Median(ys);
  const double n = static_cast<double>(rows.size());
  const double sse = sq - sum * sum / n;
  if (rows.size() < 2 || depth >= kMaxSurrogateDepth || sse <= 1e-12) return index;

  int best_feature = -1;
  double best_sse = sse - 1e-12;
  for (int f = 0; f < num_features_; ++f) {
    double s1 = 0, q1 = 0, n1 = 0;
    for (size_t r : rows) {
      if (x[r][f]) s1 += y[r], q1 += y[r] * y[r], n1 += 1;
    }
    if (n1 == 0 || n1 == n) continue;
    const double s0 = sum - s1, q0 = sq - q1, n0 = n - n1;
    const double split = (q1 - s1 * s1 / n1) + (q0 - s0 * s0 / n0);
    if (split < best_sse) {
      best_sse = split;
      best_feature = f;
    }
  }
  if (best_feature < 0) return index;
  std::vector<size_t> zero, one;
  for (size_t r : rows) (x[r][best_feature] ? one : zero).push_back(r);
  rows.clear();
  nodes_[index].feature = best_feature;
  const int z = Grow(x, y, std::move(zero), depth + 1);
  const int o = Grow(x, y, std::move(one), depth + 1);
  nodes_[index].zero = z;
  nodes_[index].one = o;
  return index;
}

double Surrogate::Predict(const Genome& g) const {
  if (nodes_.empty()) return 0.5;
  const std::vector<uint8_t> x = Features(g);
  int at = 0;
  while (nodes_[at].feature >= 0) {
    at = x[nodes_[at].feature] ? nodes_[at].one : nodes_[at].zero;
  }
  return nodes_[at].value;
}

size_t Surrogate::num_leaves() const {
  return static_cast<size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const Node& n) { return n.feature < 0; }));
}

Genome ProposeCandidate(const Surrogate& model, const ComponentSpace& space,
                        Rng& rng, int n_sample, double epsilon) {
  if (n_sample < 1) throw ArgumentError("n_sample must be at least 1");
  if (rng.Bernoulli(epsilon)) return RandomGenome(space, rng);
  Genome best = RandomGenome(space, rng);
  double best_loss = model.Predict(best);
  for (int i = 1; i < n_sample; ++i) {
    Genome g = RandomGenome(space, rng);
    const double p = model.Predict(g);
    if (p < best_loss) {
      best_loss = p;
      best = std::move(g);
    }
  }
  return best;
}

namespace {

// The internal train/validation sets every configuration is scored on.
struct InternalEvaluation {
  std::vector<std::pair<Dataset, Dataset>> splits;

  InternalEvaluation(const Dataset& train, const CashParams& params, uint64_t seed) {
    if (params.inner_k >= 2) {
      const FoldPlan plan = StratifiedKFold(train, params.inner_k, seed);
      for (int f = 0; f < plan.k; ++f) {
        splits.emplace_back(train.Subset(plan.TrainRows(f)),
                            train.Subset(plan.TestRows(f)));
      }
    } else {
      const DataSplit s = MetaSplit(train, params.holdout_fraction, seed);
      splits.emplace_back(s.train, s.valid);
    }
  }

  double Evaluate(const CashConfiguration& config, uint64_t seed,
                  const Deadline& deadline, MetricSet* mean) const {
    MetricSet sum;
    double loss = 0;
    for (const auto& [tr, va] : splits) {
      MetricSet m;
      loss += Loss(config, tr, va, seed, deadline, &m);
      sum.accuracy += m.accuracy;
      sum.gmean += m.gmean;
      sum.fmeasure += m.fmeasure;
      sum.sens_weighted += m.sens_weighted;
      sum.spec_weighted += m.spec_weighted;
    }
    const double k = static_cast<double>(splits.size());
    *mean = {sum.accuracy / k, sum.gmean / k, sum.fmeasure / k,
             sum.sens_weighted / k, sum.spec_weighted / k};
    return loss / k;
  }
};

}  // namespace

SearchResult SmboSearch(const ComponentSpace& space, const Dataset& train,
                        BudgetClock& budget, const CashParams& params,
                        uint64_t seed) {
  if (train.empty()) throw ArgumentError("cannot search on an empty dataset");
  const InternalEvaluation eval(train, params, DeriveSeed(seed, 1));
  const uint64_t learner_seed = DeriveSeed(seed, 3);
  Rng rng(DeriveSeed(seed, 2));
  Surrogate model(space);
  SearchResult out;
  while (out.history.empty() || !budget.expired()) {
    HistoryEntry e;
    e.genome = ProposeCandidate(model, space, rng, params.n_sample, params.epsilon);
    e.config = DecodeCash(space, e.genome);
    const Clock::time_point start = Clock::now();
    const Deadline deadline =
        params.evaluation_timeout_s
            ? Deadline::After(std::chrono::duration<double>(*params.evaluation_timeout_s))
            : Deadline();
    try {
      e.loss = eval.Evaluate(e.config, learner_seed, deadline, &e.metrics);
    } catch (const EvaluationTimeout&) {
      e.loss = 1.0;
      e.metrics = MetricSet{};
      e.timed_out = true;
    }
    e.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    out.history.Append(std::move(e));
    budget.Charge();
    if (params.refit_surrogate) model.Fit(out.history);
  }
  out.best_index = out.history.ArgMin();
  out.best_genome = out.history.entries()[out.best_index].genome;
  out.best = out.history.entries()[out.best_index].config;
  return out;
}

SearchResult RandomSearch(const ComponentSpace& space, const Dataset& train,
                          BudgetClock& budget, const CashParams& params,
                          uint64_t seed) {
  CashParams p = params;
  p.epsilon = 1.0;
  p.refit_surrogate = false;
  return SmboSearch(space, train, budget, p, seed);
}

}  // namespace hyperdt
