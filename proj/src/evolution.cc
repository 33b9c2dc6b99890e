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

#include "hyperdt/evolution.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "hyperdt/config.h"
#include "hyperdt/errors.h"

namespace hyperdt {

int EvolutionParams::EliteCount() const {
  return std::max(1, static_cast<int>(std::lround(elitism_rate * population)));
}

void EvolutionParams::Validate() const {
  auto rate = [](double r, const char* name) {
    if (!(r >= 0 && r <= 1)) throw ArgumentError(std::string(name) + " must be in [0, 1]");
  };
  rate(elitism_rate, "elitism_rate");
  rate(crossover_rate, "crossover_rate");
  rate(mutation_rate, "mutation_rate");
  if (population < 1) throw ArgumentError("population must be positive");
  if (generations < 1) throw ArgumentError("generations must be positive");
  if (resample_every < 1) throw ArgumentError("resample_every must be positive");
  if (tournament_k < 1) throw ArgumentError("tournament_k must be positive");
  if (!(valid_fraction > 0 && valid_fraction < 1)) {
    throw ArgumentError("valid_fraction must be in (0, 1)");
  }
  if (inner_cv_k < 2) throw ArgumentError("inner_cv_k must be at least 2");
  if (EliteCount() > population) throw ArgumentError("elite count exceeds population");
  if (evaluation_timeout_s && *evaluation_timeout_s < 0) {
    throw ArgumentError("evaluation timeout must be non-negative");
  }
  if (workers < 1) throw ArgumentError("workers must be positive");
}

FitnessResult Fitness(const DTConfig& cfg, const Dataset& meta_train,
                      const Dataset& meta_valid, uint64_t seed,
                      const Deadline& deadline) {
  if (meta_valid.empty()) throw ArgumentError("empty meta-validation set");
  try {
    deadline.Check();
    const DecisionTree tree = TrainTreeAlgorithm(cfg, meta_train, seed, deadline);
    const std::vector<int> pred = tree.PredictAll(meta_valid, cfg.missing_test);
    deadline.Check();
    FitnessResult out;
    out.metrics = ComputeMetrics(Confusion(meta_valid.labels(), pred, meta_valid.num_classes()));
    out.fitness = out.metrics.fmeasure;
    return out;
  } catch (const EvaluationTimeout&) {
    return {0.0, true, MetricSet{}};
  }
}

size_t TournamentSelect(std::span<const double> fitness, int k, Rng& rng) {
  if (fitness.empty()) throw ArgumentError("tournament over an empty population");
  if (k < 1) throw ArgumentError("tournament size must be positive");
  size_t best = rng.UniformIndex(fitness.size());
  for (int i = 1; i < k; ++i) {
    const size_t c = rng.UniformIndex(fitness.size());
    if (fitness[c] > fitness[best]) best = c;
  }
  return best;
}

std::string EvolutionResult::TraceCsv() const {
  std::ostringstream out;
  out << "generation,best_f,mean_f,elapsed_s\n";
  for (const TraceRow& r : trace) {
    out << r.generation << ',' << FormatNumber(r.best_f) << ','
        << FormatNumber(r.mean_f) << ',' << FormatNumber(r.elapsed_s) << '\n';
  }
  return out.str();
}

namespace {

size_t Fittest(const std::vector<Individual>& pop) {
  size_t best = 0;
  for (size_t i = 1; i < pop.size(); ++i) {
    if (pop[i].fitness > pop[best].fitness) best = i;
  }
  return best;
}

class Evaluator {
 public:
  Evaluator(const ComponentSpace& space, const EvolutionParams& params,
            BudgetClock& budget)
      : space_(space), params_(params), budget_(budget) {}

  void SetWindow(const Dataset& train, uint64_t split_seed, uint64_t eval_seed) {
    split_ = MetaSplit(train, params_.valid_fraction, split_seed);
    eval_seed_ = eval_seed;
  }

  // Evaluates pop[i] for every flagged i. With check_budget the budget is
  // consulted before each evaluation; returns false if it ran out.
  bool Run(std::vector<Individual>& pop, const std::vector<bool>& pending,
           bool check_budget) {
    std::atomic<size_t> next{0};
    std::atomic<bool> complete{true};
    auto work = [&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= pop.size() || !complete.load()) return;
        if (!pending[i]) continue;
        if (check_budget && budget_.expired()) {
          complete.store(false);
          return;
        }
        Evaluate(pop[i]);
        budget_.Charge();
      }
    };
    const int workers = std::min<int>(params_.workers, pop.size());
    if (workers <= 1) {
      work();
    } else {
      std::vector<std::thread> threads;
      for (int w = 0; w < workers; ++w) threads.emplace_back(work);
      for (std::thread& t : threads) t.join();
    }
    return complete.load();
  }

 private:
  void Evaluate(Individual& ind) const {
    const Deadline deadline =
        params_.evaluation_timeout_s
            ? Deadline::After(std::chrono::duration<double>(*params_.evaluation_timeout_s))
            : Deadline();
    const FitnessResult r = Fitness(DecodeTree(space_, ind.genome), split_.train,
                                    split_.valid, eval_seed_, deadline);
    ind.fitness = r.fitness;
    ind.timed_out = r.timed_out;
  }

  const ComponentSpace& space_;
  const EvolutionParams& params_;
  BudgetClock& budget_;
  DataSplit split_;
  uint64_t eval_seed_ = 0;
};

}  // namespace

EvolutionResult Evolve(const ComponentSpace& space, const Dataset& train,
                       const EvolutionParams& params, BudgetClock& budget,
                       uint64_t seed) {
  params.Validate();
  const Clock::time_point start = Clock::now();
  const uint64_t split_stream = DeriveSeed(seed, 1);
  const uint64_t eval_stream = DeriveSeed(seed, 2);
  Rng rng(DeriveSeed(seed, 3));
  Evaluator evaluator(space, params, budget);
  int window = 0;
  evaluator.SetWindow(train, DeriveSeed(split_stream, 0), DeriveSeed(eval_stream, 0));

  EvolutionResult out;
  const int64_t charged_before = budget.evaluations();
  auto record = [&](const std::vector<Individual>& pop) {
    TraceRow row;
    row.generation = out.completed_generations;
    row.window = window;
    row.best_f = pop[Fittest(pop)].fitness;
    for (const Individual& ind : pop) row.mean_f += ind.fitness / pop.size();
    row.elapsed_s = std::chrono::duration<double>(Clock::now() - start).count();
    out.trace.push_back(row);
  };
  auto archive = [&](const std::vector<Individual>& pop) {
    const Individual& best = pop[Fittest(pop)];
    out.best_set.push_back({best.genome, best.fitness, out.completed_generations});
  };

  std::vector<Individual> pop(params.population);
  for (Individual& ind : pop) ind.genome = RandomGenome(space, rng);
  evaluator.Run(pop, std::vector<bool>(pop.size(), true), false);
  out.completed_generations = 1;
  record(pop);
  bool resampled = false;
  auto end_of_generation = [&] {
    resampled = out.completed_generations % params.resample_every == 0;
    if (!resampled) return;
    archive(pop);
    ++window;
    evaluator.SetWindow(train, DeriveSeed(split_stream, window),
                        DeriveSeed(eval_stream, window));
  };
  end_of_generation();

  const int elites = params.EliteCount();
  while (out.completed_generations < params.generations && !budget.expired()) {
    std::vector<size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return pop[a].fitness > pop[b].fitness;
    });
    std::vector<Individual> next;
    std::vector<bool> pending;
    for (int e = 0; e < elites; ++e) {
      next.push_back(pop[order[e]]);
      pending.push_back(resampled);
    }
    std::vector<double> fitness;
    for (const Individual& ind : pop) fitness.push_back(ind.fitness);
    while (static_cast<int>(next.size()) < params.population) {
      const Genome& a = pop[TournamentSelect(fitness, params.tournament_k, rng)].genome;
      const Genome& b = pop[TournamentSelect(fitness, params.tournament_k, rng)].genome;
      std::pair<Genome, Genome> children{a, b};
      if (rng.Bernoulli(params.crossover_rate)) children = Crossover(space, a, b, rng);
      for (Genome* child : {&children.first, &children.second}) {
        if (static_cast<int>(next.size()) == params.population) break;
        next.push_back({Mutate(space, *child, params.mutation_rate, rng), 0, false});
        pending.push_back(true);
      }
    }
    if (!evaluator.Run(next, pending, true)) break;
    pop = std::move(next);
    ++out.completed_generations;
    record(pop);
    end_of_generation();
  }
  if (!resampled) archive(pop);
  out.population = pop;
  out.evaluations = budget.evaluations() - charged_before;

  const BestSetChoice choice = SelectFromBestSet(space, out.best_set, train,
                                                 params.inner_cv_k, DeriveSeed(seed, 4));
  out.best_genome = out.best_set[choice.index].genome;
  out.best_metrics = choice.metrics[choice.index];
  out.best = DecodeTree(space, out.best_genome);
  return out;
}

BestSetChoice SelectFromBestSet(const ComponentSpace& space,
                                std::span<const BestSetEntry> best_set,
                                const Dataset& train, int inner_cv_k,
                                uint64_t seed) {
  if (best_set.empty()) throw ArgumentError("empty BestSet");
  BestSetChoice out;
  const int k = std::min<int>(inner_cv_k, train.num_rows());
  out.folds = StratifiedKFold(train, k, seed);
  std::vector<DataSplit> folds;
  for (int f = 0; f < k; ++f) {
    const std::vector<size_t> tr = out.folds.TrainRows(f), te = out.folds.TestRows(f);
    folds.push_back({train.Subset(tr), train.Subset(te)});
  }
  for (const BestSetEntry& entry : best_set) {
    const DTConfig cfg = DecodeTree(space, entry.genome);
    double sum = 0;
    MetricSet mean;
    for (int f = 0; f < k; ++f) {
      const FitnessResult r =
          Fitness(cfg, folds[f].train, folds[f].valid, DeriveSeed(seed, f + 1));
      sum += r.fitness;
      mean.accuracy += r.metrics.accuracy / k;
      mean.gmean += r.metrics.gmean / k;
      mean.fmeasure += r.metrics.fmeasure / k;
      mean.sens_weighted += r.metrics.sens_weighted / k;
      mean.spec_weighted += r.metrics.spec_weighted / k;
    }
    out.scores.push_back(sum / k);
    out.metrics.push_back(mean);
  }
  out.index = std::max_element(out.scores.begin(), out.scores.end()) - out.scores.begin();
  return out;
}

}  // namespace hyperdt
