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

#ifndef HYPERDT_EVOLUTION_H_
#define HYPERDT_EVOLUTION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperdt/budget.h"
#include "hyperdt/dataset.h"
#include "hyperdt/dtree.h"
#include "hyperdt/metrics.h"
#include "hyperdt/random.h"
#include "hyperdt/search_space.h"

namespace hyperdt {

struct EvolutionParams {
  int population = 100;
  int generations = 100;
  int resample_every = 5;  // s: generations per meta-split
  int tournament_k = 2;
  double elitism_rate = 0.05;
  double crossover_rate = 0.95;
  double mutation_rate = 0.05;  // per gene
  double valid_fraction = 0.3;
  int inner_cv_k = 5;
  // Individuals exceeding this get fitness 0 and are flagged.
  std::optional<double> evaluation_timeout_s;
  int workers = 1;

  // max(1, round(elitism_rate * population)).
  int EliteCount() const;
  // ArgumentError on out-of-range values.
  void Validate() const;
};

struct FitnessResult {
  double fitness = 0;  // weighted F-measure on meta_valid
  bool timed_out = false;
  MetricSet metrics;
};

// Trains the algorithm on meta_train (a reduced-error pruning set is carved
// from meta_train) and scores it on meta_valid. A passed deadline gives
// fitness 0 with the flag set.
FitnessResult Fitness(const DTConfig& cfg, const Dataset& meta_train,
                      const Dataset& meta_valid, uint64_t seed,
                      const Deadline& deadline = {});

// k uniform draws with replacement; the fittest draw wins, the earliest
// draw on ties. Returns the index of the winner.
size_t TournamentSelect(std::span<const double> fitness, int k, Rng& rng);

struct Individual {
  Genome genome;
  double fitness = 0;
  bool timed_out = false;
};

struct BestSetEntry {
  Genome genome;
  double fitness = 0;
  int generation = 0;  // completed generations when archived
};

struct TraceRow {
  int generation = 0;
  int window = 0;  // meta-split in use
  double best_f = 0;
  double mean_f = 0;
  double elapsed_s = 0;
};

struct EvolutionResult {
  Genome best_genome;
  DTConfig best;
  // Inner cross-validation metrics of the returned genome.
  MetricSet best_metrics;
  std::vector<BestSetEntry> best_set;
  std::vector<TraceRow> trace;
  // The last population evaluated, elites first.
  std::vector<Individual> population;
  int completed_generations = 0;
  int64_t evaluations = 0;

  // generation,best_f,mean_f,elapsed_s
  std::string TraceCsv() const;
};

// Generational loop over tree genomes of `space` (decoded with DecodeTree):
// elites are copied unchanged, the rest bred by tournament, crossover and
// mutation. The first population is always evaluated in full; afterwards
// the budget is checked before every evaluation and a generation cut short
// is dropped. Every resample_every generations the best individual is
// archived and a fresh meta-split drawn; the last population is archived at
// termination when that did not just happen. The output is chosen from the
// archive by SelectFromBestSet.
EvolutionResult Evolve(const ComponentSpace& space, const Dataset& train,
                       const EvolutionParams& params, BudgetClock& budget,
                       uint64_t seed);

struct BestSetChoice {
  size_t index = 0;
  std::vector<double> scores;  // mean weighted F per archived genome
  std::vector<MetricSet> metrics;  // fold-mean metrics per archived genome
  FoldPlan folds;                  // shared by every candidate
};

// Scores every archived genome on the same stratified folds of train
// (k clamped to the row count) and returns the best, earliest on ties. A
// single entry is still scored. ArgumentError on an empty archive.
BestSetChoice SelectFromBestSet(const ComponentSpace& space,
                                std::span<const BestSetEntry> best_set,
                                const Dataset& train, int inner_cv_k,
                                uint64_t seed);

}  // namespace hyperdt

#endif  // HYPERDT_EVOLUTION_H_
