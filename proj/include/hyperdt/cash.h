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

#ifndef HYPERDT_CASH_H_
#define HYPERDT_CASH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperdt/budget.h"
#include "hyperdt/dataset.h"
#include "hyperdt/metrics.h"
#include "hyperdt/random.h"
#include "hyperdt/search_space.h"

namespace hyperdt {

// 1 - accuracy of `config` trained on d_train and scored on d_valid.
// `metrics`, when given, receives the full metric set on d_valid.
double Loss(const CashConfiguration& config, const Dataset& d_train,
            const Dataset& d_valid, uint64_t seed, const Deadline& deadline = {},
            MetricSet* metrics = nullptr);

struct HistoryEntry {
  Genome genome;
  CashConfiguration config;
  double loss = 1;
  MetricSet metrics;  // internal evaluation (holdout or fold mean)
  double elapsed_s = 0;
  bool timed_out = false;
};

// Append-only record of evaluated configurations.
class SearchHistory {
 public:
  void Append(HistoryEntry e) { entries_.push_back(std::move(e)); }
  const std::vector<HistoryEntry>& entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  // Index of the minimal loss, earliest on ties. ArgumentError when empty.
  size_t ArgMin() const;
  // iteration,family,<one column per gene>,loss,elapsed_s; inert genes are
  // left blank.
  std::string ToCsv(const ComponentSpace& space) const;

 private:
  std::vector<HistoryEntry> entries_;
};

// Regression tree over one-hot genome features (one column per value of
// each active gene). Splits minimise the summed squared error; leaves
// predict the median loss. Predicts 0.5 until the first Fit.
class Surrogate {
 public:
  explicit Surrogate(const ComponentSpace& space);

  // ArgumentError on an empty history. Deterministic.
  void Fit(const SearchHistory& history);
  void Fit(const std::vector<Genome>& genomes, const std::vector<double>& losses);
  double Predict(const Genome& g) const;
  bool fitted() const { return !nodes_.empty(); }
  size_t num_leaves() const;

  std::vector<uint8_t> Features(const Genome& g) const;

 private:
  struct Node {
    int feature = -1;  // -1: leaf
    int zero = -1;     // child for feature == 0
    int one = -1;
    double value = 0.5;
  };
  int Grow(const std::vector<std::vector<uint8_t>>& x, const std::vector<double>& y,
           std::vector<size_t> rows, int depth);

  const ComponentSpace* space_;
  std::vector<int> offsets_;
  int num_features_ = 0;
  std::vector<Node> nodes_;
};

// With probability epsilon a uniform random genome; otherwise the genome
// with the lowest predicted loss among n_sample uniform draws (earliest on
// ties).
Genome ProposeCandidate(const Surrogate& model, const ComponentSpace& space,
                        Rng& rng, int n_sample, double epsilon);

struct CashParams {
  double epsilon = 0.1;
  int n_sample = 500;
  // Internal evaluation: a stratified holdout of this fraction, or the
  // mean over inner_k stratified folds when inner_k >= 2.
  double holdout_fraction = 0.25;
  int inner_k = 0;
  bool refit_surrogate = true;
  // Evaluations exceeding this are scored as loss 1 and flagged.
  std::optional<double> evaluation_timeout_s;
};

struct SearchResult {
  CashConfiguration best;
  Genome best_genome;
  size_t best_index = 0;
  SearchHistory history;
};

// Propose -> evaluate -> append -> refit until the budget expires (checked
// between evaluations, charged once per evaluation). At least one
// configuration is always evaluated.
SearchResult SmboSearch(const ComponentSpace& space, const Dataset& train,
                        BudgetClock& budget, const CashParams& params,
                        uint64_t seed);
// SmboSearch with epsilon = 1 and no surrogate refits.
SearchResult RandomSearch(const ComponentSpace& space, const Dataset& train,
                          BudgetClock& budget, const CashParams& params,
                          uint64_t seed);

}  // namespace hyperdt

#endif  // HYPERDT_CASH_H_
