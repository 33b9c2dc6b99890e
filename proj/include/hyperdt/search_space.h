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

#ifndef HYPERDT_SEARCH_SPACE_H_
#define HYPERDT_SEARCH_SPACE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hyperdt/dtree.h"
#include "hyperdt/random.h"

namespace hyperdt {

// One position of a genome: either a categorical domain (labels) or a
// numeric grid. A gene with a condition only matters when the named parent
// gene is active and holds one of `values`; otherwise it is inert.
struct Gene {
  struct Condition {
    std::string gene;
    std::vector<std::string> values;
    bool operator==(const Condition&) const = default;
  };

  std::string name;
  std::vector<std::string> labels;
  std::vector<double> grid;
  std::optional<Condition> condition;

  bool numeric() const { return !grid.empty(); }
  int size() const {
    return static_cast<int>(numeric() ? grid.size() : labels.size());
  }
  bool operator==(const Gene&) const = default;
};

// Genome value i is an index into gene i's domain.
using Genome = std::vector<int>;

class ComponentSpace {
 public:
  ComponentSpace() = default;
  // Throws ArgumentError on empty domains, duplicate names, or conditions
  // that name a later or unknown gene.
  explicit ComponentSpace(std::vector<Gene> genes);

  const std::vector<Gene>& genes() const { return genes_; }
  const Gene& gene(int i) const { return genes_[i]; }
  int num_genes() const { return static_cast<int>(genes_.size()); }
  // -1 when absent.
  int IndexOf(std::string_view name) const;

  bool Valid(const Genome& g) const;
  // Per gene: false when its condition chain does not hold for `g`.
  std::vector<bool> Active(const Genome& g) const;
  // `g` with every inert gene reset to 0.
  Genome Canonical(const Genome& g) const;
  const std::string& Label(const Genome& g, std::string_view gene) const;
  double Value(const Genome& g, std::string_view gene) const;

  bool operator==(const ComponentSpace& other) const {
    return genes_ == other.genes_;
  }

 private:
  const Gene& Require(std::string_view name, int* index) const;

  std::vector<Gene> genes_;
  // Resolved conditions: parent gene index (-1: none) and, per parent
  // value, whether the condition holds.
  std::vector<int> parent_;
  std::vector<std::vector<bool>> enabled_by_;
};

// Product of domain sizes. ArgumentError if it overflows 64 bits.
uint64_t Cardinality(const ComponentSpace& space);

Genome RandomGenome(const ComponentSpace& space, Rng& rng);
// Uniform crossover: each gene swapped with probability 0.5. ArgumentError
// when either parent is not a valid genome of `space`.
std::pair<Genome, Genome> Crossover(const ComponentSpace& space,
                                    const Genome& a, const Genome& b, Rng& rng);
// Each gene resampled uniformly from its domain with probability `rate`.
Genome Mutate(const ComponentSpace& space, const Genome& g, double rate,
              Rng& rng);

// The default component space. Component genes (domain size):
//   criterion (8), arity (2), stop_rule (4), missing_train (3),
//   missing_test (3), pruning (5)
// and the parameter grids of the options that take one:
//   min_instances {1,2,4,8,16,32,64}   max_depth {2,3,4,5,6,8,10}
//   purity {0.80,0.85,0.90,0.95,0.99}  chi_square_p {0.01,0.05,0.10,0.25}
//   rep_fraction {0.25,0.20,0.33,0.50} pessimistic_cf {0.25,0.05,0.10,0.50}
//   cut_depth {2,3,4,5,6,8,10}
// The first value of every gene gives DTConfig{}.
ComponentSpace DefaultTreeSpace();
// Tree genes under `prefix` (e.g. "tree."), conditioned on `condition`.
std::vector<Gene> TreeGenes(const std::string& prefix,
                            const std::optional<Gene::Condition>& condition);

DTConfig DecodeTree(const ComponentSpace& space, const Genome& g,
                    const std::string& prefix = "");
// ArgumentError when a value is not in the space's domains.
Genome EncodeTree(const ComponentSpace& space, const DTConfig& cfg,
                  const std::string& prefix = "");

// Non-tree learner families of the CASH space.
struct NaiveBayesConfig {
  double alpha = 0.1;  // Laplace smoothing of nominal likelihoods
  bool operator==(const NaiveBayesConfig&) const = default;
};
struct KnnConfig {
  int k = 1;
  // Euclidean on standardized numerics plus overlap on nominals.
  std::string distance = "standardized_overlap";
  bool operator==(const KnnConfig&) const = default;
};
struct MajorityConfig {
  bool operator==(const MajorityConfig&) const = default;
};

using CashConfiguration =
    std::variant<DTConfig, NaiveBayesConfig, KnnConfig, MajorityConfig>;

// "component_tree", "naive_bayes", "knn" or "majority".
std::string FamilyName(const CashConfiguration& c);

// Root gene `family` over the four families, then tree.* genes,
// nb.alpha {0.1,0.2,0.3,0.4,0.5}, knn.k {1,3,5,7,11} and knn.distance.
ComponentSpace DefaultCashSpace();
CashConfiguration DecodeCash(const ComponentSpace& space, const Genome& g);
Genome EncodeCash(const ComponentSpace& space, const CashConfiguration& c);

// Key-value rendering: `family = <name>` followed by the family's
// parameters (a tree uses WriteConfig keys).
std::string WriteCashConfig(const CashConfiguration& c);
CashConfiguration ParseCashConfig(const std::string& text);

// Space definition file. Grammar, one entry per line, '#' comments:
//   base = tree | cash
//   <gene name> = <value>, <value>, ...
// Each gene line replaces that gene's domain, keeping its kind: labels for
// categorical genes (must be known option names), numbers for grids.
// ParseError (with line) on unknown genes, bad values or empty domains.
ComponentSpace ParseSpaceConfig(const std::string& text);

}  // namespace hyperdt

#endif  // HYPERDT_SEARCH_SPACE_H_
