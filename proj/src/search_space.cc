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

#include "hyperdt/search_space.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "hyperdt/config.h"
#include "hyperdt/errors.h"

namespace hyperdt {

ComponentSpace::ComponentSpace(std::vector<Gene> genes) : genes_(std::move(genes)) {
  std::set<std::string> names;
  for (size_t i = 0; i < genes_.size(); ++i) {
    const Gene& g = genes_[i];
    if (g.size() == 0) throw ArgumentError("gene '" + g.name + "' has no values");
    if (!g.labels.empty() && !g.grid.empty()) {
      throw ArgumentError("gene '" + g.name + "' is both categorical and numeric");
    }
    if (!names.insert(g.name).second) {
      throw ArgumentError("duplicate gene '" + g.name + "'");
    }
    parent_.push_back(-1);
    enabled_by_.emplace_back();
    if (!g.condition) continue;
    const int parent = IndexOf(g.condition->gene);
    if (parent < 0 || parent >= static_cast<int>(i)) {
      throw ArgumentError("gene '" + g.name + "' depends on '" +
                          g.condition->gene + "', which is not declared before it");
    }
    const Gene& pg = genes_[parent];
    parent_.back() = parent;
    for (int v = 0; v < pg.size(); ++v) {
      const std::string value = pg.numeric() ? FormatNumber(pg.grid[v]) : pg.labels[v];
      const auto& allowed = g.condition->values;
      enabled_by_.back().push_back(
          std::find(allowed.begin(), allowed.end(), value) != allowed.end());
    }
  }
}

int ComponentSpace::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < genes_.size(); ++i) {
    if (genes_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool ComponentSpace::Valid(const Genome& g) const {
  if (g.size() != genes_.size()) return false;
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i] < 0 || g[i] >= genes_[i].size()) return false;
  }
  return true;
}

std::vector<bool> ComponentSpace::Active(const Genome& g) const {
  std::vector<bool> active(genes_.size(), true);
  for (size_t i = 0; i < genes_.size(); ++i) {
    const int parent = parent_[i];
    if (parent >= 0) active[i] = active[parent] && enabled_by_[i][g[parent]];
  }
  return active;
}

Genome ComponentSpace::Canonical(const Genome& g) const {
  const std::vector<bool> active = Active(g);
  Genome out = g;
  for (size_t i = 0; i < out.size(); ++i) {
    if (!active[i]) out[i] = 0;
  }
  return out;
}

const Gene& ComponentSpace::Require(std::string_view name, int* index) const {
  *index = IndexOf(name);
  if (*index < 0) throw ArgumentError("space has no gene '" + std::string(name) + "'");
  return genes_[*index];
}

const std::string& ComponentSpace::Label(const Genome& g,
                                         std::string_view name) const {
  int i;
  const Gene& gene = Require(name, &i);
  if (gene.numeric()) throw ArgumentError("gene '" + gene.name + "' is numeric");
  return gene.labels[g[i]];
}

double ComponentSpace::Value(const Genome& g, std::string_view name) const {
  int i;
  const Gene& gene = Require(name, &i);
  if (!gene.numeric()) {
    throw ArgumentError("gene '" + gene.name + "' is categorical");
  }
  return gene.grid[g[i]];
}

uint64_t Cardinality(const ComponentSpace& space) {
  uint64_t n = 1;
  for (const Gene& g : space.genes()) {
    const uint64_t k = static_cast<uint64_t>(g.size());
    if (n > std::numeric_limits<uint64_t>::max() / k) {
      throw ArgumentError("space cardinality overflows 64 bits");
    }
    n *= k;
  }
  return n;
}

Genome RandomGenome(const ComponentSpace& space, Rng& rng) {
  Genome g(space.num_genes());
  for (int i = 0; i < space.num_genes(); ++i) {
    g[i] = static_cast<int>(rng.UniformIndex(space.gene(i).size()));
  }
  return g;
}

std::pair<Genome, Genome> Crossover(const ComponentSpace& space,
                                    const Genome& a, const Genome& b, Rng& rng) {
  if (!space.Valid(a) || !space.Valid(b)) {
    throw ArgumentError("crossover parents do not belong to the space");
  }
  std::pair<Genome, Genome> out(a, b);
  for (size_t i = 0; i < a.size(); ++i) {
    if (rng.Bernoulli(0.5)) std::swap(out.first[i], out.second[i]);
  }
  return out;
}

Genome Mutate(const ComponentSpace& space, const Genome& g, double rate,
              Rng& rng) {
  if (!(rate >= 0 && rate <= 1)) throw ArgumentError("mutation rate outside [0, 1]");
  if (!space.Valid(g)) throw ArgumentError("genome does not belong to the space");
  Genome out = g;
  for (int i = 0; i < space.num_genes(); ++i) {
    if (rng.Bernoulli(rate)) {
      out[i] = static_cast<int>(rng.UniformIndex(space.gene(i).size()));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree space

namespace {

Gene Categorical(std::string name, std::vector<std::string> labels,
                 std::optional<Gene::Condition> cond) {
  return Gene{std::move(name), std::move(labels), {}, std::move(cond)};
}

Gene Grid(std::string name, std::vector<double> grid,
          std::optional<Gene::Condition> cond) {
  return Gene{std::move(name), {}, std::move(grid), std::move(cond)};
}

template <typename E>
std::vector<std::string> AllNames(int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(ToString(static_cast<E>(i)));
  return out;
}

struct ParamGene {
  const char* name;
  const char* option;
};

// Parameter gene of each stop rule / pruning option, in enum order.
constexpr ParamGene kStopGenes[] = {{"min_instances", "min_instances"},
                                    {"max_depth", "max_depth"},
                                    {"purity", "purity"},
                                    {"chi_square_p", "chi_square"}};
constexpr ParamGene kPruneGenes[] = {{nullptr, "none"},
                                     {"rep_fraction", "reduced_error"},
                                     {"pessimistic_cf", "pessimistic"},
                                     {nullptr, "min_error"},
                                     {"cut_depth", "max_depth_cut"}};

int FindIndex(const Gene& gene, const std::string& label) {
  for (int i = 0; i < gene.size(); ++i) {
    if (gene.labels[i] == label) return i;
  }
  return -1;
}

int FindGrid(const Gene& gene, double v) {
  for (int i = 0; i < gene.size(); ++i) {
    if (std::abs(gene.grid[i] - v) <= 1e-12 * std::max(1.0, std::abs(v))) return i;
  }
  return -1;
}

}  // namespace

std::vector<Gene> TreeGenes(const std::string& prefix,
                            const std::optional<Gene::Condition>& condition) {
  auto on = [&](const char* gene, const char* value) {
    return std::optional<Gene::Condition>(
        Gene::Condition{prefix + gene, {value}});
  };
  std::vector<Gene> genes;
  genes.push_back(Categorical(prefix + "criterion",
                              AllNames<SplitCriterion>(kNumSplitCriteria),
                              condition));
  genes.push_back(Categorical(prefix + "arity", AllNames<SplitArity>(2), condition));
  genes.push_back(
      Categorical(prefix + "stop_rule", AllNames<StopRule::Kind>(4), condition));
  genes.push_back(Grid(prefix + "min_instances", {1, 2, 4, 8, 16, 32, 64},
                       on("stop_rule", "min_instances")));
  genes.push_back(Grid(prefix + "max_depth", {2, 3, 4, 5, 6, 8, 10},
                       on("stop_rule", "max_depth")));
  genes.push_back(Grid(prefix + "purity", {0.80, 0.85, 0.90, 0.95, 0.99},
                       on("stop_rule", "purity")));
  genes.push_back(Grid(prefix + "chi_square_p", {0.01, 0.05, 0.10, 0.25},
                       on("stop_rule", "chi_square")));
  genes.push_back(Categorical(prefix + "missing_train", AllNames<MissingTrain>(3),
                              condition));
  genes.push_back(
      Categorical(prefix + "missing_test", AllNames<MissingTest>(3), condition));
  genes.push_back(
      Categorical(prefix + "pruning", AllNames<Pruning::Kind>(5), condition));
  genes.push_back(Grid(prefix + "rep_fraction", {0.25, 0.20, 0.33, 0.50},
                       on("pruning", "reduced_error")));
  genes.push_back(Grid(prefix + "pessimistic_cf", {0.25, 0.05, 0.10, 0.50},
                       on("pruning", "pessimistic")));
  genes.push_back(Grid(prefix + "cut_depth", {2, 3, 4, 5, 6, 8, 10},
                       on("pruning", "max_depth_cut")));
  return genes;
}

ComponentSpace DefaultTreeSpace() { return ComponentSpace(TreeGenes("", {})); }

DTConfig DecodeTree(const ComponentSpace& space, const Genome& g,
                    const std::string& prefix) {
  if (!space.Valid(g)) throw ArgumentError("genome does not belong to the space");
  DTConfig cfg;
  cfg.criterion = ParseSplitCriterion(space.Label(g, prefix + "criterion"));
  cfg.arity = ParseSplitArity(space.Label(g, prefix + "arity"));
  cfg.stop.kind = ParseStopKind(space.Label(g, prefix + "stop_rule"));
  cfg.stop.value =
      space.Value(g, prefix + kStopGenes[static_cast<int>(cfg.stop.kind)].name);
  cfg.missing_train = ParseMissingTrain(space.Label(g, prefix + "missing_train"));
  cfg.missing_test = ParseMissingTest(space.Label(g, prefix + "missing_test"));
  cfg.pruning.kind = ParsePruningKind(space.Label(g, prefix + "pruning"));
  const char* param = kPruneGenes[static_cast<int>(cfg.pruning.kind)].name;
  cfg.pruning.value = param ? space.Value(g, prefix + param) : 0.0;
  return cfg;
}

Genome EncodeTree(const ComponentSpace& space, const DTConfig& cfg,
                  const std::string& prefix) {
  Genome g(space.num_genes(), 0);
  auto set_label = [&](const std::string& gene, const std::string& label) {
    const int i = space.IndexOf(prefix + gene);
    if (i < 0) throw ArgumentError("space has no gene '" + prefix + gene + "'");
    const int v = FindIndex(space.gene(i), label);
    if (v < 0) {
      throw ArgumentError("'" + label + "' is not in the domain of '" +
                          prefix + gene + "'");
    }
    g[i] = v;
  };
  auto set_value = [&](const std::string& gene, double value) {
    const int i = space.IndexOf(prefix + gene);
    if (i < 0) throw ArgumentError("space has no gene '" + prefix + gene + "'");
    const int v = FindGrid(space.gene(i), value);
    if (v < 0) {
      throw ArgumentError(FormatNumber(value) + " is not on the grid of '" +
                          prefix + gene + "'");
    }
    g[i] = v;
  };
  set_label("criterion", ToString(cfg.criterion));
  set_label("arity", ToString(cfg.arity));
  set_label("stop_rule", ToString(cfg.stop.kind));
  set_value(kStopGenes[static_cast<int>(cfg.stop.kind)].name, cfg.stop.value);
  set_label("missing_train", ToString(cfg.missing_train));
  set_label("missing_test", ToString(cfg.missing_test));
  set_label("pruning", ToString(cfg.pruning.kind));
  if (const char* param = kPruneGenes[static_cast<int>(cfg.pruning.kind)].name) {
    set_value(param, cfg.pruning.value);
  }
  return g;
}

// ---------------------------------------------------------------------------
// CASH space

namespace {

constexpr const char* kFamilies[] = {"component_tree", "naive_bayes", "knn",
                                     "majority"};

}  // namespace

std::string FamilyName(const CashConfiguration& c) { return kFamilies[c.index()]; }

ComponentSpace DefaultCashSpace() {
  std::vector<Gene> genes;
  genes.push_back(Categorical("family", {kFamilies, kFamilies + 4}, {}));
  for (Gene& g : TreeGenes("tree.", Gene::Condition{"family", {"component_tree"}})) {
    genes.push_back(std::move(g));
  }
  genes.push_back(Grid("nb.alpha", {0.1, 0.2, 0.3, 0.4, 0.5},
                       Gene::Condition{"family", {"naive_bayes"}}));
  genes.push_back(
      Grid("knn.k", {1, 3, 5, 7, 11}, Gene::Condition{"family", {"knn"}}));
  genes.push_back(Categorical("knn.distance", {"standardized_overlap"},
                              Gene::Condition{"family", {"knn"}}));
  return ComponentSpace(std::move(genes));
}

CashConfiguration DecodeCash(const ComponentSpace& space, const Genome& g) {
  if (!space.Valid(g)) throw ArgumentError("genome does not belong to the space");
  const std::string& family = space.Label(g, "family");
  if (family == "component_tree") return DecodeTree(space, g, "tree.");
  if (family == "naive_bayes") return NaiveBayesConfig{space.Value(g, "nb.alpha")};
  if (family == "knn") {
    return KnnConfig{static_cast<int>(space.Value(g, "knn.k")),
                     space.Label(g, "knn.distance")};
  }
  if (family == "majority") return MajorityConfig{};
  throw ArgumentError("unknown family '" + family + "'");
}

Genome EncodeCash(const ComponentSpace& space, const CashConfiguration& c) {
  Genome g(space.num_genes(), 0);
  const int family_gene = space.IndexOf("family");
  if (family_gene < 0) throw ArgumentError("space has no 'family' gene");
  const int family = FindIndex(space.gene(family_gene), FamilyName(c));
  if (family < 0) {
    throw ArgumentError("family '" + FamilyName(c) + "' is not in the space");
  }
  auto put = [&](const std::string& gene, int value) {
    const int i = space.IndexOf(gene);
    if (i < 0 || value < 0) {
      throw ArgumentError("configuration is not in the space's domain of '" +
                          gene + "'");
    }
    g[i] = value;
  };
  if (const auto* tree = std::get_if<DTConfig>(&c)) {
    g = EncodeTree(space, *tree, "tree.");
  } else if (const auto* nb = std::get_if<NaiveBayesConfig>(&c)) {
    const int i = space.IndexOf("nb.alpha");
    put("nb.alpha", i < 0 ? -1 : FindGrid(space.gene(i), nb->alpha));
  } else if (const auto* knn = std::get_if<KnnConfig>(&c)) {
    const int k = space.IndexOf("knn.k");
    const int d = space.IndexOf("knn.distance");
    put("knn.k", k < 0 ? -1 : FindGrid(space.gene(k), knn->k));
    put("knn.distance", d < 0 ? -1 : FindIndex(space.gene(d), knn->distance));
  }
  g[family_gene] = family;
  return g;
}

std::string WriteCashConfig(const CashConfiguration& c) {
  std::ostringstream out;
  out << "family = " << FamilyName(c) << '\n';
  if (const auto* tree = std::get_if<DTConfig>(&c)) {
    out << WriteConfig(*tree);
  } else if (const auto* nb = std::get_if<NaiveBayesConfig>(&c)) {
    out << "alpha = " << FormatNumber(nb->alpha) << '\n';
  } else if (const auto* knn = std::get_if<KnnConfig>(&c)) {
    out << "k = " << knn->k << '\n' << "distance = " << knn->distance << '\n';
  }
  return out.str();
}

CashConfiguration ParseCashConfig(const std::string& text) {
  const KeyValues kv = KeyValues::Parse(text);
  const std::string family = kv.Require("family");
  CashConfiguration out;
  if (family == "component_tree") {
    out = ParseConfig(kv);
  } else if (family == "naive_bayes") {
    out = NaiveBayesConfig{kv.Number("alpha")};
  } else if (family == "knn") {
    out = KnnConfig{static_cast<int>(kv.Integer("k")), kv.Require("distance")};
  } else if (family == "majority") {
    out = MajorityConfig{};
  } else {
    throw ParseError("unknown family '" + family + "'", kv.Line("family"));
  }
  kv.RejectUnused();
  return out;
}

ComponentSpace ParseSpaceConfig(const std::string& text) {
  const KeyValues kv = KeyValues::Parse(text);
  const std::string base = kv.Require("base");
  std::vector<Gene> genes;
  if (base == "tree") {
    genes = DefaultTreeSpace().genes();
  } else if (base == "cash") {
    genes = DefaultCashSpace().genes();
  } else {
    throw ParseError("base must be 'tree' or 'cash'", kv.Line("base"));
  }
  const ComponentSpace defaults(genes);
  for (const KeyValues::Entry& e : kv.entries()) {
    if (e.key == "base") continue;
    const int i = defaults.IndexOf(e.key);
    if (i < 0) throw ParseError("unknown gene '" + e.key + "'", e.line);
    Gene& gene = genes[i];
    if (gene.numeric()) {
      gene.grid = kv.Numbers(e.key);
    } else {
      std::vector<std::string> labels = kv.List(e.key);
      for (const std::string& label : labels) {
        if (FindIndex(defaults.gene(i), label) < 0) {
          throw ParseError("'" + label + "' is not an option of '" + e.key + "'",
                           e.line);
        }
      }
      gene.labels = std::move(labels);
    }
    std::set<std::string> seen;
    for (int v = 0; v < gene.size(); ++v) {
      const std::string s =
          gene.numeric() ? FormatNumber(gene.grid[v]) : gene.labels[v];
      if (!seen.insert(s).second) {
        throw ParseError("duplicate value '" + s + "' for '" + e.key + "'", e.line);
      }
    }
  }
  return ComponentSpace(std::move(genes));
}

}  // namespace hyperdt
