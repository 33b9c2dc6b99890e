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

#include "hyperdt/dtree.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "hyperdt/config.h"
#include "hyperdt/errors.h"

namespace hyperdt {

// ---------------------------------------------------------------------------
// Names

namespace {

template <typename E, size_t N>
E ParseName(const std::string& s, const std::array<const char*, N>& names,
            const char* what) {
  for (size_t i = 0; i < N; ++i) {
    if (s == names[i]) return static_cast<E>(i);
  }
  throw ArgumentError(std::string("unknown ") + what + " '" + s + "'");
}

constexpr std::array<const char*, 2> kArityNames = {"binary", "multiway"};
constexpr std::array<const char*, 4> kStopNames = {
    "min_instances", "max_depth", "purity", "chi_square"};
constexpr std::array<const char*, 4> kStopParamKeys = {
    "min_instances", "max_depth", "purity_threshold", "chi_square_p"};
constexpr std::array<const char*, 3> kMissingTrainNames = {
    "ignore_row", "majority_branch", "fractional_weight"};
constexpr std::array<const char*, 3> kMissingTestNames = {
    "majority_branch", "most_frequent_value", "halt_node_distribution"};
constexpr std::array<const char*, 5> kPruningNames = {
    "none", "reduced_error", "pessimistic", "min_error", "max_depth_cut"};
constexpr std::array<const char*, 5> kPruningParamKeys = {
    "", "rep_fraction", "pessimistic_cf", "", "cut_depth"};

}  // namespace

std::string ToString(SplitArity a) { return kArityNames[static_cast<int>(a)]; }
std::string ToString(StopRule::Kind k) {
  return kStopNames[static_cast<int>(k)];
}
std::string ToString(MissingTrain m) {
  return kMissingTrainNames[static_cast<int>(m)];
}
std::string ToString(MissingTest m) {
  return kMissingTestNames[static_cast<int>(m)];
}
std::string ToString(Pruning::Kind k) {
  return kPruningNames[static_cast<int>(k)];
}
SplitArity ParseSplitArity(const std::string& s) {
  return ParseName<SplitArity>(s, kArityNames, "split arity");
}
StopRule::Kind ParseStopKind(const std::string& s) {
  return ParseName<StopRule::Kind>(s, kStopNames, "stop rule");
}
MissingTrain ParseMissingTrain(const std::string& s) {
  return ParseName<MissingTrain>(s, kMissingTrainNames, "missing_train policy");
}
MissingTest ParseMissingTest(const std::string& s) {
  return ParseName<MissingTest>(s, kMissingTestNames, "missing_test policy");
}
Pruning::Kind ParsePruningKind(const std::string& s) {
  return ParseName<Pruning::Kind>(s, kPruningNames, "pruning method");
}

std::string WriteConfig(const DTConfig& cfg) {
  std::ostringstream out;
  out << "split_criterion = " << ToString(cfg.criterion) << '\n';
  out << "split_arity = " << ToString(cfg.arity) << '\n';
  out << "stop_rule = " << ToString(cfg.stop.kind) << '\n';
  out << kStopParamKeys[static_cast<int>(cfg.stop.kind)] << " = "
      << FormatNumber(cfg.stop.value) << '\n';
  out << "missing_train = " << ToString(cfg.missing_train) << '\n';
  out << "missing_test = " << ToString(cfg.missing_test) << '\n';
  out << "pruning = " << ToString(cfg.pruning.kind) << '\n';
  const char* key = kPruningParamKeys[static_cast<int>(cfg.pruning.kind)];
  if (*key) out << key << " = " << FormatNumber(cfg.pruning.value) << '\n';
  return out.str();
}

DTConfig ParseConfig(const KeyValues& kv) {
  auto option = [&](const char* key, auto parse) {
    const std::string value = kv.Require(key);
    try {
      return parse(value);
    } catch (const ArgumentError& e) {
      throw ParseError(e.what(), kv.Line(key));
    }
  };
  DTConfig cfg;
  cfg.criterion = option("split_criterion", ParseSplitCriterion);
  cfg.arity = option("split_arity", ParseSplitArity);
  cfg.stop.kind = option("stop_rule", ParseStopKind);
  cfg.stop.value = kv.Number(kStopParamKeys[static_cast<int>(cfg.stop.kind)]);
  cfg.missing_train = option("missing_train", ParseMissingTrain);
  cfg.missing_test = option("missing_test", ParseMissingTest);
  cfg.pruning.kind = option("pruning", ParsePruningKind);
  const char* key = kPruningParamKeys[static_cast<int>(cfg.pruning.kind)];
  cfg.pruning.value = *key ? kv.Number(key) : 0.0;
  return cfg;
}

DTConfig ParseConfig(const std::string& text) {
  const KeyValues kv = KeyValues::Parse(text);
  DTConfig cfg = ParseConfig(kv);
  kv.RejectUnused();
  return cfg;
}

// ---------------------------------------------------------------------------
// Tree

namespace {

int ArgMax(const std::vector<double>& v) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

double Sum(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s;
}

int ChildFor(const TreeNode& node, double value) {
  switch (node.test) {
    case TreeNode::Test::kNumericLE:
      return value <= node.threshold ? 0 : 1;
    case TreeNode::Test::kNominalEquals:
      return static_cast<int>(value) == node.nominal_value ? 0 : 1;
    case TreeNode::Test::kNominalMultiway:
      return static_cast<int>(value);
    case TreeNode::Test::kLeaf:
      break;
  }
  return 0;
}

}  // namespace

double TreeNode::weight() const { return Sum(distribution); }

DecisionTree::DecisionTree(int num_classes, std::vector<double> impute_values,
                           std::vector<TreeNode> nodes)
    : num_classes_(num_classes),
      impute_values_(std::move(impute_values)),
      nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw ArgumentError("a tree needs a root");
}

size_t DecisionTree::num_leaves() const {
  return static_cast<size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int DecisionTree::depth() const {
  int d = 0;
  for (const TreeNode& n : nodes_) d = std::max(d, n.depth);
  return d;
}

std::vector<int> DecisionTree::Path(std::span<const double> row,
                                    MissingTest policy) const {
  std::vector<int> path{0};
  int current = 0;
  while (!nodes_[current].is_leaf()) {
    const TreeNode& node = nodes_[current];
    double v = row[node.attribute];
    int child;
    if (IsMissing(v)) {
      if (policy == MissingTest::kHaltAndUseNodeDistribution) break;
      if (policy == MissingTest::kMajorityBranch) {
        child = ArgMax(node.branch_weights);
      } else {
        v = impute_values_[node.attribute];
        child = ChildFor(node, v);
      }
    } else {
      child = ChildFor(node, v);
    }
    current = node.children[child];
    path.push_back(current);
  }
  return path;
}

int DecisionTree::Route(std::span<const double> row, MissingTest policy) const {
  return Path(row, policy).back();
}

std::vector<int> DecisionTree::PredictAll(const Dataset& ds,
                                          MissingTest policy) const {
  std::vector<int> out(ds.num_rows());
  for (size_t r = 0; r < ds.num_rows(); ++r) out[r] = Predict(ds.row(r), policy);
  return out;
}

size_t CountErrors(const DecisionTree& tree, const Dataset& ds,
                   MissingTest policy) {
  size_t errors = 0;
  for (size_t r = 0; r < ds.num_rows(); ++r) {
    errors += tree.Predict(ds.row(r), policy) != ds.label(r);
  }
  return errors;
}

// ---------------------------------------------------------------------------
// Induction

namespace {

struct WeightedRow {
  size_t row;
  double weight;
};

struct Candidate {
  bool valid = false;
  double score = 0;
  TreeNode::Test test = TreeNode::Test::kLeaf;
  int attribute = -1;
  double threshold = 0;
  int nominal_value = -1;
  int num_children = 0;
  std::vector<double> table;  // known weights, num_children x classes
};

class Builder {
 public:
  Builder(const DTConfig& cfg, const Dataset& ds, const Deadline& deadline)
      : cfg_(cfg), ds_(ds), deadline_(deadline), k_(ds.num_classes()) {}

  DecisionTree Build() {
    std::vector<WeightedRow> rows(ds_.num_rows());
    for (size_t r = 0; r < rows.size(); ++r) rows[r] = {r, 1.0};
    std::vector<bool> used(ds_.num_attributes(), false);
    Grow(std::move(rows), 0, used, 0);
    return DecisionTree(k_, ImputeValues(), std::move(nodes_));
  }

 private:
  std::vector<double> ImputeValues() const {
    std::vector<double> out(ds_.num_attributes(), 0.0);
    for (int a = 0; a < ds_.num_attributes(); ++a) {
      const Attribute& attr = ds_.attribute(a);
      if (attr.is_nominal()) {
        std::vector<double> counts(attr.num_values(), 0.0);
        for (size_t r = 0; r < ds_.num_rows(); ++r) {
          const double v = ds_.value(r, a);
          if (!IsMissing(v)) counts[static_cast<int>(v)] += 1;
        }
        out[a] = ArgMax(counts);
      } else {
        double sum = 0, n = 0;
        for (size_t r = 0; r < ds_.num_rows(); ++r) {
          const double v = ds_.value(r, a);
          if (!IsMissing(v)) sum += v, n += 1;
        }
        out[a] = n > 0 ? sum / n : 0.0;
      }
    }
    return out;
  }

  bool Stops(const std::vector<double>& dist, int depth) const {
    const double total = Sum(dist);
    int present = 0;
    for (double w : dist) present += w > 0;
    if (present <= 1) return true;
    switch (cfg_.stop.kind) {
      case StopRule::Kind::kMinInstances:
        return total < 2 * cfg_.stop.value;
      case StopRule::Kind::kMaxDepth:
        return depth >= cfg_.stop.value;
      case StopRule::Kind::kPurity:
        return dist[ArgMax(dist)] / total >= cfg_.stop.value;
      case StopRule::Kind::kChiSquare:
        return false;
    }
    return false;
  }

  // Replaces `best` when `c` scores higher beyond rounding noise; earlier
  // candidates win ties.
  static void Offer(Candidate& best, Candidate&& c) {
    if (!best.valid ||
        c.score > best.score + 1e-12 * (1.0 + std::abs(best.score))) {
      best = std::move(c);
      best.valid = true;
    }
  }

  double Scale(double known, double total) const {
    return cfg_.missing_train == MissingTrain::kFractionalWeight ? known / total
                                                                 : 1.0;
  }

  void NominalCandidates(const std::vector<WeightedRow>& rows, int a,
                         double total, Candidate& best) {
    const int values = ds_.attribute(a).num_values();
    std::vector<double> table(static_cast<size_t>(values) * k_, 0.0);
    std::vector<double> value_weight(values, 0.0);
    double known = 0;
    for (const WeightedRow& wr : rows) {
      const double v = ds_.value(wr.row, a);
      if (IsMissing(v)) continue;
      const int vi = static_cast<int>(v);
      table[vi * k_ + ds_.label(wr.row)] += wr.weight;
      value_weight[vi] += wr.weight;
      known += wr.weight;
    }
    int non_empty = 0;
    for (double w : value_weight) non_empty += w > 0;
    if (non_empty < 2) return;
    const double scale = Scale(known, total);

    if (cfg_.arity == SplitArity::kMultiway) {
      Candidate c;
      c.test = TreeNode::Test::kNominalMultiway;
      c.attribute = a;
      c.num_children = values;
      c.score = scale * ScoreSplit(cfg_.criterion, table.data(), values, k_);
      c.table = std::move(table);
      Offer(best, std::move(c));
      return;
    }
    for (int v = 0; v < values; ++v) {
      if (value_weight[v] <= 0 || value_weight[v] >= known) continue;
      Candidate c;
      c.test = TreeNode::Test::kNominalEquals;
      c.attribute = a;
      c.nominal_value = v;
      c.num_children = 2;
      c.table.assign(2 * k_, 0.0);
      for (int u = 0; u < values; ++u) {
        const int side = u == v ? 0 : 1;
        for (int j = 0; j < k_; ++j) c.table[side * k_ + j] += table[u * k_ + j];
      }
      c.score = scale * ScoreSplit(cfg_.criterion, c.table.data(), 2, k_);
      Offer(best, std::move(c));
    }
  }

  void NumericCandidates(const std::vector<WeightedRow>& rows, int a,
                         double total, Candidate& best) {
    struct Item {
      double value;
      int label;
      double weight;
    };
    std::vector<Item> items;
    items.reserve(rows.size());
    double known = 0;
    std::vector<double> right(k_, 0.0);
    for (const WeightedRow& wr : rows) {
      const double v = ds_.value(wr.row, a);
      if (IsMissing(v)) continue;
      items.push_back({v, ds_.label(wr.row), wr.weight});
      right[ds_.label(wr.row)] += wr.weight;
      known += wr.weight;
    }
    if (items.size() < 2) return;
    std::stable_sort(items.begin(), items.end(),
                     [](const Item& x, const Item& y) { return x.value < y.value; });
    const double scale = Scale(known, total);
    std::vector<double> table(2 * k_, 0.0);
    std::copy(right.begin(), right.end(), table.begin() + k_);
    for (size_t i = 0; i + 1 < items.size(); ++i) {
      table[items[i].label] += items[i].weight;
      table[k_ + items[i].label] -= items[i].weight;
      if (items[i].value == items[i + 1].value) continue;
      for (int j = 0; j < k_; ++j) table[k_ + j] = std::max(0.0, table[k_ + j]);
      Candidate c;
      c.test = TreeNode::Test::kNumericLE;
      c.attribute = a;
      c.threshold = items[i].value + (items[i + 1].value - items[i].value) / 2;
      if (c.threshold >= items[i + 1].value) c.threshold = items[i].value;
      c.num_children = 2;
      c.score = scale * ScoreSplit(cfg_.criterion, table.data(), 2, k_);
      if (best.valid &&
          !(c.score > best.score + 1e-12 * (1.0 + std::abs(best.score)))) {
        continue;  // skip the table copy for losing thresholds
      }
      c.table = table;
      Offer(best, std::move(c));
    }
  }

  Candidate BestSplit(const std::vector<WeightedRow>& rows,
                      const std::vector<bool>& used, double total) {
    Candidate best;
    for (int a = 0; a < ds_.num_attributes(); ++a) {
      if (a == ds_.class_index() || used[a]) continue;
      if (ds_.attribute(a).is_nominal()) {
        NominalCandidates(rows, a, total, best);
      } else {
        NumericCandidates(rows, a, total, best);
      }
    }
    return best;
  }

  bool PassesChiSquare(const Candidate& c) const {
    const ChiSquare chi = ChiSquareOfTable(c.table.data(), c.num_children, k_);
    if (chi.df <= 0) return false;
    const boost::math::chi_squared dist(chi.df);
    const double p = boost::math::cdf(boost::math::complement(dist, chi.statistic));
    return p <= cfg_.stop.value;
  }

  int Grow(std::vector<WeightedRow> rows, int depth, std::vector<bool>& used,
           int inherited_prediction) {
    deadline_.Check();
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    {
      TreeNode& node = nodes_.back();
      node.depth = depth;
      node.distribution.assign(k_, 0.0);
      for (const WeightedRow& wr : rows) {
        node.distribution[ds_.label(wr.row)] += wr.weight;
      }
      node.prediction = Sum(node.distribution) > 0 ? ArgMax(node.distribution)
                                                   : inherited_prediction;
    }
    const std::vector<double> dist = nodes_[index].distribution;
    if (Stops(dist, depth)) return index;

    const double total = Sum(dist);
    Candidate split = BestSplit(rows, used, total);
    if (!split.valid) return index;
    if (cfg_.stop.kind == StopRule::Kind::kChiSquare && !PassesChiSquare(split)) {
      return index;
    }

    std::vector<double> branch(split.num_children, 0.0);
    for (int i = 0; i < split.num_children; ++i) {
      for (int j = 0; j < k_; ++j) branch[i] += split.table[i * k_ + j];
    }
    const double known = Sum(branch);
    const int heaviest = ArgMax(branch);

    TreeNode probe;
    probe.test = split.test;
    probe.threshold = split.threshold;
    probe.nominal_value = split.nominal_value;

    std::vector<std::vector<WeightedRow>> parts(split.num_children);
    for (const WeightedRow& wr : rows) {
      const double v = ds_.value(wr.row, split.attribute);
      if (!IsMissing(v)) {
        parts[ChildFor(probe, v)].push_back(wr);
        continue;
      }
      switch (cfg_.missing_train) {
        case MissingTrain::kIgnoreRow:
          break;
        case MissingTrain::kMajorityBranch:
          parts[heaviest].push_back(wr);
          break;
        case MissingTrain::kFractionalWeight:
          for (int i = 0; i < split.num_children; ++i) {
            if (branch[i] > 0) {
              parts[i].push_back({wr.row, wr.weight * branch[i] / known});
            }
          }
          break;
      }
    }
    rows.clear();
    rows.shrink_to_fit();

    {
      TreeNode& node = nodes_[index];
      node.test = split.test;
      node.attribute = split.attribute;
      node.threshold = split.threshold;
      node.nominal_value = split.nominal_value;
      node.branch_weights = branch;
    }
    const bool nominal = ds_.attribute(split.attribute).is_nominal();
    if (nominal) used[split.attribute] = true;
    const int prediction = nodes_[index].prediction;
    std::vector<int> children;
    for (auto& part : parts) {
      children.push_back(Grow(std::move(part), depth + 1, used, prediction));
    }
    if (nominal) used[split.attribute] = false;
    nodes_[index].children = std::move(children);
    return index;
  }

  const DTConfig& cfg_;
  const Dataset& ds_;
  const Deadline& deadline_;
  const int k_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree BuildTree(const DTConfig& cfg, const Dataset& train,
                       const Deadline& deadline) {
  if (train.empty()) throw ArgumentError("cannot build a tree on no rows");
  return Builder(cfg, train, deadline).Build();
}

// ---------------------------------------------------------------------------
// Pruning

namespace {

// C4.5's upper confidence bound on the error count of a leaf covering `n`
// weighted instances with `e` errors, returned as extra errors above `e`.
double AddErrs(double n, double e, double cf) {
  if (n <= 0) return 0;
  if (e < 1e-6) return n * (1 - std::exp(std::log(cf) / n));
  if (e < 0.9999) {
    const double v0 = n * (1 - std::exp(std::log(cf) / n));
    return v0 + e * (AddErrs(n, 1.0, cf) - v0);
  }
  if (e + 0.5 >= n) return 0.67 * (n - e);
  const double z = boost::math::quantile(boost::math::normal(), 1 - cf);
  const double coeff = z * z;
  const double pr = (e + 0.5 + coeff / 2 +
                     std::sqrt(coeff * ((e + 0.5) * (1 - (e + 0.5) / n) +
                                        coeff / 4))) /
                    (n + coeff);
  return n * pr - e;
}

double LeafTrainingErrors(const TreeNode& node) {
  if (node.distribution.empty()) return 0;
  return node.weight() - node.distribution[ArgMax(node.distribution)];
}

class Pruner {
 public:
  explicit Pruner(const DecisionTree& tree)
      : num_classes_(tree.num_classes()),
        impute_(tree.impute_values()),
        nodes_(tree.nodes()) {}

  void CutBelow(int index, int depth) {
    TreeNode& node = nodes_[index];
    if (node.is_leaf()) return;
    if (node.depth >= depth) {
      Collapse(index);
      return;
    }
    for (int c : node.children) CutBelow(c, depth);
  }

  double MinError(int index) {
    if (nodes_[index].is_leaf()) return LeafTrainingErrors(nodes_[index]);
    double sub = 0;
    for (int c : std::vector<int>(nodes_[index].children)) sub += MinError(c);
    const double as_leaf = LeafTrainingErrors(nodes_[index]);
    if (as_leaf <= sub + 1e-9) {
      Collapse(index);
      return as_leaf;
    }
    return sub;
  }

  double Pessimistic(int index, double cf) {
    const TreeNode& node = nodes_[index];
    const double e = LeafTrainingErrors(node);
    const double as_leaf = e + AddErrs(node.weight(), e, cf);
    if (node.is_leaf()) return as_leaf;
    double sub = 0;
    for (int c : std::vector<int>(node.children)) sub += Pessimistic(c, cf);
    if (as_leaf <= sub + 0.1) {
      Collapse(index);
      return as_leaf;
    }
    return sub;
  }

  // errors_as_leaf: errors of prune instances passing through each node if
  // it were a leaf; errors_ending: errors of instances whose prediction is
  // taken at that node.
  double ReducedError(int index, const std::vector<double>& errors_as_leaf,
                      const std::vector<double>& errors_ending) {
    if (nodes_[index].is_leaf()) return errors_ending[index];
    double sub = errors_ending[index];
    for (int c : std::vector<int>(nodes_[index].children)) {
      sub += ReducedError(c, errors_as_leaf, errors_ending);
    }
    if (errors_as_leaf[index] <= sub) {
      Collapse(index);
      return errors_as_leaf[index];
    }
    return sub;
  }

  DecisionTree Finish() const {
    std::vector<TreeNode> out;
    Copy(0, out);
    return DecisionTree(num_classes_, impute_, std::move(out));
  }

 private:
  void Collapse(int index) {
    TreeNode& node = nodes_[index];
    node.test = TreeNode::Test::kLeaf;
    node.attribute = -1;
    node.threshold = 0;
    node.nominal_value = -1;
    node.children.clear();
    node.branch_weights.clear();
  }

  int Copy(int index, std::vector<TreeNode>& out) const {
    const int at = static_cast<int>(out.size());
    out.push_back(nodes_[index]);
    std::vector<int> children;
    for (int c : nodes_[index].children) children.push_back(Copy(c, out));
    out[at].children = std::move(children);
    return at;
  }

  int num_classes_;
  std::vector<double> impute_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree Prune(const DecisionTree& tree, const DTConfig& cfg,
                   const Dataset& prune_set) {
  Pruner pruner(tree);
  switch (cfg.pruning.kind) {
    case Pruning::Kind::kNone:
      return tree;
    case Pruning::Kind::kMaxDepthCut:
      pruner.CutBelow(0, static_cast<int>(cfg.pruning.value));
      break;
    case Pruning::Kind::kMinError:
      pruner.MinError(0);
      break;
    case Pruning::Kind::kPessimistic:
      pruner.Pessimistic(0, cfg.pruning.value);
      break;
    case Pruning::Kind::kReducedError: {
      if (prune_set.empty()) {
        throw ArgumentError("reduced-error pruning needs a pruning set");
      }
      std::vector<double> as_leaf(tree.num_nodes(), 0.0);
      std::vector<double> ending(tree.num_nodes(), 0.0);
      for (size_t r = 0; r < prune_set.num_rows(); ++r) {
        const int label = prune_set.label(r);
        const auto path = tree.Path(prune_set.row(r), cfg.missing_test);
        for (int n : path) as_leaf[n] += tree.node(n).prediction != label;
        ending[path.back()] += tree.node(path.back()).prediction != label;
      }
      pruner.ReducedError(0, as_leaf, ending);
      break;
    }
  }
  return pruner.Finish();
}

DecisionTree TrainTreeAlgorithm(const DTConfig& cfg, const Dataset& train,
                                uint64_t seed, const Deadline& deadline) {
  if (cfg.pruning.kind == Pruning::Kind::kReducedError) {
    std::vector<bool> held_out;
    try {
      held_out = StratifiedHoldout(train.labels(), train.num_classes(),
                                   cfg.pruning.value, seed);
    } catch (const ArgumentError&) {
      return BuildTree(cfg, train, deadline);  // too small to carve
    }
    std::vector<size_t> grow_rows, prune_rows;
    for (size_t r = 0; r < held_out.size(); ++r) {
      (held_out[r] ? prune_rows : grow_rows).push_back(r);
    }
    const DecisionTree tree = BuildTree(cfg, train.Subset(grow_rows), deadline);
    return Prune(tree, cfg, train.Subset(prune_rows));
  }
  return Prune(BuildTree(cfg, train, deadline), cfg, Dataset());
}

}  // namespace hyperdt
