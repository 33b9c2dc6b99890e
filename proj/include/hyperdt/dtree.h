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

#ifndef HYPERDT_DTREE_H_
#define HYPERDT_DTREE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hyperdt/budget.h"
#include "hyperdt/config.h"
#include "hyperdt/dataset.h"
#include "hyperdt/split_criteria.h"

namespace hyperdt {

enum class SplitArity { kBinary, kMultiway };

struct StopRule {
  enum class Kind {
    kMinInstances,  // nodes with weight < 2 * value are not split
    kMaxDepth,      // nodes at depth >= value are not split
    kPurity,        // nodes whose majority share >= value are not split
    kChiSquare,     // splits whose chi-squared p-value > value are rejected
  };
  Kind kind = Kind::kMinInstances;
  double value = 1;

  bool operator==(const StopRule&) const = default;
};

enum class MissingTrain {
  kIgnoreRow,         // rows missing the split attribute are dropped
  kMajorityBranch,    // ... follow the heaviest branch
  kFractionalWeight,  // ... are split across branches by branch weight
};

enum class MissingTest {
  kMajorityBranch,      // follow the heaviest training branch
  kMostFrequentValue,   // impute the training mode / mean
  kHaltAndUseNodeDistribution,
};

struct Pruning {
  enum class Kind {
    kNone,
    kReducedError,  // value: fraction of the training data held out
    kPessimistic,   // value: confidence factor
    kMinError,
    kMaxDepthCut,   // value: depth below which the tree is cut
  };
  Kind kind = Kind::kNone;
  double value = 0;

  bool operator==(const Pruning&) const = default;
};

// One decision-tree induction algorithm. Default-constructed values are the
// first choice of every gene in the default component space.
struct DTConfig {
  SplitCriterion criterion = SplitCriterion::kInfoGain;
  SplitArity arity = SplitArity::kBinary;
  StopRule stop;
  MissingTrain missing_train = MissingTrain::kIgnoreRow;
  MissingTest missing_test = MissingTest::kMajorityBranch;
  Pruning pruning;

  bool operator==(const DTConfig&) const = default;
};

std::string ToString(SplitArity a);
std::string ToString(StopRule::Kind k);
std::string ToString(MissingTrain m);
std::string ToString(MissingTest m);
std::string ToString(Pruning::Kind k);
SplitArity ParseSplitArity(const std::string& s);
StopRule::Kind ParseStopKind(const std::string& s);
MissingTrain ParseMissingTrain(const std::string& s);
MissingTest ParseMissingTest(const std::string& s);
Pruning::Kind ParsePruningKind(const std::string& s);

// Key-value rendering, one `key = value` per line, parameters only for the
// chosen options:
//   split_criterion = gain_ratio
//   split_arity = multiway
//   stop_rule = min_instances
//   min_instances = 2
//   missing_train = fractional_weight
//   missing_test = majority_branch
//   pruning = pessimistic
//   pessimistic_cf = 0.25
std::string WriteConfig(const DTConfig& cfg);
// Throws ParseError on malformed or incomplete text and unknown keys.
DTConfig ParseConfig(const std::string& text);
// Reads the tree keys only, leaving other keys to the caller.
DTConfig ParseConfig(const KeyValues& kv);

struct TreeNode {
  enum class Test {
    kLeaf,
    kNumericLE,        // value <= threshold -> child 0, else child 1
    kNominalEquals,    // value == nominal_value -> child 0, else child 1
    kNominalMultiway,  // child i for value i
  };

  Test test = Test::kLeaf;
  int attribute = -1;
  double threshold = 0;
  int nominal_value = -1;
  std::vector<int> children;
  // Training class weights reaching the node.
  std::vector<double> distribution;
  // Training weight with a known split value, per child.
  std::vector<double> branch_weights;
  // argmax(distribution), ties to the lowest class; inherited from the
  // parent when no training weight reached the node.
  int prediction = 0;
  int depth = 0;

  bool is_leaf() const { return test == Test::kLeaf; }
  double weight() const;
  bool operator==(const TreeNode&) const = default;
};

// Immutable induced classifier. nodes()[0] is the root; nodes are stored in
// depth-first pre-order.
class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(int num_classes, std::vector<double> impute_values,
               std::vector<TreeNode> nodes);

  int num_classes() const { return num_classes_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(int i) const { return nodes_[i]; }
  const TreeNode& root() const { return nodes_.front(); }
  // Per-attribute substitute for kMostFrequentValue (mode or mean).
  const std::vector<double>& impute_values() const { return impute_values_; }

  size_t num_nodes() const { return nodes_.size(); }
  size_t num_leaves() const;
  int depth() const;

  // Index of the node whose prediction is used for `row`.
  int Route(std::span<const double> row, MissingTest policy) const;
  // All nodes visited, root first, ending at Route().
  std::vector<int> Path(std::span<const double> row, MissingTest policy) const;
  int Predict(std::span<const double> row, MissingTest policy) const {
    return nodes_[Route(row, policy)].prediction;
  }
  std::vector<int> PredictAll(const Dataset& ds, MissingTest policy) const;

  bool operator==(const DecisionTree&) const = default;

 private:
  int num_classes_ = 0;
  std::vector<double> impute_values_;
  std::vector<TreeNode> nodes_;
};

// Greedy top-down induction driven by cfg's criterion, arity, stop rule and
// training missing-value policy. Pruning is not applied here. The deadline
// is checked at every node; EvaluationTimeout propagates.
DecisionTree BuildTree(const DTConfig& cfg, const Dataset& train,
                       const Deadline& deadline = {});

// Applies cfg.pruning. reduced_error requires a non-empty prune_set
// (ArgumentError otherwise); the other methods ignore it. Routing of prune
// instances follows cfg.missing_test.
DecisionTree Prune(const DecisionTree& tree, const DTConfig& cfg,
                   const Dataset& prune_set);

// Misclassified rows of `ds`.
size_t CountErrors(const DecisionTree& tree, const Dataset& ds,
                   MissingTest policy);

// Runs the whole algorithm: carves the reduced-error pruning set with
// `seed` when needed (skipping pruning when the data is too small to carve),
// builds, and prunes.
DecisionTree TrainTreeAlgorithm(const DTConfig& cfg, const Dataset& train,
                                uint64_t seed, const Deadline& deadline = {});

// Indented text, one node per line in pre-order, preceded by the schema:
//   hyperdt-tree 1
//   relation separable
//   attribute numeric x1 impute=0.05
//   attribute nominal colour values=red,green,blue impute=2
//   class nominal class values=pos,neg impute=1
//   split x1 <= 0.0312 predict=neg dist=120,180 branch=119,175
//     leaf predict=neg dist=2,170
//     split colour == red predict=pos dist=118,10 branch=60,68
//   ...
// Multiway nominal splits read `split colour in *`. Names must not contain
// whitespace, '=' or ',' (ArgumentError).
std::string WriteTree(const DecisionTree& tree, const Schema& schema);

struct LoadedTree {
  Schema schema;
  DecisionTree tree;
};
// Throws ParseError with the offending line.
LoadedTree ParseTree(const std::string& text);

}  // namespace hyperdt

#endif  // HYPERDT_DTREE_H_
