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

#ifndef HYPERDT_LEARNERS_H_
#define HYPERDT_LEARNERS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "hyperdt/budget.h"
#include "hyperdt/dataset.h"
#include "hyperdt/search_space.h"

namespace hyperdt {

// A trained model of any CASH family.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual int Predict(std::span<const double> row) const = 0;
  std::vector<int> PredictAll(const Dataset& ds) const;
};

// Trains the learner `config` describes. The seed only matters for tree
// algorithms that carve a pruning set. EvaluationTimeout propagates.
std::unique_ptr<Classifier> TrainClassifier(const CashConfiguration& config,
                                            const Dataset& train, uint64_t seed,
                                            const Deadline& deadline = {});

// Gaussian likelihoods for numeric attributes, Laplace-smoothed counts for
// nominal ones (alpha also smooths the class prior); missing cells are
// skipped. Ties go to the lowest class index.
class NaiveBayes : public Classifier {
 public:
  NaiveBayes(const NaiveBayesConfig& cfg, const Dataset& train);
  int Predict(std::span<const double> row) const override;
  // Unnormalised log posterior per class.
  std::vector<double> LogScores(std::span<const double> row) const;

 private:
  int num_classes_ = 0;
  int class_index_ = 0;
  std::vector<bool> nominal_;
  std::vector<double> log_prior_;
  // [attribute][class][value] log likelihood for nominal attributes.
  std::vector<std::vector<std::vector<double>>> log_likelihood_;
  // [attribute][class] for numeric attributes.
  std::vector<std::vector<double>> mean_;
  std::vector<std::vector<double>> variance_;
};

// Distance: Euclidean over numerics standardized with training statistics
// plus 0/1 overlap over nominals; a missing cell on either side contributes
// 1. Among equidistant neighbours the earlier training row wins; a tied vote
// goes to the class of the nearest tied neighbour.
class Knn : public Classifier {
 public:
  Knn(const KnnConfig& cfg, const Dataset& train);
  int Predict(std::span<const double> row) const override;

 private:
  double Distance(std::span<const double> a, std::span<const double> b) const;

  int k_ = 1;
  Dataset train_;
  std::vector<double> mean_;
  std::vector<double> scale_;
};

class Majority : public Classifier {
 public:
  explicit Majority(const Dataset& train);
  int Predict(std::span<const double>) const override { return label_; }
  int label() const { return label_; }

 private:
  int label_ = 0;
};

class TreeClassifier : public Classifier {
 public:
  TreeClassifier(DecisionTree tree, MissingTest policy)
      : tree_(std::move(tree)), policy_(policy) {}
  int Predict(std::span<const double> row) const override {
    return tree_.Predict(row, policy_);
  }
  const DecisionTree& tree() const { return tree_; }

 private:
  DecisionTree tree_;
  MissingTest policy_;
};

}  // namespace hyperdt

#endif  // HYPERDT_LEARNERS_H_
