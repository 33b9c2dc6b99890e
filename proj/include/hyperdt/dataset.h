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

#ifndef HYPERDT_DATASET_H_
#define HYPERDT_DATASET_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdt {

// Cells are stored as doubles: numeric values directly, nominal values as
// the index into the attribute's value list. NaN marks a missing cell.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool IsMissing(double v) { return std::isnan(v); }

struct Attribute {
  enum class Kind { kNumeric, kNominal };

  std::string name;
  Kind kind = Kind::kNumeric;
  std::vector<std::string> values;  // nominal only

  static Attribute Numeric(std::string name);
  static Attribute Nominal(std::string name, std::vector<std::string> values);

  bool is_nominal() const { return kind == Kind::kNominal; }
  int num_values() const { return static_cast<int>(values.size()); }
  // Index of `value` in the value list, -1 if absent.
  int IndexOf(std::string_view value) const;

  bool operator==(const Attribute&) const = default;
};

struct Schema {
  std::string relation;
  std::vector<Attribute> attributes;
  int class_index = -1;

  int num_attributes() const { return static_cast<int>(attributes.size()); }
  const Attribute& class_attribute() const { return attributes[class_index]; }
  int num_classes() const { return class_attribute().num_values(); }

  // Throws SchemaError on duplicate names, empty or duplicated nominal
  // value lists, or a class index that is out of range or not nominal.
  void Validate() const;

  bool operator==(const Schema&) const = default;
};

// Immutable typed instance table. The constructor enforces the cell
// invariants (arity, nominal range, class never missing). It does not
// require two classes to be present: parsers enforce that, while subsets
// and folds may legitimately be pure.
class Dataset {
 public:
  Dataset() = default;
  Dataset(Schema schema, std::vector<double> cells);
  static Dataset FromRows(Schema schema,
                          const std::vector<std::vector<double>>& rows);

  const Schema& schema() const { return schema_; }
  const std::vector<Attribute>& attributes() const {
    return schema_.attributes;
  }
  const Attribute& attribute(int col) const { return schema_.attributes[col]; }
  int num_attributes() const { return schema_.num_attributes(); }
  int class_index() const { return schema_.class_index; }
  int num_classes() const { return schema_.num_classes(); }
  size_t num_rows() const { return origin_.size(); }
  bool empty() const { return origin_.empty(); }

  double value(size_t row, int col) const {
    return cells_[row * schema_.attributes.size() + col];
  }
  std::span<const double> row(size_t r) const {
    const size_t width = schema_.attributes.size();
    return {cells_.data() + r * width, width};
  }
  int label(size_t row) const {
    return static_cast<int>(value(row, schema_.class_index));
  }
  std::vector<int> labels() const;
  std::vector<size_t> ClassCounts() const;
  size_t MissingCount() const;

  // Rows in the given order. Origin ids follow the rows.
  Dataset Subset(std::span<const size_t> rows) const;

  // Row ids in the dataset this one was (transitively) cut from.
  const std::vector<size_t>& origin() const { return origin_; }

  // Schema and cell equality (missing == missing); origin is ignored.
  bool operator==(const Dataset& other) const;

 private:
  Schema schema_;
  std::vector<double> cells_;
  std::vector<size_t> origin_;
};

struct DatasetSummary {
  size_t num_instances = 0;
  int num_numeric = 0;
  int num_nominal = 0;      // class attribute excluded
  double pct_missing = 0;   // over non-class cells, in percent
  double class_balance = 0; // minority / majority over present classes
  int num_classes = 0;      // classes with at least one instance
};

DatasetSummary Summarize(const Dataset& ds);

// Fold index per row.
struct FoldPlan {
  int k = 0;
  std::vector<int> assignments;

  std::vector<size_t> TestRows(int fold) const;
  std::vector<size_t> TrainRows(int fold) const;
  bool operator==(const FoldPlan&) const = default;
};

// Rows are shuffled with `seed`, grouped by class (class index order), and
// dealt round-robin to folds with one counter running across classes.
// Throws ArgumentError when k < 2 or k > rows.
FoldPlan StratifiedKFold(const Dataset& ds, int k, uint64_t seed);

// Per-row flag: true when the row goes to the held-out part. The held-out
// size is round(n * fraction), apportioned to classes by largest remainder.
// Throws ArgumentError unless 0 < fraction < 1 and both parts are non-empty.
std::vector<bool> StratifiedHoldout(std::span<const int> labels,
                                    int num_classes, double fraction,
                                    uint64_t seed);

struct DataSplit {
  Dataset train;
  Dataset valid;
};

// Stratified, disjoint partition; both parts keep the original row order.
DataSplit MetaSplit(const Dataset& ds, double valid_fraction, uint64_t seed);

}  // namespace hyperdt

#endif  // HYPERDT_DATASET_H_
