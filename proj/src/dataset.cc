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

#include "hyperdt/dataset.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

#include "hyperdt/errors.h"
#include "hyperdt/random.h"

namespace hyperdt {

Attribute Attribute::Numeric(std::string name) {
  return Attribute{std::move(name), Kind::kNumeric, {}};
}

Attribute Attribute::Nominal(std::string name,
                             std::vector<std::string> values) {
  return Attribute{std::move(name), Kind::kNominal, std::move(values)};
}

int Attribute::IndexOf(std::string_view value) const {
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] == value) return static_cast<int>(i);
  }
  return -1;
}

void Schema::Validate() const {
  std::set<std::string> names;
  for (const Attribute& a : attributes) {
    if (!names.insert(a.name).second) {
      throw SchemaError("duplicate attribute name '" + a.name + "'");
    }
    if (a.is_nominal()) {
      if (a.values.empty()) {
        throw SchemaError("nominal attribute '" + a.name +
                          "' has an empty value list");
      }
      std::set<std::string> seen(a.values.begin(), a.values.end());
      if (seen.size() != a.values.size()) {
        throw SchemaError("nominal attribute '" + a.name +
                          "' lists a value twice");
      }
    }
  }
  if (class_index < 0 || class_index >= num_attributes()) {
    throw SchemaError("class index out of range");
  }
  if (!attributes[class_index].is_nominal()) {
    throw SchemaError("class attribute '" + attributes[class_index].name +
                      "' is not nominal");
  }
}

Dataset::Dataset(Schema schema, std::vector<double> cells)
    : schema_(std::move(schema)), cells_(std::move(cells)) {
  schema_.Validate();
  const size_t width = schema_.attributes.size();
  if (width == 0 || cells_.size() % width != 0) {
    throw ArgumentError("cell count is not a multiple of the row width");
  }
  const size_t rows = cells_.size() / width;
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < width; ++c) {
      const double v = cells_[r * width + c];
      const Attribute& a = schema_.attributes[c];
      if (IsMissing(v)) {
        if (static_cast<int>(c) == schema_.class_index) {
          throw ArgumentError("row " + std::to_string(r) +
                              " has a missing class value");
        }
        continue;
      }
      if (a.is_nominal() &&
          (v < 0 || v >= a.num_values() || v != std::floor(v))) {
        throw ArgumentError("row " + std::to_string(r) + ", attribute '" +
                            a.name + "': value index out of range");
      }
    }
  }
  origin_.resize(rows);
  std::iota(origin_.begin(), origin_.end(), size_t{0});
}

Dataset Dataset::FromRows(Schema schema,
                          const std::vector<std::vector<double>>& rows) {
  std::vector<double> cells;
  for (const auto& row : rows) {
    if (row.size() != schema.attributes.size()) {
      throw ArgumentError("row arity does not match the schema");
    }
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return Dataset(std::move(schema), std::move(cells));
}

std::vector<int> Dataset::labels() const {
  std::vector<int> out(num_rows());
  for (size_t r = 0; r < out.size(); ++r) out[r] = label(r);
  return out;
}

std::vector<size_t> Dataset::ClassCounts() const {
  std::vector<size_t> counts(num_classes(), 0);
  for (size_t r = 0; r < num_rows(); ++r) ++counts[label(r)];
  return counts;
}

size_t Dataset::MissingCount() const {
  return static_cast<size_t>(
      std::count_if(cells_.begin(), cells_.end(),
                    [](double v) { return IsMissing(v); }));
}

Dataset Dataset::Subset(std::span<const size_t> rows) const {
  Dataset out;
  out.schema_ = schema_;
  const size_t width = schema_.attributes.size();
  out.cells_.reserve(rows.size() * width);
  out.origin_.reserve(rows.size());
  for (size_t r : rows) {
    if (r >= num_rows()) throw ArgumentError("subset row out of range");
    const auto src = row(r);
    out.cells_.insert(out.cells_.end(), src.begin(), src.end());
    out.origin_.push_back(origin_[r]);
  }
  return out;
}

bool Dataset::operator==(const Dataset& other) const {
  if (!(schema_ == other.schema_) || cells_.size() != other.cells_.size()) {
    return false;
  }
  for (size_t i = 0; i < cells_.size(); ++i) {
    const double a = cells_[i];
    const double b = other.cells_[i];
    if (IsMissing(a) != IsMissing(b)) return false;
    if (!IsMissing(a) && a != b) return false;
  }
  return true;
}

DatasetSummary Summarize(const Dataset& ds) {
  DatasetSummary s;
  s.num_instances = ds.num_rows();
  size_t missing = 0;
  for (int c = 0; c < ds.num_attributes(); ++c) {
    if (c == ds.class_index()) continue;
    if (ds.attribute(c).is_nominal()) {
      ++s.num_nominal;
    } else {
      ++s.num_numeric;
    }
    for (size_t r = 0; r < ds.num_rows(); ++r) {
      if (IsMissing(ds.value(r, c))) ++missing;
    }
  }
  const size_t cells = ds.num_rows() * (ds.num_attributes() - 1);
  s.pct_missing = cells == 0 ? 0.0 : 100.0 * missing / cells;

  size_t lo = 0, hi = 0;
  for (size_t n : ds.ClassCounts()) {
    if (n == 0) continue;
    ++s.num_classes;
    lo = (s.num_classes == 1) ? n : std::min(lo, n);
    hi = std::max(hi, n);
  }
  s.class_balance = hi == 0 ? 0.0 : static_cast<double>(lo) / hi;
  return s;
}

std::vector<size_t> FoldPlan::TestRows(int fold) const {
  std::vector<size_t> out;
  for (size_t r = 0; r < assignments.size(); ++r) {
    if (assignments[r] == fold) out.push_back(r);
  }
  return out;
}

std::vector<size_t> FoldPlan::TrainRows(int fold) const {
  std::vector<size_t> out;
  for (size_t r = 0; r < assignments.size(); ++r) {
    if (assignments[r] != fold) out.push_back(r);
  }
  return out;
}

namespace {

// Row ids grouped by class; within a class, in seed-shuffled order.
std::vector<std::vector<size_t>> ShuffledByClass(std::span<const int> labels,
                                                 int num_classes,
                                                 uint64_t seed) {
  std::vector<size_t> order(labels.size());
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<size_t>(order));
  std::vector<std::vector<size_t>> groups(num_classes);
  for (size_t r : order) groups[labels[r]].push_back(r);
  return groups;
}

}  // namespace

FoldPlan StratifiedKFold(const Dataset& ds, int k, uint64_t seed) {
  if (k < 2) throw ArgumentError("k must be at least 2");
  if (static_cast<size_t>(k) > ds.num_rows()) {
    throw ArgumentError("k = " + std::to_string(k) + " exceeds the " +
                        std::to_string(ds.num_rows()) + " available rows");
  }
  const std::vector<int> labels = ds.labels();
  FoldPlan plan;
  plan.k = k;
  plan.assignments.assign(ds.num_rows(), 0);
  size_t next = 0;
  for (const auto& group : ShuffledByClass(labels, ds.num_classes(), seed)) {
    for (size_t r : group) plan.assignments[r] = static_cast<int>(next++ % k);
  }
  return plan;
}

std::vector<bool> StratifiedHoldout(std::span<const int> labels,
                                    int num_classes, double fraction,
                                    uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ArgumentError("holdout fraction must lie in (0, 1)");
  }
  const size_t n = labels.size();
  const auto target = static_cast<size_t>(std::llround(n * fraction));
  if (target == 0 || target >= n) {
    throw ArgumentError("holdout fraction " + std::to_string(fraction) +
                        " leaves an empty part of " + std::to_string(n) +
                        " rows");
  }
  auto groups = ShuffledByClass(labels, num_classes, seed);

  // Largest-remainder apportionment of `target` over the classes.
  std::vector<size_t> quota(num_classes);
  std::vector<std::pair<double, int>> remainders;
  size_t assigned = 0;
  for (int c = 0; c < num_classes; ++c) {
    const double exact =
        static_cast<double>(groups[c].size()) * target / static_cast<double>(n);
    quota[c] = static_cast<size_t>(std::floor(exact));
    assigned += quota[c];
    remainders.emplace_back(exact - quota[c], c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t i = 0; assigned < target; ++i) {
    ++quota[remainders[i % remainders.size()].second];
    ++assigned;
  }

  std::vector<bool> held_out(n, false);
  for (int c = 0; c < num_classes; ++c) {
    for (size_t i = 0; i < quota[c] && i < groups[c].size(); ++i) {
      held_out[groups[c][i]] = true;
    }
  }
  return held_out;
}

DataSplit MetaSplit(const Dataset& ds, double valid_fraction, uint64_t seed) {
  const std::vector<int> labels = ds.labels();
  const std::vector<bool> held_out =
      StratifiedHoldout(labels, ds.num_classes(), valid_fraction, seed);
  std::vector<size_t> train_rows, valid_rows;
  for (size_t r = 0; r < held_out.size(); ++r) {
    (held_out[r] ? valid_rows : train_rows).push_back(r);
  }
  return {ds.Subset(train_rows), ds.Subset(valid_rows)};
}

}  // namespace hyperdt
