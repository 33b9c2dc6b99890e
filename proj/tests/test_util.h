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

#ifndef HYPERDT_TESTS_TEST_UTIL_H_
#define HYPERDT_TESTS_TEST_UTIL_H_

#include <cmath>
#include <string>
#include <vector>

#include "hyperdt/dataset.h"
#include "hyperdt/random.h"

namespace hyperdt::testing {

// Random table with the class as last column. Nominal attribute i has
// 2 + i % 3 values; `missing_rate` applies to non-class cells.
inline Dataset RandomDataset(Rng& rng, size_t rows, int numeric, int nominal,
                             int classes, double missing_rate = 0.0) {
  Schema schema;
  schema.relation = "random";
  for (int i = 0; i < numeric; ++i) {
    schema.attributes.push_back(Attribute::Numeric("n" + std::to_string(i)));
  }
  for (int i = 0; i < nominal; ++i) {
    std::vector<std::string> values;
    for (int v = 0; v < 2 + i % 3; ++v) values.push_back("v" + std::to_string(v));
    schema.attributes.push_back(
        Attribute::Nominal("c" + std::to_string(i), std::move(values)));
  }
  std::vector<std::string> labels;
  for (int c = 0; c < classes; ++c) labels.push_back("k" + std::to_string(c));
  schema.attributes.push_back(Attribute::Nominal("class", labels));
  schema.class_index = numeric + nominal;

  std::vector<double> cells;
  for (size_t r = 0; r < rows; ++r) {
    for (int a = 0; a < numeric + nominal; ++a) {
      if (rng.Bernoulli(missing_rate)) {
        cells.push_back(kMissing);
      } else if (a < numeric) {
        cells.push_back(std::round((rng.Uniform01() * 20 - 10) * 100) / 100);
      } else {
        cells.push_back(static_cast<double>(
            rng.UniformIndex(schema.attributes[a].num_values())));
      }
    }
    // Every class present when rows allow it.
    cells.push_back(static_cast<double>(
        r < static_cast<size_t>(classes) ? r : rng.UniformIndex(classes)));
  }
  return Dataset(std::move(schema), std::move(cells));
}

// Nominal-class dataset with a single numeric attribute.
inline Dataset LabelsOnly(const std::vector<int>& labels, int classes) {
  Schema schema;
  schema.relation = "labels";
  schema.attributes.push_back(Attribute::Numeric("x"));
  std::vector<std::string> names;
  for (int c = 0; c < classes; ++c) names.push_back("k" + std::to_string(c));
  schema.attributes.push_back(Attribute::Nominal("class", names));
  schema.class_index = 1;
  std::vector<double> cells;
  for (size_t i = 0; i < labels.size(); ++i) {
    cells.push_back(static_cast<double>(i));
    cells.push_back(labels[i]);
  }
  return Dataset(std::move(schema), std::move(cells));
}

inline std::string DataPath(const std::string& name) {
  return std::string(HYPERDT_DATA_DIR) + "/" + name;
}

}  // namespace hyperdt::testing

#endif  // HYPERDT_TESTS_TEST_UTIL_H_
