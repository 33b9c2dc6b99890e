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

#ifndef HYPERDT_ARFF_H_
#define HYPERDT_ARFF_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdt/dataset.h"

namespace hyperdt {

// Supported ARFF subset: @relation, @attribute with numeric/real/integer or
// a nominal {brace list}, @data with dense comma-separated rows, '?' for
// missing cells and whole-line '%' comments. Keywords are case-insensitive;
// names and values may be single- or double-quoted.
//
// The class attribute is `class_attribute` when given, otherwise the last
// nominal attribute. Errors: ParseError (with line) for malformed text,
// undeclared nominal values and row arity mismatches; SchemaError when no
// usable class attribute exists or fewer than two classes are present.
Dataset ParseArff(std::string_view text,
                  const std::optional<std::string>& class_attribute = {});

// Inverse of ParseArff: ParseArff(WriteArff(ds), class name) == ds.
std::string WriteArff(const Dataset& ds);

struct CsvColumn {
  enum class Kind { kNumeric, kNominal, kClass };
  std::string name;
  Kind kind = Kind::kNumeric;
  // Declared nominal/class values. Empty: collected in order of first
  // appearance in the data.
  std::vector<std::string> values;
};

// Sidecar schema: one column per line, `name,kind[,v1|v2|...]` with kind in
// {numeric, nominal, class}; blank lines and '#' comments are skipped.
// Exactly one class column is required.
std::vector<CsvColumn> ParseCsvSchema(std::string_view text);

// The first CSV line is a header that must name the schema columns in
// order. Empty cells and '?' are missing.
Dataset ParseCsv(std::string_view text, const std::vector<CsvColumn>& schema);

// Throws IoError with the path on failure.
std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view contents);

// Dispatches on extension: `.arff`, or `.csv` with the schema read from
// `<path>.schema` unless `csv_schema_path` is given.
Dataset LoadDataset(const std::string& path,
                    const std::optional<std::string>& class_attribute = {},
                    const std::optional<std::string>& csv_schema_path = {});

}  // namespace hyperdt

#endif  // HYPERDT_ARFF_H_
