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

#ifndef HYPERDT_CONFIG_H_
#define HYPERDT_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdt {

std::string Trim(std::string_view s);
// Splits on `sep` and trims each piece.
std::vector<std::string> SplitList(std::string_view s, char sep = ',');
// Shortest text that reads back to the same double.
std::string FormatNumber(double v);
// Whole-string parse; nullopt on trailing junk.
std::optional<double> ParseNumber(std::string_view s);

// `key = value` lines; blank lines and lines starting with '#' are skipped.
// Accessors throw ParseError carrying the entry's line.
class KeyValues {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };

  // ParseError on a line without '=', an empty key or a repeated key.
  static KeyValues Parse(std::string_view text);

  const std::vector<Entry>& entries() const { return entries_; }
  bool Has(std::string_view key) const { return Find(key) != nullptr; }
  std::optional<std::string> Get(std::string_view key) const;
  std::string Require(std::string_view key) const;
  double Number(std::string_view key) const;
  double NumberOr(std::string_view key, double fallback) const;
  int64_t Integer(std::string_view key) const;
  int64_t IntegerOr(std::string_view key, int64_t fallback) const;
  // Comma-separated; empty items are an error.
  std::vector<std::string> List(std::string_view key) const;
  std::vector<double> Numbers(std::string_view key) const;
  int Line(std::string_view key) const;
  // ParseError on the first entry no accessor has read.
  void RejectUnused() const;

 private:
  const Entry* Find(std::string_view key) const;
  const Entry& RequireEntry(std::string_view key) const;

  std::vector<Entry> entries_;
  mutable std::vector<bool> used_;
};

}  // namespace hyperdt

#endif  // HYPERDT_CONFIG_H_
