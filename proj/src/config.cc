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

#include "hyperdt/config.h"

#include <charconv>
#include <cmath>

#include "hyperdt/errors.h"

namespace hyperdt {

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t at = s.find(sep, start);
    out.push_back(Trim(s.substr(start, at - start)));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

std::string FormatNumber(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::optional<double> ParseNumber(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

KeyValues KeyValues::Parse(std::string_view text) {
  KeyValues out;
  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string line = Trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
    Entry e{Trim(line.substr(0, eq)), Trim(line.substr(eq + 1)), line_no};
    if (e.key.empty()) throw ParseError("empty key", line_no);
    if (out.Find(e.key)) {
      throw ParseError("duplicate key '" + e.key + "'", line_no);
    }
    out.entries_.push_back(std::move(e));
  }
  out.used_.assign(out.entries_.size(), false);
  return out;
}

const KeyValues::Entry* KeyValues::Find(std::string_view key) const {
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].key == key) {
      if (i < used_.size()) used_[i] = true;
      return &entries_[i];
    }
  }
  return nullptr;
}

const KeyValues::Entry& KeyValues::RequireEntry(std::string_view key) const {
  const Entry* e = Find(key);
  if (!e) throw ParseError("missing key '" + std::string(key) + "'", 0);
  return *e;
}

std::optional<std::string> KeyValues::Get(std::string_view key) const {
  const Entry* e = Find(key);
  if (!e) return std::nullopt;
  return e->value;
}

std::string KeyValues::Require(std::string_view key) const {
  return RequireEntry(key).value;
}

double KeyValues::Number(std::string_view key) const {
  const Entry& e = RequireEntry(key);
  const auto v = ParseNumber(e.value);
  if (!v || !std::isfinite(*v)) {
    throw ParseError("'" + e.key + "' is not a number: '" + e.value + "'", e.line);
  }
  return *v;
}

double KeyValues::NumberOr(std::string_view key, double fallback) const {
  return Has(key) ? Number(key) : fallback;
}

int64_t KeyValues::Integer(std::string_view key) const {
  const Entry& e = RequireEntry(key);
  int64_t v;
  const auto [ptr, ec] =
      std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (e.value.empty() || ec != std::errc() ||
      ptr != e.value.data() + e.value.size()) {
    throw ParseError("'" + e.key + "' is not an integer: '" + e.value + "'",
                     e.line);
  }
  return v;
}

int64_t KeyValues::IntegerOr(std::string_view key, int64_t fallback) const {
  return Has(key) ? Integer(key) : fallback;
}

std::vector<std::string> KeyValues::List(std::string_view key) const {
  const Entry& e = RequireEntry(key);
  std::vector<std::string> out = SplitList(e.value);
  for (const std::string& item : out) {
    if (item.empty()) throw ParseError("empty item in '" + e.key + "'", e.line);
  }
  return out;
}

std::vector<double> KeyValues::Numbers(std::string_view key) const {
  std::vector<double> out;
  for (const std::string& item : List(key)) {
    const auto v = ParseNumber(item);
    if (!v || !std::isfinite(*v)) {
      throw ParseError("'" + item + "' in '" + std::string(key) +
                           "' is not a number",
                       Line(key));
    }
    out.push_back(*v);
  }
  return out;
}

int KeyValues::Line(std::string_view key) const { return RequireEntry(key).line; }

void KeyValues::RejectUnused() const {
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (!used_[i]) {
      throw ParseError("unknown key '" + entries_[i].key + "'", entries_[i].line);
    }
  }
}

}  // namespace hyperdt
