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

#include "hyperdt/arff.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "hyperdt/errors.h"

namespace hyperdt {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

struct Field {
  std::string text;
  bool quoted = false;
};

// Splits on `sep` outside quotes. Quoted fields support backslash escapes.
std::vector<Field> SplitFields(std::string_view line, char sep, int line_no) {
  std::vector<Field> fields;
  size_t i = 0;
  while (true) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    Field field;
    if (i < line.size() && (line[i] == '\'' || line[i] == '"')) {
      const char quote = line[i++];
      bool closed = false;
      while (i < line.size()) {
        char c = line[i++];
        if (c == '\\' && i < line.size()) {
          field.text.push_back(line[i++]);
        } else if (c == quote) {
          closed = true;
          break;
        } else {
          field.text.push_back(c);
        }
      }
      if (!closed) throw ParseError("unterminated quote", line_no);
      field.quoted = true;
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i < line.size() && line[i] != sep) {
        throw ParseError("unexpected text after quoted value", line_no);
      }
    } else {
      const size_t end = std::min(line.find(sep, i), line.size());
      field.text = std::string(Trim(line.substr(i, end - i)));
      i = end;
    }
    fields.push_back(std::move(field));
    if (i >= line.size()) break;
    ++i;  // separator
  }
  return fields;
}

bool ParseNumber(std::string_view token, double* out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  if (token.empty()) return false;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), *out);
  return ec == std::errc() && ptr == token.data() + token.size() &&
         std::isfinite(*out);
}

std::string FormatNumber(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string QuoteIfNeeded(const std::string& s) {
  const bool plain =
      !s.empty() && s != "?" &&
      s.find_first_of(" \t,'\"%{}\\") == std::string::npos;
  if (plain) return s;
  std::string out = "'";
  for (char c : s) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

// Reads a possibly quoted name token from the front of `rest`.
std::string TakeName(std::string_view& rest, int line_no) {
  rest = Trim(rest);
  if (rest.empty()) throw ParseError("missing name", line_no);
  std::string name;
  if (rest.front() == '\'' || rest.front() == '"') {
    const char quote = rest.front();
    size_t i = 1;
    bool closed = false;
    while (i < rest.size()) {
      char c = rest[i++];
      if (c == '\\' && i < rest.size()) {
        name.push_back(rest[i++]);
      } else if (c == quote) {
        closed = true;
        break;
      } else {
        name.push_back(c);
      }
    }
    if (!closed) throw ParseError("unterminated quote", line_no);
    rest.remove_prefix(i);
  } else {
    size_t end = 0;
    while (end < rest.size() &&
           !std::isspace(static_cast<unsigned char>(rest[end])) &&
           rest[end] != '{') {
      ++end;
    }
    name = std::string(rest.substr(0, end));
    rest.remove_prefix(end);
  }
  return name;
}

Attribute ParseAttributeLine(std::string_view rest, int line_no) {
  std::string name = TakeName(rest, line_no);
  rest = Trim(rest);
  if (rest.empty()) throw ParseError("attribute '" + name + "' has no type", line_no);
  if (rest.front() == '{') {
    if (rest.back() != '}') {
      throw ParseError("unterminated nominal value list", line_no);
    }
    std::string_view body = Trim(rest.substr(1, rest.size() - 2));
    if (body.empty()) {
      throw ParseError("nominal attribute '" + name + "' has no values",
                       line_no);
    }
    std::vector<std::string> values;
    std::set<std::string> seen;
    for (Field& f : SplitFields(body, ',', line_no)) {
      if (f.text.empty()) throw ParseError("empty nominal value", line_no);
      if (!seen.insert(f.text).second) {
        throw ParseError("duplicate nominal value '" + f.text + "'", line_no);
      }
      values.push_back(std::move(f.text));
    }
    return Attribute::Nominal(std::move(name), std::move(values));
  }
  const std::string type = Lower(rest);
  if (type == "numeric" || type == "real" || type == "integer") {
    return Attribute::Numeric(std::move(name));
  }
  throw ParseError("unsupported attribute type '" + std::string(rest) + "'",
                   line_no);
}

int ChooseClass(const std::vector<Attribute>& attributes,
                const std::optional<std::string>& requested) {
  if (requested) {
    for (size_t i = 0; i < attributes.size(); ++i) {
      if (attributes[i].name == *requested) {
        if (!attributes[i].is_nominal()) {
          throw SchemaError("class attribute '" + *requested +
                            "' is not nominal");
        }
        return static_cast<int>(i);
      }
    }
    throw SchemaError("class attribute '" + *requested + "' not declared");
  }
  for (int i = static_cast<int>(attributes.size()) - 1; i >= 0; --i) {
    if (attributes[i].is_nominal()) return i;
  }
  throw SchemaError("no nominal attribute usable as class");
}

void RequireTwoClasses(const Dataset& ds) {
  int present = 0;
  for (size_t n : ds.ClassCounts()) present += n > 0 ? 1 : 0;
  if (present < 2) {
    throw SchemaError("fewer than two class values present in the data");
  }
}

}  // namespace

Dataset ParseArff(std::string_view text,
                  const std::optional<std::string>& class_attribute) {
  Schema schema;
  std::vector<std::pair<int, std::vector<Field>>> raw_rows;
  bool in_data = false;
  bool saw_relation = false;
  std::set<std::string> names;

  const auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string_view line = Trim(lines[i]);
    if (line.empty() || line.front() == '%') continue;
    if (!in_data) {
      if (line.front() != '@') {
        throw ParseError("expected a declaration", line_no);
      }
      size_t kw_end = 1;
      while (kw_end < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[kw_end]))) {
        ++kw_end;
      }
      const std::string keyword = Lower(line.substr(0, kw_end));
      std::string_view rest = line.substr(kw_end);
      if (keyword == "@relation") {
        schema.relation = TakeName(rest, line_no);
        saw_relation = true;
      } else if (keyword == "@attribute") {
        Attribute attr = ParseAttributeLine(rest, line_no);
        if (!names.insert(attr.name).second) {
          throw ParseError("duplicate attribute '" + attr.name + "'", line_no);
        }
        schema.attributes.push_back(std::move(attr));
      } else if (keyword == "@data") {
        in_data = true;
      } else {
        throw ParseError("unknown declaration '" + keyword + "'", line_no);
      }
      continue;
    }
    if (line.front() == '{') {
      throw ParseError("sparse ARFF rows are not supported", line_no);
    }
    raw_rows.emplace_back(line_no, SplitFields(line, ',', line_no));
  }
  if (!saw_relation) throw ParseError("missing @relation", 0);
  if (schema.attributes.empty()) throw ParseError("no attributes declared", 0);
  if (!in_data) throw ParseError("missing @data section", 0);

  schema.class_index = ChooseClass(schema.attributes, class_attribute);
  const size_t width = schema.attributes.size();
  std::vector<double> cells;
  cells.reserve(raw_rows.size() * width);
  for (const auto& [line_no, fields] : raw_rows) {
    if (fields.size() != width) {
      throw ParseError("row has " + std::to_string(fields.size()) +
                           " values, expected " + std::to_string(width),
                       line_no);
    }
    for (size_t c = 0; c < width; ++c) {
      const Field& f = fields[c];
      const Attribute& a = schema.attributes[c];
      if (!f.quoted && f.text == "?") {
        if (static_cast<int>(c) == schema.class_index) {
          throw ParseError("class value is missing", line_no);
        }
        cells.push_back(kMissing);
      } else if (a.is_nominal()) {
        const int idx = a.IndexOf(f.text);
        if (idx < 0) {
          throw ParseError("value '" + f.text +
                               "' is not declared for attribute '" + a.name +
                               "'",
                           line_no);
        }
        cells.push_back(idx);
      } else {
        double v;
        if (!ParseNumber(f.text, &v)) {
          throw ParseError("non-numeric value '" + f.text +
                               "' for attribute '" + a.name + "'",
                           line_no);
        }
        cells.push_back(v);
      }
    }
  }
  Dataset ds(std::move(schema), std::move(cells));
  RequireTwoClasses(ds);
  return ds;
}

std::string WriteArff(const Dataset& ds) {
  std::ostringstream out;
  out << "@relation "
      << QuoteIfNeeded(ds.schema().relation.empty() ? "data"
                                                    : ds.schema().relation)
      << "\n\n";
  for (const Attribute& a : ds.attributes()) {
    out << "@attribute " << QuoteIfNeeded(a.name) << ' ';
    if (a.is_nominal()) {
      out << '{';
      for (size_t i = 0; i < a.values.size(); ++i) {
        if (i) out << ',';
        out << QuoteIfNeeded(a.values[i]);
      }
      out << '}';
    } else {
      out << "numeric";
    }
    out << '\n';
  }
  out << "\n@data\n";
  for (size_t r = 0; r < ds.num_rows(); ++r) {
    for (int c = 0; c < ds.num_attributes(); ++c) {
      if (c) out << ',';
      const double v = ds.value(r, c);
      if (IsMissing(v)) {
        out << '?';
      } else if (ds.attribute(c).is_nominal()) {
        out << QuoteIfNeeded(ds.attribute(c).values[static_cast<int>(v)]);
      } else {
        out << FormatNumber(v);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::vector<CsvColumn> ParseCsvSchema(std::string_view text) {
  std::vector<CsvColumn> columns;
  int classes = 0;
  const auto lines = SplitLines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string_view line = Trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = SplitFields(line, ',', line_no);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError("expected name,kind[,values]", line_no);
    }
    CsvColumn col;
    col.name = fields[0].text;
    if (col.name.empty()) throw ParseError("empty column name", line_no);
    const std::string kind = Lower(fields[1].text);
    if (kind == "numeric") {
      col.kind = CsvColumn::Kind::kNumeric;
    } else if (kind == "nominal") {
      col.kind = CsvColumn::Kind::kNominal;
    } else if (kind == "class") {
      col.kind = CsvColumn::Kind::kClass;
      ++classes;
    } else {
      throw ParseError("unknown column kind '" + fields[1].text + "'",
                       line_no);
    }
    if (fields.size() == 3) {
      if (col.kind == CsvColumn::Kind::kNumeric) {
        throw ParseError("numeric column cannot list values", line_no);
      }
      for (const Field& v : SplitFields(fields[2].text, '|', line_no)) {
        col.values.push_back(v.text);
      }
    }
    columns.push_back(std::move(col));
  }
  if (classes != 1) {
    throw SchemaError("CSV schema must declare exactly one class column");
  }
  return columns;
}

Dataset ParseCsv(std::string_view text, const std::vector<CsvColumn>& columns) {
  const auto lines = SplitLines(text);
  size_t i = 0;
  while (i < lines.size() && Trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw ParseError("missing CSV header", 0);
  const auto header = SplitFields(Trim(lines[i]), ',', static_cast<int>(i) + 1);
  if (header.size() != columns.size()) {
    throw ParseError("header has " + std::to_string(header.size()) +
                         " columns, schema declares " +
                         std::to_string(columns.size()),
                     static_cast<int>(i) + 1);
  }
  Schema schema;
  schema.relation = "csv";
  for (size_t c = 0; c < columns.size(); ++c) {
    if (header[c].text != columns[c].name) {
      throw ParseError("header column '" + header[c].text +
                           "' does not match schema column '" +
                           columns[c].name + "'",
                       static_cast<int>(i) + 1);
    }
    Attribute a;
    a.name = columns[c].name;
    if (columns[c].kind == CsvColumn::Kind::kNumeric) {
      a.kind = Attribute::Kind::kNumeric;
    } else {
      a.kind = Attribute::Kind::kNominal;
      a.values = columns[c].values;
    }
    if (columns[c].kind == CsvColumn::Kind::kClass) {
      schema.class_index = static_cast<int>(c);
    }
    schema.attributes.push_back(std::move(a));
  }

  const size_t width = columns.size();
  std::vector<double> cells;
  size_t data_row = 0;
  for (++i; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    std::string_view line = Trim(lines[i]);
    if (line.empty()) continue;
    ++data_row;
    const auto fields = SplitFields(line, ',', line_no);
    if (fields.size() != width) {
      throw ParseError("row " + std::to_string(data_row) + " has " +
                           std::to_string(fields.size()) +
                           " values, expected " + std::to_string(width),
                       line_no);
    }
    for (size_t c = 0; c < width; ++c) {
      const Field& f = fields[c];
      Attribute& a = schema.attributes[c];
      const bool missing = !f.quoted && (f.text.empty() || f.text == "?");
      if (missing) {
        if (static_cast<int>(c) == schema.class_index) {
          throw ParseError("row " + std::to_string(data_row) +
                               ": class value is missing",
                           line_no);
        }
        cells.push_back(kMissing);
      } else if (a.is_nominal()) {
        int idx = a.IndexOf(f.text);
        if (idx < 0) {
          if (!columns[c].values.empty()) {
            throw ParseError("row " + std::to_string(data_row) +
                                 ", column '" + a.name + "': value '" +
                                 f.text + "' is not declared",
                             line_no);
          }
          a.values.push_back(f.text);
          idx = a.num_values() - 1;
        }
        cells.push_back(idx);
      } else {
        double v;
        if (!ParseNumber(f.text, &v)) {
          throw ParseError("row " + std::to_string(data_row) + ", column '" +
                               a.name + "': non-numeric value '" + f.text +
                               "'",
                           line_no);
        }
        cells.push_back(v);
      }
    }
  }
  for (const Attribute& a : schema.attributes) {
    if (a.is_nominal() && a.values.empty()) {
      throw SchemaError("nominal column '" + a.name + "' has no values");
    }
  }
  Dataset ds(std::move(schema), std::move(cells));
  RequireTwoClasses(ds);
  return ds;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

Dataset LoadDataset(const std::string& path,
                    const std::optional<std::string>& class_attribute,
                    const std::optional<std::string>& csv_schema_path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           Lower(path.substr(path.size() - suffix.size())) == suffix;
  };
  if (ends_with(".csv")) {
    const auto columns =
        ParseCsvSchema(ReadTextFile(csv_schema_path.value_or(path + ".schema")));
    return ParseCsv(ReadTextFile(path), columns);
  }
  return ParseArff(ReadTextFile(path), class_attribute);
}

}  // namespace hyperdt
