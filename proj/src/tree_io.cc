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

#include <charconv>
#include <sstream>

#include "hyperdt/config.h"
#include "hyperdt/dtree.h"
#include "hyperdt/errors.h"

namespace hyperdt {
namespace {

constexpr char kMagic[] = "hyperdt-tree 1";

std::string Join(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += FormatNumber(v[i]);
  }
  return out;
}

std::string Join(const std::vector<std::string>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += v[i];
  }
  return out;
}

void CheckName(const std::string& name) {
  if (name.empty() || name.find_first_of(" \t\r\n=,") != std::string::npos) {
    throw ArgumentError("name '" + name + "' cannot be written to a tree file");
  }
}

void WriteNode(const DecisionTree& tree, const Schema& schema, int index,
               std::ostringstream& out) {
  const TreeNode& node = tree.node(index);
  out << std::string(2 * node.depth, ' ');
  if (node.is_leaf()) {
    out << "leaf";
  } else {
    const Attribute& attr = schema.attributes[node.attribute];
    switch (node.test) {
      case TreeNode::Test::kNumericLE:
        out << "split " << attr.name << " <= " << FormatNumber(node.threshold);
        break;
      case TreeNode::Test::kNominalEquals:
        out << "split " << attr.name << " == " << attr.values[node.nominal_value];
        break;
      case TreeNode::Test::kNominalMultiway:
        out << "split " << attr.name << " in *";
        break;
      case TreeNode::Test::kLeaf:
        break;
    }
  }
  out << " predict=" << schema.class_attribute().values[node.prediction]
      << " dist=" << Join(node.distribution);
  if (!node.is_leaf()) out << " branch=" << Join(node.branch_weights);
  out << '\n';
  for (int c : node.children) WriteNode(tree, schema, c, out);
}

class TreeReader {
 public:
  explicit TreeReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(' ') == std::string::npos) continue;
      lines_.push_back({line, no});
    }
  }

  LoadedTree Read() {
    if (Done() || Peek() != kMagic) Fail("expected '" + std::string(kMagic) + "'");
    ++pos_;
    Schema schema;
    std::vector<double> impute;
    {
      auto words = Words();
      if (words.size() != 2 || words[0] != "relation") Fail("expected relation");
      schema.relation = words[1];
      ++pos_;
    }
    while (!Done()) {
      auto words = Words();
      if (words.empty()) break;
      const bool is_class = words[0] == "class";
      if (words[0] != "attribute" && !is_class) break;
      if (words.size() < 4) Fail("malformed attribute line");
      Attribute attr;
      if (words[1] == "numeric") {
        attr = Attribute::Numeric(words[2]);
      } else if (words[1] == "nominal") {
        attr = Attribute::Nominal(words[2], Split(Field(words, "values")));
      } else {
        Fail("unknown attribute kind '" + words[1] + "'");
      }
      if (is_class) {
        if (schema.class_index >= 0) Fail("second class attribute");
        schema.class_index = static_cast<int>(schema.attributes.size());
      }
      impute.push_back(Number(Field(words, "impute")));
      schema.attributes.push_back(std::move(attr));
      ++pos_;
    }
    try {
      schema.Validate();
    } catch (const SchemaError& e) {
      Fail(e.what());
    }
    schema_ = &schema;
    ReadNode(0);
    if (!Done()) Fail("trailing content");
    const int classes = schema.num_classes();
    return {schema, DecisionTree(classes, std::move(impute), std::move(nodes_))};
  }

 private:
  struct Line {
    std::string text;
    int number;
  };

  bool Done() const { return pos_ >= lines_.size(); }
  const std::string& Peek() const { return lines_[pos_].text; }

  [[noreturn]] void Fail(const std::string& what) const {
    const int line = Done() ? (lines_.empty() ? 0 : lines_.back().number)
                            : lines_[pos_].number;
    throw ParseError(what, line);
  }

  std::vector<std::string> Words() const {
    std::istringstream in(Peek());
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
  }

  std::string Field(const std::vector<std::string>& words,
                    const std::string& key) const {
    const std::string prefix = key + "=";
    for (const std::string& w : words) {
      if (w.rfind(prefix, 0) == 0) return w.substr(prefix.size());
    }
    Fail("missing '" + key + "='");
  }

  static std::vector<std::string> Split(const std::string& s) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
      const size_t comma = s.find(',', start);
      out.push_back(s.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  double Number(const std::string& s) const {
    double v;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      Fail("'" + s + "' is not a number");
    }
    return v;
  }

  std::vector<double> Numbers(const std::string& s) const {
    std::vector<double> out;
    for (const std::string& part : Split(s)) out.push_back(Number(part));
    return out;
  }

  int AttributeIndex(const std::string& name) const {
    for (int a = 0; a < schema_->num_attributes(); ++a) {
      if (schema_->attributes[a].name == name && a != schema_->class_index) {
        return a;
      }
    }
    Fail("unknown attribute '" + name + "'");
  }

  int ReadNode(int depth) {
    if (Done()) Fail("missing node");
    const std::string& text = Peek();
    const size_t indent = text.find_first_not_of(' ');
    if (indent != static_cast<size_t>(2 * depth)) {
      Fail("expected indentation " + std::to_string(2 * depth));
    }
    const auto words = Words();
    TreeNode node;
    node.depth = depth;
    const Attribute& cls = schema_->class_attribute();
    const int prediction = cls.IndexOf(Field(words, "predict"));
    if (prediction < 0) Fail("unknown class in predict=");
    node.prediction = prediction;
    node.distribution = Numbers(Field(words, "dist"));
    if (static_cast<int>(node.distribution.size()) != cls.num_values()) {
      Fail("dist= has the wrong arity");
    }
    int arity = 0;
    if (words[0] == "split") {
      if (words.size() < 4) Fail("malformed split");
      node.attribute = AttributeIndex(words[1]);
      const Attribute& attr = schema_->attributes[node.attribute];
      if (words[2] == "<=" && !attr.is_nominal()) {
        node.test = TreeNode::Test::kNumericLE;
        node.threshold = Number(words[3]);
        arity = 2;
      } else if (words[2] == "==" && attr.is_nominal()) {
        node.test = TreeNode::Test::kNominalEquals;
        node.nominal_value = attr.IndexOf(words[3]);
        if (node.nominal_value < 0) Fail("undeclared value '" + words[3] + "'");
        arity = 2;
      } else if (words[2] == "in" && attr.is_nominal()) {
        node.test = TreeNode::Test::kNominalMultiway;
        arity = attr.num_values();
      } else {
        Fail("malformed split test");
      }
      node.branch_weights = Numbers(Field(words, "branch"));
      if (static_cast<int>(node.branch_weights.size()) != arity) {
        Fail("branch= has the wrong arity");
      }
    } else if (words[0] != "leaf") {
      Fail("expected 'split' or 'leaf'");
    }
    ++pos_;
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(node));
    std::vector<int> children;
    for (int i = 0; i < arity; ++i) children.push_back(ReadNode(depth + 1));
    nodes_[index].children = std::move(children);
    return index;
  }

  std::vector<Line> lines_;
  size_t pos_ = 0;
  const Schema* schema_ = nullptr;
  std::vector<TreeNode> nodes_;
};

}  // namespace

std::string WriteTree(const DecisionTree& tree, const Schema& schema) {
  std::ostringstream out;
  out << kMagic << '\n';
  CheckName(schema.relation);
  out << "relation " << schema.relation << '\n';
  for (int a = 0; a < schema.num_attributes(); ++a) {
    const Attribute& attr = schema.attributes[a];
    CheckName(attr.name);
    out << (a == schema.class_index ? "class " : "attribute ")
        << (attr.is_nominal() ? "nominal " : "numeric ") << attr.name;
    if (attr.is_nominal()) {
      for (const std::string& v : attr.values) CheckName(v);
      out << " values=" << Join(attr.values);
    }
    out << " impute=" << FormatNumber(tree.impute_values()[a]) << '\n';
  }
  WriteNode(tree, schema, 0, out);
  return out.str();
}

LoadedTree ParseTree(const std::string& text) { return TreeReader(text).Read(); }

}  // namespace hyperdt
