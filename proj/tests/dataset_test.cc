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

#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "hyperdt/arff.h"
#include "hyperdt/dataset.h"
#include "hyperdt/errors.h"
#include "test_util.h"

namespace hyperdt {
namespace {

using testing::LabelsOnly;
using testing::RandomDataset;

constexpr char kSmallArff[] = R"(% toy
@relation toy
@attribute temp numeric
@attribute play {yes,no}
@data
1.5,yes
?,no
3,yes
)";

TEST(ParseArffTest, CountsRowsAndMissingCells) {
  const Dataset ds = ParseArff(kSmallArff);
  EXPECT_EQ(ds.num_rows(), 3u);
  EXPECT_EQ(ds.MissingCount(), 1u);
  EXPECT_EQ(ds.class_index(), 1);
  EXPECT_TRUE(IsMissing(ds.value(1, 0)));
  EXPECT_EQ(ds.value(2, 0), 3.0);
}

TEST(ParseArffTest, UndeclaredNominalValueReportsLine) {
  const std::string text =
      "@relation t\n@attribute a {yes,no}\n@attribute c {p,q}\n@data\n"
      "yes,p\nmaybe,q\n";
  try {
    ParseArff(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 6);
  }
}

TEST(ParseArffTest, ArityMismatchAndMissingClassAreErrors) {
  EXPECT_THROW(ParseArff("@relation t\n@attribute a numeric\n@attribute c {p,q}\n"
                         "@data\n1,p,3\n2,q\n"),
               ParseError);
  EXPECT_THROW(ParseArff("@relation t\n@attribute a numeric\n@attribute c {p,q}\n"
                         "@data\n1,p\n2,?\n"),
               ParseError);
}

TEST(ParseArffTest, NoUsableClassIsSchemaError) {
  EXPECT_THROW(ParseArff("@relation t\n@attribute a numeric\n@data\n1\n2\n"),
               SchemaError);
  EXPECT_THROW(ParseArff("@relation t\n@attribute a numeric\n@attribute c {p,q}\n"
                         "@data\n1,p\n2,p\n"),
               SchemaError);
}

TEST(ParseArffTest, ClassDefaultsToLastNominalAndCanBeOverridden) {
  const std::string text =
      "@relation t\n@attribute a {x,y}\n@attribute b {p,q}\n@attribute n real\n"
      "@data\nx,p,1\ny,q,2\n";
  EXPECT_EQ(ParseArff(text).class_index(), 1);
  EXPECT_EQ(ParseArff(text, "a").class_index(), 0);
  EXPECT_THROW(ParseArff(text, "n"), SchemaError);
}

TEST(ParseArffTest, QuotedNamesAndCaseInsensitiveKeywords) {
  const Dataset ds = ParseArff(
      "@RELATION 'my data'\n@ATTRIBUTE 'first col' NUMERIC\n"
      "@Attribute class {'a b',c}\n@DATA\n1,'a b'\n2,c\n");
  EXPECT_EQ(ds.schema().relation, "my data");
  EXPECT_EQ(ds.attribute(0).name, "first col");
  EXPECT_EQ(ds.label(0), 0);
}

TEST(ParseArffTest, RoundTripOnRandomFiles) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset ds = RandomDataset(rng, 2 + rng.UniformIndex(30),
                                     static_cast<int>(rng.UniformIndex(4)),
                                     static_cast<int>(rng.UniformIndex(4)),
                                     2 + static_cast<int>(rng.UniformIndex(3)),
                                     0.1);
    const std::string text = WriteArff(ds);
    const Dataset back = ParseArff(text, "class");
    ASSERT_EQ(back, ds) << text;
    EXPECT_EQ(WriteArff(back), text);
  }
}

TEST(ParseArffTest, SingleTokenCorruptionIsAnError) {
  Rng rng(11);
  int corrupted = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset ds = RandomDataset(rng, 10, 2, 2, 2);
    std::string text = WriteArff(ds);
    // Replace one data cell by a token no column accepts.
    const size_t data = text.find("@data\n") + 6;
    size_t pos = data;
    const size_t skip = rng.UniformIndex(ds.num_rows() * 4);
    for (size_t i = 0; i < skip; ++i) pos = text.find_first_of(",\n", pos) + 1;
    const size_t end = text.find_first_of(",\n", pos);
    text.replace(pos, end - pos, "zz!");
    EXPECT_THROW(ParseArff(text, "class"), ParseError) << text;
    ++corrupted;
  }
  EXPECT_EQ(corrupted, 100);
}

TEST(ParseCsvTest, ParsesWithSchema) {
  const auto schema = ParseCsvSchema("a,numeric\nb,nominal\ncls,class\n");
  const Dataset ds = ParseCsv("a,b,cls\n1,x,yes\n2,y,no\n", schema);
  EXPECT_EQ(ds.num_rows(), 2u);
  EXPECT_EQ(ds.num_classes(), 2);
  EXPECT_EQ(ds.attribute(1).values, (std::vector<std::string>{"x", "y"}));
}

TEST(ParseCsvTest, NonNumericTokenNamesColumnAndRow) {
  const auto schema = ParseCsvSchema("a,numeric\nb,nominal\ncls,class\n");
  try {
    ParseCsv("a,b,cls\n1,x,yes\nabc,y,no\n", schema);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("row 2"), std::string::npos) << what;
    EXPECT_NE(what.find("'a'"), std::string::npos) << what;
  }
}

TEST(ParseCsvTest, EmptyAndQuestionMarkAreMissing) {
  const auto schema = ParseCsvSchema("a,numeric\nb,nominal,x|y\ncls,class,no|yes\n");
  const Dataset ds = ParseCsv("a,b,cls\n,x,yes\n2,?,no\n", schema);
  EXPECT_EQ(ds.MissingCount(), 2u);
  EXPECT_EQ(ds.label(0), 1);
}

TEST(ParseCsvTest, MatchesEquivalentArff) {
  const Dataset from_arff = ParseArff(
      "@relation csv\n@attribute a numeric\n@attribute b {x,y}\n"
      "@attribute cls {yes,no}\n@data\n1,x,yes\n2,?,no\n?,y,no\n");
  const auto schema = ParseCsvSchema("a,numeric\nb,nominal,x|y\ncls,class,yes|no\n");
  const Dataset from_csv =
      ParseCsv("a,b,cls\n1,x,yes\n2,,no\n?,y,no\n", schema);
  EXPECT_EQ(from_arff, from_csv);
}

TEST(SummarizeTest, WestAnalogueClassBalance) {
  std::vector<int> labels(25, 0);
  labels.insert(labels.end(), 24, 1);
  const DatasetSummary s = Summarize(LabelsOnly(labels, 2));
  EXPECT_EQ(s.num_instances, 49u);
  EXPECT_NEAR(s.class_balance, 0.96, 1e-12);
  EXPECT_EQ(s.num_classes, 2);
}

TEST(SummarizeTest, EqualCountsGiveBalanceOne) {
  std::vector<int> labels(9, 0);
  labels.insert(labels.end(), 9, 1);
  EXPECT_DOUBLE_EQ(Summarize(LabelsOnly(labels, 2)).class_balance, 1.0);
}

TEST(SummarizeTest, MatchesBruteForceCounts) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset ds = RandomDataset(rng, 50, 3, 2, 3, 0.15);
    const DatasetSummary s = Summarize(ds);
    size_t missing = 0;
    std::map<int, int> counts;
    for (size_t r = 0; r < 50; ++r) {
      for (int a = 0; a < 5; ++a) missing += std::isnan(ds.row(r)[a]);
      counts[static_cast<int>(ds.row(r)[5])]++;
    }
    int lo = 1 << 30, hi = 0;
    for (auto [c, n] : counts) lo = std::min(lo, n), hi = std::max(hi, n);
    EXPECT_EQ(s.num_instances, 50u);
    EXPECT_EQ(s.num_numeric, 3);
    EXPECT_EQ(s.num_nominal, 2);
    EXPECT_NEAR(s.pct_missing, 100.0 * missing / 250.0, 1e-12);
    EXPECT_NEAR(s.class_balance, static_cast<double>(lo) / hi, 1e-12);
    EXPECT_EQ(s.num_classes, static_cast<int>(counts.size()));
    EXPECT_GE(s.class_balance, 0.0);
    EXPECT_LE(s.class_balance, 1.0);
  }
}

void ExpectValidFoldPlan(const Dataset& ds, const FoldPlan& plan) {
  ASSERT_EQ(plan.assignments.size(), ds.num_rows());
  std::vector<std::vector<int>> per_class(ds.num_classes(),
                                          std::vector<int>(plan.k, 0));
  std::set<size_t> seen;
  for (int f = 0; f < plan.k; ++f) {
    const auto test = plan.TestRows(f);
    EXPECT_FALSE(test.empty()) << "fold " << f;
    for (size_t r : test) {
      EXPECT_TRUE(seen.insert(r).second) << "row " << r << " in two folds";
      per_class[ds.label(r)][f]++;
    }
    EXPECT_EQ(test.size() + plan.TrainRows(f).size(), ds.num_rows());
  }
  EXPECT_EQ(seen.size(), ds.num_rows());
  for (const auto& counts : per_class) {
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    EXPECT_LE(*hi - *lo, 1);
  }
}

TEST(StratifiedKFoldTest, BalancedHundredRows) {
  std::vector<int> labels(100);
  for (int i = 0; i < 100; ++i) labels[i] = i % 2;
  const Dataset ds = LabelsOnly(labels, 2);
  const FoldPlan plan = StratifiedKFold(ds, 10, 42);
  for (int f = 0; f < 10; ++f) {
    int pos = 0, neg = 0;
    for (size_t r : plan.TestRows(f)) (ds.label(r) ? pos : neg)++;
    EXPECT_EQ(pos, 5);
    EXPECT_EQ(neg, 5);
  }
  EXPECT_EQ(plan, StratifiedKFold(ds, 10, 42));
}

TEST(StratifiedKFoldTest, InvariantsOnUnevenClasses) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 97;
    std::vector<int> labels(n);
    for (auto& l : labels) l = static_cast<int>(rng.UniformIndex(3));
    const Dataset ds = LabelsOnly(labels, 3);
    ExpectValidFoldPlan(ds, StratifiedKFold(ds, 10, trial));
  }
}

TEST(StratifiedKFoldTest, TinyClassesStillFillEveryFold) {
  // Every class smaller than k.
  const Dataset ds = LabelsOnly({0, 0, 1, 1, 2, 2}, 3);
  ExpectValidFoldPlan(ds, StratifiedKFold(ds, 5, 1));
  ExpectValidFoldPlan(ds, StratifiedKFold(ds, 6, 1));
}

TEST(StratifiedKFoldTest, RejectsBadK) {
  const Dataset ds = LabelsOnly({0, 1, 0}, 2);
  EXPECT_THROW(StratifiedKFold(ds, 4, 1), ArgumentError);
  EXPECT_THROW(StratifiedKFold(ds, 1, 1), ArgumentError);
}

TEST(MetaSplitTest, SeventyThirtyPreservesProportions) {
  std::vector<int> labels(100);
  for (int i = 0; i < 100; ++i) labels[i] = i < 60 ? 0 : 1;
  const Dataset ds = LabelsOnly(labels, 2);
  const DataSplit split = MetaSplit(ds, 0.3, 9);
  EXPECT_EQ(split.train.num_rows(), 70u);
  EXPECT_EQ(split.valid.num_rows(), 30u);
  EXPECT_EQ(split.valid.ClassCounts(), (std::vector<size_t>{18, 12}));
  std::set<size_t> all(split.train.origin().begin(), split.train.origin().end());
  for (size_t r : split.valid.origin()) EXPECT_TRUE(all.insert(r).second);
  EXPECT_EQ(all.size(), 100u);
  EXPECT_TRUE(std::is_sorted(split.valid.origin().begin(),
                             split.valid.origin().end()));
}

TEST(MetaSplitTest, SeedsChangeAssignment) {
  std::vector<int> labels(100);
  for (int i = 0; i < 100; ++i) labels[i] = i % 2;
  const Dataset ds = LabelsOnly(labels, 2);
  int differing = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    differing += MetaSplit(ds, 0.3, seed).valid.origin() !=
                 MetaSplit(ds, 0.3, seed + 1000).valid.origin();
    EXPECT_EQ(MetaSplit(ds, 0.3, seed).valid.origin(),
              MetaSplit(ds, 0.3, seed).valid.origin());
  }
  EXPECT_EQ(differing, 20);
}

TEST(MetaSplitTest, DegenerateFractionsAreErrors) {
  const Dataset ds = LabelsOnly({0, 1, 0, 1}, 2);
  EXPECT_THROW(MetaSplit(ds, 0.0, 1), ArgumentError);
  EXPECT_THROW(MetaSplit(ds, 1.0, 1), ArgumentError);
  EXPECT_THROW(MetaSplit(ds, 0.05, 1), ArgumentError);  // rounds to empty
}

TEST(LoadDatasetTest, BundledSeparableFixture) {
  const Dataset ds = LoadDataset(testing::DataPath("separable300.arff"));
  EXPECT_EQ(ds.num_rows(), 300u);
  EXPECT_EQ(ds.ClassCounts(), (std::vector<size_t>{120, 180}));
  EXPECT_THROW(LoadDataset(testing::DataPath("does-not-exist.arff")), IoError);
}

}  // namespace
}  // namespace hyperdt
