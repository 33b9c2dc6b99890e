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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "hyperdt/arff.h"
#include "hyperdt/config.h"
#include "hyperdt/errors.h"
#include "hyperdt/runner.h"

namespace hyperdt {

namespace {

std::string Fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string Join(const std::vector<std::string>& items) {
  std::string out;
  for (const std::string& s : items) out += (out.empty() ? "" : ";") + s;
  return out;
}

// One CSV line per cell; no quoting in the fixture files.
std::vector<std::vector<std::string>> ReadRows(const std::string& path) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(ReadTextFile(path));
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (Trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    rows.push_back(SplitList(line));
  }
  return rows;
}

}  // namespace

std::vector<FixtureCheck> VerifyFixtures(const std::string& fixture_dir) {
  namespace fs = std::filesystem;
  std::vector<FixtureCheck> out;
  for (const auto& row : ReadRows((fs::path(fixture_dir) / "published_footers.csv").string())) {
    if (row.size() != 3) throw ParseError("published_footers.csv: expected 3 cells", 0);
    const std::string& table = row[0];
    const std::string& kind = row[1];
    const std::vector<std::string> printed = SplitList(row[2], ';');
    const ResultMatrix m =
        ParseResultMatrix(ReadTextFile((fs::path(fixture_dir) / (table + ".csv")).string()));
    FixtureCheck check;
    check.name = table + " " + kind;
    std::vector<std::string> got;
    if (kind == "average") {
      // Means of 3-decimal cells agree with the printed means only to
      // about the last printed digit.
      const double tol = table.rfind("table5", 0) == 0 ? 0.0005 : 0.001;
      check.pass = printed.size() == static_cast<size_t>(m.k());
      for (int j = 0; j < m.k(); ++j) {
        double mean = 0;
        for (double v : m.Column(j)) mean += v / m.n();
        got.push_back(FormatNumber(std::round(mean * 1e6) / 1e6));
        if (j < static_cast<int>(printed.size())) {
          check.pass = check.pass && std::abs(mean - *ParseNumber(printed[j])) <= tol + 1e-12;
        }
      }
      check.detail = "tolerance " + FormatNumber(tol) + ", ";
    } else if (kind == "average_rank") {
      for (double r : RankRows(m).average) got.push_back(Fixed3(r));
      check.pass = got == printed;
    } else if (kind == "wins") {
      const WinCount w = CountWins(m.Column(0), m.Column(1), Direction::kHigherBetter, 3);
      got = {std::to_string(w.wins_a), std::to_string(w.wins_b)};
      check.pass = got == printed;
      check.detail = "printed " + Join(printed) + ", replayed " + Join(got) + " with " +
                     std::to_string(w.ties) + " tie(s)";
      out.push_back(check);
      const WilcoxonResult wx = Wilcoxon(m.Column(0), m.Column(1));
      FixtureCheck sig;
      sig.name = table + " wilcoxon";
      sig.pass = !wx.reject && !wx.no_decision;
      sig.detail = "W=" + FormatNumber(wx.w) + " p=" + Fixed3(wx.p_value) +
                   (wx.reject ? " significant" : " not significant") + " at 0.05";
      check = sig;
      out.push_back(check);
      continue;
    } else {
      throw ParseError("published_footers.csv: unknown row kind " + kind, 0);
    }
    check.detail += "printed " + Join(printed) + ", replayed " + Join(got);
    out.push_back(check);
  }

  for (const auto& row : ReadRows((fs::path(fixture_dir) / "meta_overfitting.csv").string())) {
    if (row.size() != 5) throw ParseError("meta_overfitting.csv: expected 5 cells", 0);
    const Metric metric = ParseMetric(row[2]);
    const double search = *ParseNumber(row[3]), test = *ParseNumber(row[4]);
    RunRecord r;
    r.budget_s = *ParseNumber(row[1]);
    if (metric == Metric::kAccuracy) {
      r.search.accuracy = search;
      r.test.accuracy = test;
    } else {
      r.search.gmean = search;
      r.test.gmean = test;
    }
    const std::vector<RunRecord> records = {r};
    const OverfitGap g = MetaOverfitGap(records, metric);
    FixtureCheck check;
    check.name = "meta_overfit " + row[0] + " " + row[2] + " " + row[1] + "s";
    check.pass = std::abs(g.gap - (search - test)) < 1e-12;
    check.detail = "search " + Fixed3(g.search) + " test " + Fixed3(g.test) + " gap " +
                   (g.gap > 0 ? "+" : "") + Fixed3(g.gap);
    out.push_back(check);
  }
  return out;
}

}  // namespace hyperdt
