// Copyright 2026 The LCIM Authors.
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

// Fixture suites behind `lcim verify`: the worked knapsack tables, facet
// checks, the five-node trace and oracle equivalence batteries.

#ifndef LCIM_VERIFY_H_
#define LCIM_VERIFY_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lcim/inequality.h"
#include "lcim/instance.h"

namespace lcim {

struct SuiteResult {
  std::string name;
  int passed = 0;
  int total = 0;
  std::vector<std::string> failures;  // "expected ... got ..." lines.

  bool ok() const { return passed == total && failures.empty(); }
  void Check(bool condition, const std::string& failure);
};

// d = (7, 6, 5, 4), h = 8.
NodeView WorkedView();

// One table row: 1-based defining sets and the expected coefficients.
struct TableRow {
  std::vector<int> cover;    // Empty for MIS rows.
  std::vector<int> packing;  // Empty for MIS rows.
  std::vector<int> mis;      // Empty for cover/packing rows.
  std::vector<int64_t> alpha;
  int64_t beta = 0;
};

const std::vector<TableRow>& CoverPackingTable();
const std::vector<TableRow>& MisTable();
// x + 3y1 + 2y2 + 2y3 + 2y4 >= 4z: valid and facet-defining but neither a
// cover nor a packing inequality.
TableRow ExtraRow();

// The emitted cover and packing cuts must be exactly the table rows: every
// row emitted, nothing else. Failures name the row.
SuiteResult CompareCoverPackingTable(const std::vector<KnapsackCut>& emitted);
SuiteResult CompareMisTable(const std::vector<KnapsackCut>& cuts);

SuiteResult RunCoverPackingTable();
SuiteResult RunMisTable();
// Every table row and the extra row are facets; the trivial facets hold on
// `random_views` random nodes (x >= 0 exactly when sum d >= h).
SuiteResult RunFacets(int random_views = 100, uint64_t seed = 1);

// Point file: "x v1 .. vn", "z v1 .. vn" and "y i j value" lines, 1-based,
// '#' comments; unlisted y are 0.
Point ParsePoint(const Instance& instance, const std::string& text);
Point LoadPoint(const Instance& instance, const std::filesystem::path& path);

// The five-node trace: LP 8.52, (U,C) separation at the recorded point,
// LP 10.2 after the cut, optimum 11. Needs example2.lcim and
// example3_point.txt in `fixtures`.
SuiteResult RunTrace(const std::filesystem::path& fixtures);

// Random small instances: subset oracle, permutation oracle and all solve
// modes agree.
SuiteResult RunOracleBattery(int count = 20, uint64_t seed = 7);

std::vector<SuiteResult> RunAllSuites(const std::filesystem::path& fixtures);

}  // namespace lcim

#endif  // LCIM_VERIFY_H_
