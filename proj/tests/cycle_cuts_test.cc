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

#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "lcim/cycle_cuts.h"
#include "lcim/generator.h"
#include "lcim/oracle.h"
#include "lcim/verify.h"
#include "test_support.h"

namespace lcim {
namespace {

using testing::RandomBase;
using testing::RandomFractionalPoint;
using testing::SimpleCycles;

Instance Example2() {
  return LoadInstance(std::filesystem::path(LCIM_FIXTURE_DIR) /
                      "example2.lcim");
}

Point Zero(const Instance& in) {
  return {std::vector<double>(in.num_nodes(), 0.0),
          std::vector<double>(in.num_arcs(), 0.0),
          std::vector<double>(in.num_nodes(), 0.0)};
}

TEST(CycleTest, MakeAndCanonical) {
  const Instance in = Example2();
  const Cycle c = MakeCycle(in, {2, 0, 1});  // 3 -> 1 -> 2 -> 3.
  EXPECT_EQ(c.Nodes(in), (std::vector<int>{2, 0, 1}));
  EXPECT_EQ(Canonical(in, c).Nodes(in), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(Canonical(in, c), MakeCycle(in, {0, 1, 2}));
  EXPECT_NE(MakeCycle(in, {0, 1, 2}), MakeCycle(in, {0, 2, 1}));
  EXPECT_THROW(MakeCycle(in, {0, 3, 1}), std::invalid_argument);
  EXPECT_THROW(MakeCycle(in, {0, 1, 0, 1}), std::invalid_argument);
}

TEST(GcecTest, Coefficients) {
  const Instance in = Example2();
  const Cycle c = MakeCycle(in, {0, 1, 2});
  const Inequality g = BuildGcec(in, c, 0);
  EXPECT_EQ(g.family, CutFamily::kGcec);
  EXPECT_EQ(g.rhs, 0.0);
  Point p = Zero(in);
  for (int a : c.arcs) p.y[a] = 1.0;
  p.z = {1, 1, 1, 0, 0};
  EXPECT_NEAR(g.Violation(p), 1.0, 1e-12);
  EXPECT_THROW(BuildGcec(in, c, 4), std::invalid_argument);
  // Same cycle from another rotation and the same anchor: same key.
  EXPECT_EQ(BuildGcec(in, MakeCycle(in, {1, 2, 0}), 0).key, g.key);
}

TEST(GcecTest, ValidOnSmallInstances) {
  std::mt19937_64 rng(2);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    RandomGraphParams params;
    params.num_nodes = 5;
    params.seed = 100 + t;
    const Instance in = GenerateRandomGraph(params);
    for (const Cycle& c : SimpleCycles(in, 5)) {
      for (int k : c.Nodes(in)) {
        EXPECT_TRUE(CheckValidity(BuildGcec(in, c, k), in));
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(CycleSearchTest, IntegerPoints) {
  const Instance in = Example2();
  Point p = Zero(in);
  p.z = {1, 1, 1, 0, 0};
  p.y[in.FindArc(0, 1)] = 1;
  p.y[in.FindArc(1, 2)] = 1;
  EXPECT_FALSE(FindViolatedCycleInteger(in, p).has_value());
  p.y[in.FindArc(2, 0)] = 1;
  const auto found = FindViolatedCycleInteger(in, p);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(*found, MakeCycle(in, {0, 1, 2}));
}

TEST(CycleSearchTest, FractionalCyclesAreLightAndSorted) {
  std::mt19937_64 rng(4);
  int found_any = 0;
  for (int t = 0; t < 200; ++t) {
    RandomGraphParams params;
    params.num_nodes = 7;
    params.seed = 300 + t;
    const Instance in = GenerateRandomGraph(params);
    const Point p = RandomFractionalPoint(in, rng);
    const std::vector<Cycle> cycles = FindViolatedCyclesFractional(in, p, 10);
    EXPECT_LE(cycles.size(), 10u);
    double last = -1.0;
    for (const Cycle& c : cycles) {
      EXPECT_GE(c.size(), 3);
      EXPECT_EQ(c, Canonical(in, c));
      const double w = CycleWeight(in, c, p);
      EXPECT_LT(w, 1.0 - 1e-6);
      EXPECT_GE(w, last - 1e-12);
      last = w;
    }
    // Whenever some cycle is that light, the search reports one.
    bool light = false;
    for (const Cycle& c : SimpleCycles(in)) {
      light |= CycleWeight(in, c, p) < 1.0 - 1e-6;
    }
    if (light) {
      EXPECT_FALSE(cycles.empty());
      ++found_any;
    }
  }
  EXPECT_GT(found_any, 10);
}

TEST(UcTest, WorkedTrace) {
  const SuiteResult trace = RunTrace(LCIM_FIXTURE_DIR);
  for (const std::string& f : trace.failures) ADD_FAILURE() << f;
  EXPECT_TRUE(trace.ok());
}

TEST(UcTest, MakeUcDataRejects) {
  const Instance in = Example2();
  const Cycle c = MakeCycle(in, {0, 1, 2});
  std::vector<KnapsackCut> bases;
  for (int i : c.Nodes(in)) bases.push_back(BuildMisCut(in.View(i), {}));
  EXPECT_THROW(MakeUcData(in, c, bases, {0}, 4), std::invalid_argument);
  bases.pop_back();
  EXPECT_THROW(MakeUcData(in, c, bases, {0}, 0), std::invalid_argument);
}

// Random bases, U and anchors; every (U,C) cut holds on all feasible
// integral points.
TEST(UcTest, RandomCutsAreValid) {
  std::mt19937_64 rng(6);
  int checked = 0;
  for (int t = 0; t < 60; ++t) {
    RandomGraphParams params;
    params.num_nodes = std::uniform_int_distribution<int>(4, 6)(rng);
    params.seed = 500 + t;
    const Instance in = GenerateRandomGraph(params);
    std::vector<Cycle> cycles = SimpleCycles(in, 6);
    std::shuffle(cycles.begin(), cycles.end(), rng);
    if (cycles.size() > 3) cycles.resize(3);
    for (const Cycle& c : cycles) {
      const std::vector<int> nodes = c.Nodes(in);
      std::vector<KnapsackCut> bases;
      std::vector<int> u;
      for (size_t q = 0; q < nodes.size(); ++q) {
        bases.push_back(RandomBase(in.View(nodes[q]), rng));
        if (Omega(in, c, bases.back()) >= 1 && rng() % 3 != 0) {
          u.push_back(static_cast<int>(q));
        }
      }
      int anchor = nodes[rng() % nodes.size()];
      if (ConstantFormValid(in, c) && rng() % 2 == 0) anchor = -1;
      const Inequality cut = BuildUcCut(in, MakeUcData(in, c, bases, u, anchor));
      EXPECT_TRUE(CheckValidity(cut, in)) << cut.Render(in);
      ++checked;
    }
  }
  EXPECT_GT(checked, 40);
}

// The separated U attains the enumerated maximum for the chosen bases, and
// each chosen base has the least slack among eligible candidates.
TEST(UcTest, SeparationMatchesEnumeration) {
  std::mt19937_64 rng(8);
  int compared = 0;
  for (int t = 0; t < 150; ++t) {
    RandomGraphParams params;
    params.num_nodes = std::uniform_int_distribution<int>(4, 8)(rng);
    params.seed = 900 + t;
    const Instance in = GenerateRandomGraph(params);
    std::vector<Cycle> cycles = SimpleCycles(in, 8);
    if (cycles.empty()) continue;
    const Point p = RandomFractionalPoint(in, rng);
    const Cycle& c = cycles[rng() % cycles.size()];
    const std::vector<int> nodes = c.Nodes(in);
    std::vector<std::vector<KnapsackCut>> candidates(nodes.size());
    for (size_t q = 0; q < nodes.size(); ++q) {
      for (int r = 0; r < 3; ++r) {
        candidates[q].push_back(RandomBase(in.View(nodes[q]), rng));
      }
    }
    const auto sep = SeparateUc(in, c, candidates, p, -1e300);
    ASSERT_TRUE(sep.has_value());
    const UcBest best =
        EnumerateUcSubsets(in, c, sep->data.bases, sep->data.anchor, p);
    EXPECT_NEAR(sep->violation, best.violation, 1e-9);
    EXPECT_NEAR(sep->cut.Violation(p), sep->violation, 1e-7);
    EXPECT_NEAR(UcViolation(in, sep->data, p), sep->violation, 1e-7);
    for (size_t q = 0; q < nodes.size(); ++q) {
      const NodePoint np = Restrict(p, in.View(nodes[q]));
      for (const KnapsackCut& cand : candidates[q]) {
        if (Omega(in, c, cand) < 1) continue;
        EXPECT_LE(sep->data.bases[q].Slack(np), cand.Slack(np) + 1e-12);
      }
    }
    if (ConstantFormValid(in, c)) {
      EXPECT_EQ(sep->data.anchor, -1);
    } else {
      ASSERT_GE(sep->data.anchor, 0);
      for (int i : nodes) EXPECT_LE(p.z[i], p.z[sep->data.anchor]);
    }
    ++compared;
  }
  EXPECT_GT(compared, 100);
}

TEST(UcTest, DominatesGcec) {
  std::mt19937_64 rng(10);
  int violated = 0;
  for (int t = 0; t < 300; ++t) {
    RandomGraphParams params;
    params.num_nodes = 6;
    params.seed = 2000 + t;
    const Instance in = GenerateRandomGraph(params);
    const Point p = RandomFractionalPoint(in, rng);
    for (const Cycle& c : SimpleCycles(in, 6)) {
      EXPECT_TRUE(DominanceCheck(in, c, p));
      for (int k : c.Nodes(in)) {
        if (BuildGcec(in, c, k).Violation(p) > 0) ++violated;
      }
    }
  }
  EXPECT_GT(violated, 0);
}

}  // namespace
}  // namespace lcim
