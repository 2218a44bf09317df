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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Criterion 10 solves the n = 50 experiment and dominates the
// runtime; set LCIM_THREADS to spread it over cores.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "lcim/branch_and_cut.h"
#include "lcim/cycle_cuts.h"
#include "lcim/formulation.h"
#include "lcim/generator.h"
#include "lcim/knapsack_cuts.h"
#include "lcim/lp.h"
#include "lcim/oracle.h"
#include "lcim/special_cases.h"
#include "lcim/verify.h"
#include "test_support.h"

namespace lcim {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<std::string> failures;

  void Fail(const std::string& why) {
    passed = false;
    if (failures.size() < 10) failures.push_back(why);
  }
};

Outcome FromSuite(const SuiteResult& suite) {
  Outcome out;
  out.detail = suite.name + " " + std::to_string(suite.passed) + "/" +
               std::to_string(suite.total);
  for (const std::string& f : suite.failures) out.Fail(f);
  if (!suite.ok() && out.failures.empty()) out.Fail("suite not ok");
  return out;
}

std::string Fmt(double value) {
  std::ostringstream out;
  out.precision(10);
  out << value;
  return out.str();
}

int Threads() {
  const char* env = std::getenv("LCIM_THREADS");
  if (env != nullptr && std::atoi(env) > 0) return std::atoi(env);
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(k) for k in [0, count) on the worker pool.
void ParallelFor(int count, const std::function<void(int)>& body) {
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < count; k = next++) body(k);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min(Threads(), count); ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
}

// A random graph holding a cycle on `k` of its `n` nodes.
struct CycleCase {
  Instance instance;
  Cycle cycle;
};

CycleCase RandomCycleCase(std::mt19937_64& rng, int n, int k) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
  auto link = [&](int u, int v) { has[u][v] = has[v][u] = true; };
  for (int t = 0; t < k; ++t) link(perm[t], perm[(t + 1) % k]);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit(rng) < 0.25) link(u, v);
    }
  }
  for (int t = k; t < n; ++t) {  // Keep every node attached.
    link(perm[t], perm[std::uniform_int_distribution<int>(0, t - 1)(rng)]);
  }
  std::uniform_int_distribution<int64_t> weight(1, 6), threshold(1, 12);
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (has[u][v]) arcs.push_back({u, v, weight(rng)});
    }
  }
  std::vector<int64_t> h(n);
  for (int64_t& x : h) x = threshold(rng);
  const int64_t b = std::uniform_int_distribution<int64_t>(1, n)(rng);
  CycleCase out{Preprocess(Instance(n, b, h, arcs)), {}};
  std::vector<int> nodes(perm.begin(), perm.begin() + k);
  if (rng() % 2) std::reverse(nodes.begin(), nodes.end());
  out.cycle = MakeCycle(out.instance, nodes);
  return out;
}

Outcome Criterion5() {
  Outcome out;
  std::mt19937_64 rng(20260501);
  double worst_mis = 0.0, worst_uc = 0.0;
  int violated_mis = 0, violated_uc = 0;
  for (int t = 0; t < 1000; ++t) {
    // MIS on a random node.
    const int v = std::uniform_int_distribution<int>(1, 8)(rng);
    const int64_t h = std::uniform_int_distribution<int64_t>(2, 16)(rng);
    std::vector<int64_t> d(v);
    for (int64_t& w : d) w = std::uniform_int_distribution<int64_t>(1, h)(rng);
    const NodeView view = MakeNodeView(h, d);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    NodePoint np;
    np.z = unit(rng) < 0.2 ? 1.0 : unit(rng);
    np.x = unit(rng) < 0.5 ? 0.0 : unit(rng) * h * np.z;
    for (int k = 0; k < v; ++k) np.y.push_back(unit(rng) < 0.3 ? 0.0 : unit(rng) * np.z);
    const auto brute = MaxMisViolation(view, np);
    const auto found = SeparateMis(view, np, -1e300);
    const double target = brute ? brute->violation : -1e300;
    const double got = found ? found->violation : -1e300;
    const double gap = std::abs(target - got);
    worst_mis = std::max(worst_mis, gap);
    if (gap > 1e-9) out.Fail("MIS point " + std::to_string(t) + ": " + Fmt(got) + " vs " + Fmt(target));
    if (target > 1e-6) ++violated_mis;

    // (U,C) on a random cycle of up to 12 nodes.
    const int n = std::uniform_int_distribution<int>(3, 12)(rng);
    const int k = std::uniform_int_distribution<int>(3, n)(rng);
    const CycleCase cc = RandomCycleCase(rng, n, k);
    const Point p = testing::RandomFractionalPoint(cc.instance, rng);
    const std::vector<int> nodes = cc.cycle.Nodes(cc.instance);
    std::vector<std::vector<KnapsackCut>> candidates(nodes.size());
    for (size_t q = 0; q < nodes.size(); ++q) {
      const int count = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int r = 0; r < count; ++r) {
        candidates[q].push_back(testing::RandomBase(cc.instance.View(nodes[q]), rng));
      }
    }
    const auto sep = SeparateUc(cc.instance, cc.cycle, candidates, p, -1e300);
    if (!sep) {
      out.Fail("UC point " + std::to_string(t) + ": no result");
      continue;
    }
    const UcBest best = EnumerateUcSubsets(cc.instance, cc.cycle, sep->data.bases,
                                           sep->data.anchor, p);
    const double uc_gap = std::abs(best.violation - sep->violation);
    worst_uc = std::max(worst_uc, uc_gap);
    if (uc_gap > 1e-9) {
      out.Fail("UC point " + std::to_string(t) + ": " + Fmt(sep->violation) +
               " vs " + Fmt(best.violation));
    }
    if (best.violation > 1e-6) ++violated_uc;
  }
  out.detail = "1000 MIS points (" + std::to_string(violated_mis) +
               " violated, max gap " + Fmt(worst_mis) + "), 1000 UC points (" +
               std::to_string(violated_uc) + " violated, max gap " + Fmt(worst_uc) + ")";
  return out;
}

Outcome Criterion6() {
  Outcome out;
  std::mt19937_64 rng(6060);
  int checks = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(3, 8)(rng);
    const Instance base = GenerateRandomCycle(n, 9, 15, 1, rng());
    for (int64_t b = 1; b <= n; ++b) {
      const Instance in = base.WithCoverage(b);
      const int64_t dp = DpCycle(in, b).cost;
      const int64_t brute = BruteForceOptimum(in)->cost;
      ++checks;
      if (dp != brute) {
        out.Fail("cycle " + std::to_string(t) + " b=" + std::to_string(b) + ": dp " +
                 std::to_string(dp) + " vs " + std::to_string(brute));
      }
    }
  }
  out.detail = "200 cycles, " + std::to_string(checks) + " (cycle, b) pairs";
  return out;
}

Outcome Criterion7() {
  Outcome out;
  std::mt19937_64 rng(7070);
  int fractional_without_hull = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 12)(rng);
    const Instance tree = GenerateEqualTree(n, 10, rng());
    const int64_t brute = BruteForceOptimum(tree)->cost;
    const LpModel model = BuildTreeEqualModel(tree);
    const LpSolution s = SolveLp(model);
    if (s.status != LpStatus::kOptimal) {
      out.Fail("tree " + std::to_string(t) + ": LP not optimal");
      continue;
    }
    if (std::abs(s.objective - static_cast<double>(brute)) > 1e-6) {
      out.Fail("tree " + std::to_string(t) + ": LP " + Fmt(s.objective) + " vs " +
               std::to_string(brute));
    }
    for (int j = 0; j < model.num_variables(); ++j) {
      if (model.variable(j).name[0] == 'y' &&
          std::abs(s.values[j] - std::round(s.values[j])) > 1e-6) {
        out.Fail("tree " + std::to_string(t) + ": fractional " + model.variable(j).name);
      }
    }
    const LpSolution plain = SolveLp(BuildTreeEqualModel(tree, false));
    if (plain.objective < static_cast<double>(brute) - 1e-6) ++fractional_without_hull;
  }
  if (fractional_without_hull == 0) out.Fail("no tree needs the hull rows");
  out.detail = "100 trees integral; " + std::to_string(fractional_without_hull) +
               " fractional without hull rows";
  return out;
}

// Corpus: LP points of the root cut loop on random instances, plus random
// points on the same graphs.
Outcome Criterion8() {
  Outcome out;
  std::mt19937_64 rng(8080);
  int points = 0, violated = 0;
  auto check = [&](const Instance& in, const std::vector<Cycle>& cycles,
                   const Point& p) {
    ++points;
    for (const Cycle& c : cycles) {
      const std::vector<int> nodes = c.Nodes(in);
      std::vector<KnapsackCut> bases;
      for (int i : nodes) bases.push_back(BuildMisCut(in.View(i), {}));
      for (int k : nodes) {
        const double g = BuildGcec(in, c, k).Violation(p);
        if (g <= 1e-9) continue;
        ++violated;
        const int anchor = ConstantFormValid(in, c) ? -1 : k;
        const double uc = BuildUcCut(in, MakeUcData(in, c, bases, {}, anchor)).Violation(p);
        if (uc < g - 1e-9) {
          out.Fail("U=empty cut weaker than GCEC: " + Fmt(uc) + " < " + Fmt(g));
        }
        if (!DominanceCheck(in, c, p)) out.Fail("DominanceCheck false");
      }
    }
  };
  for (int t = 0; t < 40; ++t) {
    RandomGraphParams params;
    params.num_nodes = std::uniform_int_distribution<int>(5, 10)(rng);
    params.edge_probability = 0.5;
    params.seed = rng();
    const Instance in = GenerateRandomGraph(params);
    const std::vector<Cycle> cycles = testing::SimpleCycles(in, 6);
    const VarLayout layout = LayoutFor(in, Mode::kDef);
    LpModel model = Assemble(in, Mode::kDef);
    CutPool pool;
    SolveParams sp;
    sp.separate_uc = false;  // Leave the cycles to be checked.
    for (int round = 0; round < 5; ++round) {
      const LpSolution s = SolveLp(model);
      if (s.status != LpStatus::kOptimal) break;
      const Point p = ToPoint(layout, s.values);
      check(in, cycles, p);
      const std::vector<Inequality> cuts = SeparateRound(in, p, sp, &pool);
      if (cuts.empty()) break;
      for (const Inequality& cut : cuts) model.AddRow(ToRow(layout, cut));
    }
    for (int r = 0; r < 25; ++r) check(in, cycles, testing::RandomFractionalPoint(in, rng));
  }
  if (violated == 0) out.Fail("corpus has no violated GCEC");
  out.detail = std::to_string(points) + " points, " + std::to_string(violated) +
               " violated GCECs dominated";
  return out;
}

Outcome Criterion9() {
  Outcome out;
  std::mt19937_64 rng(9090);
  int ln_runs = 0;
  for (int t = 0; t < 50; ++t) {
    RandomGraphParams params;
    params.num_nodes = std::uniform_int_distribution<int>(2, 8)(rng);
    params.edge_probability = 0.55;
    params.seed = rng();
    if (t % 2 == 0) params.coverage = params.num_nodes;
    const Instance in = GenerateRandomGraph(params);
    const int64_t brute = BruteForceOptimum(in)->cost;
    std::vector<Mode> modes = {Mode::kDef, Mode::kCb};
    if (in.coverage() == in.num_nodes()) {
      modes.push_back(Mode::kLn);
      ++ln_runs;
    }
    for (Mode mode : modes) {
      const SolveReport r = Solve(in, mode);
      if (r.status != SolveStatus::kOptimal || r.ub != static_cast<double>(brute)) {
        out.Fail("instance " + std::to_string(t) + " " + ModeName(mode) + ": " +
                 SolveStatusName(r.status) + " " + Fmt(r.ub) + " vs " +
                 std::to_string(brute));
      }
    }
  }
  out.detail = "50 instances x {def, cb}, ln on " + std::to_string(ln_runs);
  return out;
}

Outcome Criterion10() {
  Outcome out;
  struct Row {
    std::string id;
    SolveReport cb;
    double def_root = 0.0;
  };
  std::vector<std::pair<double, double>> grid;
  for (double q : {0.1, 0.3}) {
    for (double a : {0.1, 0.25, 0.5, 0.75, 1.0}) grid.push_back({q, a});
  }
  std::vector<Row> rows(grid.size());
  ParallelFor(static_cast<int>(grid.size()), [&](int k) {
    SmallWorldParams params;
    params.num_nodes = 50;
    params.mean_degree = 4;
    params.rewire = grid[k].first;
    params.rate = grid[k].second;
    params.seed = 1;
    const Instance in = GenerateSmallWorld(params);
    std::ostringstream id;
    id << "q=" << grid[k].first << ",a=" << grid[k].second;
    rows[k].id = id.str();
    rows[k].def_root = SolveLp(Assemble(in, Mode::kDef)).objective;
    SolveParams sp;
    sp.time_limit = 1500.0;
    rows[k].cb = Solve(in, Mode::kCb, sp);
  });
  int strict = 0;
  std::ostringstream table;
  for (const Row& r : rows) {
    table << "\n    " << r.id << " " << SolveStatusName(r.cb.status) << " opt "
          << Fmt(r.cb.ub) << " def_root " << Fmt(r.def_root) << " cb_root "
          << Fmt(r.cb.root_bound) << " nodes " << r.cb.nodes << " "
          << Fmt(r.cb.seconds) << "s";
    if (r.cb.status != SolveStatus::kOptimal) out.Fail(r.id + " not optimal");
    if (r.cb.root_bound < r.def_root - 1e-6) out.Fail(r.id + " CB root below DEF root");
    if (r.cb.root_bound > r.def_root + 1e-6) ++strict;
  }
  if (2 * strict < static_cast<int>(rows.size())) {
    out.Fail("CB root strictly better on only " + std::to_string(strict));
  }
  out.detail = std::to_string(rows.size()) + " instances, CB root strictly above DEF on " +
               std::to_string(strict) + table.str();
  return out;
}

struct Criterion {
  int number;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace lcim

int main() {
  using namespace lcim;
  const std::string fixtures = LCIM_FIXTURE_DIR;
  const std::vector<Criterion> criteria = {
      {1, "cover and packing table", 1, [] { return FromSuite(RunCoverPackingTable()); }},
      {2, "MIS table", 1, [] { return FromSuite(RunMisTable()); }},
      {3, "facets", 10, [] { return FromSuite(RunFacets(100, 1)); }},
      {4, "five-node trace", 60, [&] { return FromSuite(RunTrace(fixtures)); }},
      {5, "separation exactness", 60, Criterion5},
      {6, "cycle DP", 60, Criterion6},
      {7, "tree hull", 60, Criterion7},
      {8, "dominance", 30, Criterion8},
      {9, "end-to-end exactness", 300, Criterion9},
      {10, "n=50 experiment", 1800, Criterion10},
  };
  bool all = true;
  for (const Criterion& c : criteria) {
    const Clock::time_point start = Clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.Fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      outcome.Fail("took " + Fmt(seconds) + " s, budget " + Fmt(c.budget_seconds) + " s");
    }
    all &= outcome.passed;
    std::cout << (outcome.passed ? "PASS" : "FAIL") << " criterion " << c.number << " ("
              << c.name << "): " << outcome.detail << " [" << Fmt(seconds) << " s]\n";
    for (const std::string& f : outcome.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
