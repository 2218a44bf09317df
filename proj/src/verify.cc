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

#include "lcim/verify.h"

#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "lcim/branch_and_cut.h"
#include "lcim/cycle_cuts.h"
#include "lcim/formulation.h"
#include "lcim/generator.h"
#include "lcim/knapsack_cuts.h"
#include "lcim/oracle.h"

namespace lcim {

void SuiteResult::Check(bool condition, const std::string& failure) {
  ++total;
  if (condition) {
    ++passed;
  } else {
    failures.push_back(failure);
  }
}

NodeView WorkedView() { return MakeNodeView(8, {7, 6, 5, 4}); }

namespace {

std::vector<int> ToPositions(const std::vector<int>& one_based) {
  std::vector<int> out;
  for (int k : one_based) out.push_back(k - 1);
  return out;
}

std::string SetText(const std::vector<int>& one_based) {
  std::ostringstream out;
  out << '{';
  for (size_t k = 0; k < one_based.size(); ++k) {
    out << (k ? "," : "") << one_based[k];
  }
  out << '}';
  return out.str();
}

KnapsackCut Expected(const TableRow& row) {
  KnapsackCut cut;
  cut.alpha = row.alpha;
  cut.beta = row.beta;
  return cut;
}

bool SameCoefficients(const KnapsackCut& a, const KnapsackCut& b) {
  return a.alpha == b.alpha && a.beta == b.beta;
}

std::string Mismatch(const std::string& label, const KnapsackCut& expected,
                     const KnapsackCut& actual, const NodeView& view) {
  return label + ": expected " + expected.Render(view) + ", got " +
         actual.Render(view);
}

}  // namespace

const std::vector<TableRow>& CoverPackingTable() {
  static const std::vector<TableRow> rows = {
      {{2, 3, 4}, {1, 2}, {}, {1, 1, 1, 1}, 2},
      {{1, 3, 4}, {1, 2}, {}, {2, 1, 2, 2}, 3},
      {{1, 2, 4}, {1, 3}, {}, {3, 3, 1, 3}, 4},
      {{1, 2, 3}, {1, 4}, {}, {4, 4, 4, 1}, 5},
      {{1, 2, 4}, {2, 3}, {}, {4, 3, 2, 3}, 5},
      {{1, 2, 3}, {2, 4}, {}, {5, 4, 4, 2}, 6},
      {{1, 2, 3}, {3, 4}, {}, {6, 5, 4, 3}, 7},
  };
  return rows;
}

const std::vector<TableRow>& MisTable() {
  static const std::vector<TableRow> rows = {
      {{}, {}, {1}, {0, 1, 1, 1}, 1},
      {{}, {}, {2}, {2, 0, 2, 2}, 2},
      {{}, {}, {3}, {3, 3, 0, 3}, 3},
      {{}, {}, {4}, {4, 4, 4, 0}, 4},
  };
  return rows;
}

TableRow ExtraRow() { return {{}, {}, {}, {3, 2, 2, 2}, 4}; }

SuiteResult CompareCoverPackingTable(const std::vector<KnapsackCut>& emitted) {
  SuiteResult result;
  result.name = "cover/packing table";
  const NodeView view = WorkedView();
  const std::vector<TableRow>& rows = CoverPackingTable();
  std::vector<bool> explained(emitted.size(), false);
  for (size_t k = 0; k < rows.size(); ++k) {
    const KnapsackCut expected = Expected(rows[k]);
    bool found = false;
    for (size_t e = 0; e < emitted.size(); ++e) {
      if (SameCoefficients(emitted[e], expected)) {
        found = true;
        explained[e] = true;
      }
    }
    result.Check(found, "row " + std::to_string(k + 1) + " missing: expected " +
                            expected.Render(view));
  }
  for (size_t e = 0; e < emitted.size(); ++e) {
    result.Check(explained[e], "unexpected cut " + emitted[e].Render(view));
  }
  return result;
}

SuiteResult CompareMisTable(const std::vector<KnapsackCut>& cuts) {
  SuiteResult result;
  result.name = "minimal influencing subset table";
  const NodeView view = WorkedView();
  const std::vector<TableRow>& rows = MisTable();
  for (size_t k = 0; k < rows.size(); ++k) {
    const KnapsackCut expected = Expected(rows[k]);
    const std::string row =
        "row " + std::to_string(k + 1) + " M=" + SetText(rows[k].mis);
    if (k >= cuts.size()) {
      result.Check(false, row + ": missing generated cut");
      continue;
    }
    result.Check(SameCoefficients(cuts[k], expected),
                 Mismatch(row, expected, cuts[k], view));
  }
  return result;
}

SuiteResult RunCoverPackingTable() {
  const NodeView view = WorkedView();
  std::vector<KnapsackCut> emitted;
  for (const std::vector<int>& s : EnumerateMinimalCovers(view)) {
    emitted.push_back(BuildCoverCut(view, s));
  }
  for (const std::vector<int>& l : EnumerateMinimalPackings(view)) {
    emitted.push_back(BuildPackingCut(view, l));
  }
  SuiteResult result = CompareCoverPackingTable(emitted);
  // Each printed row comes from its listed cover or its listed packing.
  const std::vector<TableRow>& rows = CoverPackingTable();
  for (size_t k = 0; k < rows.size(); ++k) {
    const KnapsackCut expected = Expected(rows[k]);
    const KnapsackCut by_cover = BuildCoverCut(view, ToPositions(rows[k].cover));
    const KnapsackCut by_packing =
        BuildPackingCut(view, ToPositions(rows[k].packing));
    result.Check(SameCoefficients(by_cover, expected) ||
                     SameCoefficients(by_packing, expected),
                 "row " + std::to_string(k + 1) + ": neither S=" +
                     SetText(rows[k].cover) + " nor L=" +
                     SetText(rows[k].packing) + " yields " +
                     expected.Render(view));
  }
  return result;
}

SuiteResult RunMisTable() {
  const NodeView view = WorkedView();
  std::vector<KnapsackCut> cuts;
  for (const TableRow& row : MisTable()) {
    cuts.push_back(BuildMisCut(view, ToPositions(row.mis)));
  }
  return CompareMisTable(cuts);
}

SuiteResult RunFacets(int random_views, uint64_t seed) {
  SuiteResult result;
  result.name = "facets";
  const NodeView view = WorkedView();
  std::vector<TableRow> rows = CoverPackingTable();
  rows.insert(rows.end(), MisTable().begin(), MisTable().end());
  rows.push_back(ExtraRow());
  for (size_t k = 0; k < rows.size(); ++k) {
    const KnapsackCut cut = Expected(rows[k]);
    const NodeInequality ineq = NodeInequality::From(cut);
    const bool valid = CheckValidity(ineq, view);
    result.Check(valid, "not valid: " + cut.Render(view));
    if (valid) {
      result.Check(CheckFacet(ineq, view), "not a facet: " + cut.Render(view));
    }
  }

  std::mt19937_64 rng(seed);
  for (int t = 0; t < random_views; ++t) {
    const int v = std::uniform_int_distribution<int>(1, 6)(rng);
    const int64_t h = std::uniform_int_distribution<int64_t>(1, 10)(rng);
    std::vector<int64_t> d(v);
    for (int64_t& w : d) w = std::uniform_int_distribution<int64_t>(1, 8)(rng);
    const NodeView node = MakeNodeView(h, d);
    bool bounded = true;
    for (int64_t w : d) bounded &= w <= h;
    std::ostringstream label;
    label << "h=" << h << " d=(";
    for (int k = 0; k < v; ++k) label << (k ? "," : "") << d[k];
    label << ")";

    NodeInequality row;
    row.cx = 1.0;
    for (int64_t w : d) row.cy.push_back(static_cast<double>(w));
    row.cz = -static_cast<double>(h);
    result.Check(CheckFacet(row, node) == bounded,
                 "node row facet iff d <= h fails at " + label.str());
    if (!bounded) continue;
    // x >= 0 also needs some y reaching h, which the standing assumption
    // sum d > h provides for v >= 2.
    int64_t total = 0;
    for (int64_t w : d) total += w;
    NodeInequality x_nonneg;
    x_nonneg.cy.assign(v, 0.0);
    result.Check(CheckFacet(x_nonneg, node) == (total >= h),
                 "x >= 0 facet iff sum d >= h fails at " + label.str());
    for (int k = 0; k < v; ++k) {
      NodeInequality lower;
      lower.cx = 0.0;
      lower.cy.assign(v, 0.0);
      lower.cy[k] = 1.0;
      result.Check(CheckFacet(lower, node),
                   "y >= 0 not a facet at " + label.str());
      NodeInequality upper = lower;
      upper.cy[k] = -1.0;
      upper.rhs = -1.0;
      result.Check(CheckFacet(upper, node),
                   "y <= 1 not a facet at " + label.str());
    }
  }
  return result;
}

Point ParsePoint(const Instance& instance, const std::string& text) {
  const int n = instance.num_nodes();
  Point p;
  p.x.assign(n, 0.0);
  p.y.assign(instance.num_arcs(), 0.0);
  p.z.assign(n, 0.0);
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::string tag;
    if (!(fields >> tag)) continue;
    if (tag == "x" || tag == "z") {
      std::vector<double>& target = tag == "x" ? p.x : p.z;
      for (int i = 0; i < n; ++i) {
        if (!(fields >> target[i])) throw ParseError(line, "expected n values");
      }
    } else if (tag == "y") {
      int i = 0, j = 0;
      double value = 0.0;
      if (!(fields >> i >> j >> value)) throw ParseError(line, "expected i j value");
      const int a = instance.FindArc(i - 1, j - 1);
      if (a < 0) throw ParseError(line, "unknown arc");
      p.y[a] = value;
    } else {
      throw ParseError(line, "unknown tag '" + tag + "'");
    }
  }
  return p;
}

Point LoadPoint(const Instance& instance, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParsePoint(instance, buffer.str());
}

namespace {

bool Near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string Num(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

}  // namespace

SuiteResult RunTrace(const std::filesystem::path& fixtures) {
  SuiteResult result;
  result.name = "five-node trace";
  const std::filesystem::path instance_path = fixtures / "example2.lcim";
  const std::filesystem::path point_path = fixtures / "example3_point.txt";
  for (const auto& path : {instance_path, point_path}) {
    if (!std::filesystem::exists(path)) {
      result.Check(false, "fixture not found: " + path.string());
      return result;
    }
  }
  const Instance instance = LoadInstance(instance_path);
  const Point point = LoadPoint(instance, point_path);
  const VarLayout layout = LayoutFor(instance, Mode::kDef);

  LpModel model = Assemble(instance, Mode::kDef);
  const LpSolution lp = SolveLp(model);
  result.Check(lp.status == LpStatus::kOptimal && Near(lp.objective, 8.52, 1e-4),
               "initial LP: expected 8.52, got " + Num(lp.objective));
  double point_cost = 0.0;
  for (double x : point.x) point_cost += x;
  result.Check(Near(point_cost, 8.52, 1e-9),
               "recorded point cost: expected 8.52, got " + Num(point_cost));

  const Cycle cycle = MakeCycle(instance, {0, 1, 2});
  const std::vector<std::string> base_text = {
      "x[1] + 2*y[2,1] + 4*y[3,1] + 6*y[4,1] >= 12*z[1]",
      "x[2] + y[1,2] + 2*y[3,2] + 3*y[5,2] >= 6*z[2]",
      "x[3] + y[1,3] + 4*y[2,3] >= 5*z[3]",
  };
  std::vector<std::vector<KnapsackCut>> candidates;
  for (int t = 0; t < 3; ++t) {
    const NodeView view = instance.View(t);
    std::vector<int> all(view.degree());
    for (int k = 0; k < view.degree(); ++k) all[k] = k;
    const KnapsackCut base = BuildPackingCut(view, all);
    result.Check(base.Render(view) == base_text[t],
                 "base cut: expected " + base_text[t] + ", got " +
                     base.Render(view));
    candidates.push_back({base});
  }
  const std::optional<UcSeparation> sep =
      SeparateUc(instance, cycle, candidates, point);
  result.Check(sep.has_value(), "no violated (U,C) cut at the recorded point");
  if (!sep) return result;
  std::vector<int> u_nodes;
  for (int t : sep->data.u) u_nodes.push_back(sep->data.nodes[t] + 1);
  result.Check(u_nodes == std::vector<int>({1, 3}),
               "U: expected {1,3}, got " + SetText(u_nodes));
  result.Check(Near(sep->violation, 6.0, 1e-6),
               "violation: expected 6, got " + Num(sep->violation));
  result.Check(Near(sep->dag.f_direct, 3.0, 1e-6),
               "f_direct: expected 3, got " + Num(sep->dag.f_direct));
  const std::vector<double> exits = {3.72, 6.72, 1.44};
  for (size_t k = 0; k < exits.size(); ++k) {
    const double got = k < sep->dag.f_exit.size() ? sep->dag.f_exit[k] : NAN;
    result.Check(Near(got, exits[k], 1e-6), "f_exit[" + std::to_string(k + 1) +
                                                "]: expected " + Num(exits[k]) +
                                                ", got " + Num(got));
  }
  result.Check(Near(sep->dag.value, 6.0, 1e-6),
               "longest path: expected 6, got " + Num(sep->dag.value));

  // 2(x1 + 2y21 + 4y31 + 6y41 - 12z1) + 3(x3 + y13 + 4y23 - 5z3)
  //     >= 6(1 - z2 + y12)
  std::map<std::pair<int, int>, double> expected = {
      {{0, 0}, 2},  {{1, instance.FindArc(1, 0)}, 4},
      {{1, instance.FindArc(2, 0)}, 8},  {{1, instance.FindArc(3, 0)}, 12},
      {{2, 0}, -24}, {{0, 2}, 3},  {{1, instance.FindArc(0, 2)}, 3},
      {{1, instance.FindArc(1, 2)}, 12}, {{2, 2}, -15}, {{2, 1}, 6},
      {{1, instance.FindArc(0, 1)}, -6}};
  std::map<std::pair<int, int>, double> got;
  for (const Term& t : sep->cut.terms) {
    got[{static_cast<int>(t.kind), t.index}] += t.coef;
  }
  result.Check(got == expected && Near(sep->cut.rhs, 6.0, 1e-12),
               "cut: got " + sep->cut.Render(instance));

  model.AddRow(ToRow(layout, sep->cut));
  const LpSolution after = SolveLp(model);
  result.Check(after.status == LpStatus::kOptimal &&
                   Near(after.objective, 10.2, 1e-4),
               "LP after cut: expected 10.2, got " + Num(after.objective));

  const std::optional<ActivationOrder> oracle = BruteForceOptimum(instance);
  result.Check(oracle && oracle->cost == 11,
               "oracle optimum: expected 11, got " +
                   (oracle ? std::to_string(oracle->cost) : "none"));
  for (Mode mode : {Mode::kDef, Mode::kCb}) {
    const SolveReport report = Solve(instance, mode);
    result.Check(report.status == SolveStatus::kOptimal && report.ub == 11.0,
                 std::string(ModeName(mode)) + " optimum: expected 11, got " +
                     Num(report.ub));
  }
  return result;
}

SuiteResult RunOracleBattery(int count, uint64_t seed) {
  SuiteResult result;
  result.name = "oracle battery";
  std::mt19937_64 rng(seed);
  for (int t = 0; t < count; ++t) {
    RandomGraphParams params;
    params.num_nodes = std::uniform_int_distribution<int>(3, 7)(rng);
    params.edge_probability = 0.4;
    params.seed = rng();
    if (t % 3 == 0) params.coverage = params.num_nodes;
    const Instance instance = GenerateRandomGraph(params);
    const int64_t subset = BruteForceOptimum(instance)->cost;
    const int64_t perm = PermutationOptimum(instance)->cost;
    const std::string label = "instance " + std::to_string(t + 1) + ": ";
    result.Check(subset == perm, label + "subset oracle " +
                                     std::to_string(subset) +
                                     " vs permutation oracle " +
                                     std::to_string(perm));
    std::vector<Mode> modes = {Mode::kDef, Mode::kCb};
    if (instance.coverage() == instance.num_nodes()) modes.push_back(Mode::kLn);
    for (Mode mode : modes) {
      const SolveReport report = Solve(instance, mode);
      result.Check(report.status == SolveStatus::kOptimal &&
                       report.ub == static_cast<double>(subset),
                   label + ModeName(mode) + " gives " + Num(report.ub) +
                       ", oracle " + std::to_string(subset));
    }
  }
  return result;
}

std::vector<SuiteResult> RunAllSuites(const std::filesystem::path& fixtures) {
  return {RunCoverPackingTable(), RunMisTable(), RunFacets(), RunTrace(fixtures),
          RunOracleBattery()};
}

}  // namespace lcim
