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

#include "lcim/branch_and_cut.h"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <memory>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "lcim/cycle_cuts.h"
#include "lcim/knapsack_cuts.h"

namespace lcim {

const char* BranchRuleName(BranchRule rule) {
  switch (rule) {
    case BranchRule::kMostFractional:
      return "fractional";
    case BranchRule::kZFirst:
      return "zfirst";
    case BranchRule::kPseudocost:
      return "pseudocost";
    case BranchRule::kHybrid:
      return "hybrid";
  }
  return "?";
}

std::optional<BranchRule> ParseBranchRule(const std::string& name) {
  for (BranchRule rule : {BranchRule::kMostFractional, BranchRule::kZFirst,
                          BranchRule::kPseudocost, BranchRule::kHybrid}) {
    if (name == BranchRuleName(rule)) return rule;
  }
  return std::nullopt;
}

const char* SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kTimeLimit:
      return "time_limit";
    case SolveStatus::kNodeLimit:
      return "node_limit";
  }
  return "unknown";
}

int SolveReport::cuts_total() const {
  int total = 0;
  for (int c : cuts) total += c;
  return total;
}

const std::vector<KnapsackCut> CutPool::kEmpty;

bool CutPool::Add(const Inequality& ineq, const std::string& fallback_key) {
  const std::string& key = ineq.key.empty() ? fallback_key : ineq.key;
  if (!keys_.insert(key).second) return false;
  cuts_.push_back(ineq);
  return true;
}

void CutPool::AddBase(const KnapsackCut& cut) {
  std::ostringstream key;
  key << CutFamilyName(cut.family) << ':' << cut.node << ':';
  for (int s : cut.set) key << s << ',';
  if (!base_keys_.insert(key.str()).second) return;
  if (static_cast<int>(bases_.size()) <= cut.node) bases_.resize(cut.node + 1);
  bases_[cut.node].push_back(cut);
}

const std::vector<KnapsackCut>& CutPool::bases(int node) const {
  if (node < static_cast<int>(bases_.size())) return bases_[node];
  return kEmpty;
}

namespace {

bool Offer(const Instance& instance, const Inequality& ineq, CutPool* pool,
           std::vector<Inequality>* out) {
  if (!pool->Add(ineq, ineq.Render(instance))) return false;
  out->push_back(ineq);
  return true;
}

}  // namespace

std::vector<Inequality> SeparateRound(const Instance& instance,
                                      const Point& point,
                                      const SolveParams& params,
                                      CutPool* pool) {
  const double tol = params.violation_tolerance;
  std::vector<Inequality> added;
  auto full = [&] {
    return params.cuts_per_round > 0 &&
           static_cast<int>(added.size()) >= params.cuts_per_round;
  };
  for (int i = 0; i < instance.num_nodes() && !full(); ++i) {
    if (!params.separate_mis && !params.separate_cover &&
        !params.separate_packing) {
      break;
    }
    const NodeView view = instance.View(i);
    if (view.degree() == 0) continue;
    const NodePoint np = Restrict(point, view);
    const std::optional<Separated> mis = SeparateMis(view, np, tol);
    if (!mis) continue;
    if (params.separate_mis) {
      pool->AddBase(mis->cut);
      Offer(instance, mis->cut.ToInequality(view), pool, &added);
    }
    const std::optional<LiftingSet> cover = CoverFromMis(view, mis->set);
    if (!cover) continue;
    const KnapsackCut cover_cut = BuildCoverCut(view, cover->members);
    pool->AddBase(cover_cut);
    if (params.separate_cover && cover_cut.Violation(np) > tol) {
      Offer(instance, cover_cut.ToInequality(view), pool, &added);
    }
    if (params.separate_packing) {
      const std::optional<Separated> packing =
          PackingFromCover(view, cover->members, np, tol);
      if (packing) {
        pool->AddBase(packing->cut);
        Offer(instance, packing->cut.ToInequality(view), pool, &added);
      }
    }
  }
  if (!params.separate_uc || full()) return added;
  const std::vector<Cycle> cycles = FindViolatedCyclesFractional(
      instance, point, params.max_cycles, tol);
  for (const Cycle& cycle : cycles) {
    if (full()) break;
    const std::vector<int> nodes = cycle.Nodes(instance);
    std::vector<std::vector<KnapsackCut>> candidates;
    for (int i : nodes) candidates.push_back(pool->bases(i));
    const std::optional<UcSeparation> uc =
        SeparateUc(instance, cycle, candidates, point, tol);
    if (uc && uc->violation > tol) Offer(instance, uc->cut, pool, &added);
  }
  return added;
}

int SelectBranch(const VarLayout& layout, const std::vector<double>& values,
                 double tolerance) {
  int best = -1;
  double best_score = tolerance;
  auto consider = [&](int col) {
    const double v = values[col];
    const double score = std::min(v - std::floor(v), std::ceil(v) - v);
    if (score > best_score + 1e-12) {
      best_score = score;
      best = col;
    }
  };
  // z first so that ties go to z, then by column.
  for (int i = 0; i < layout.n; ++i) consider(layout.Z(i));
  for (int a = 0; a < layout.m; ++a) consider(layout.Y(a));
  if (best < 0) {
    throw std::logic_error("branching on an integral point: should have been a candidate");
  }
  return best;
}

void RepairX(const Instance& instance, Point* point) {
  for (int i = 0; i < instance.num_nodes(); ++i) {
    point->z[i] = std::round(point->z[i]);
  }
  for (double& y : point->y) y = std::round(y);
  for (int i = 0; i < instance.num_nodes(); ++i) {
    int64_t in = 0;
    for (int a : instance.in_arcs(i)) {
      if (point->y[a] > 0.5) in += instance.arc(a).weight;
    }
    const int64_t need =
        point->z[i] > 0.5 ? std::max<int64_t>(0, instance.threshold(i) - in) : 0;
    point->x[i] = static_cast<double>(need);
  }
}

std::vector<int> ActivationSequence(const Instance& instance,
                                    const Point& point) {
  const int n = instance.num_nodes();
  std::vector<int> indegree(n, 0);
  for (int a = 0; a < instance.num_arcs(); ++a) {
    if (point.y[a] > 0.5) ++indegree[instance.arc(a).head];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i) {
    if (point.z[i] > 0.5 && indegree[i] == 0) ready.push(i);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int a : instance.out_arcs(i)) {
      if (point.y[a] > 0.5 && --indegree[instance.arc(a).head] == 0) {
        ready.push(instance.arc(a).head);
      }
    }
  }
  return order;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  double bound = 0.0;
  int depth = 0;
  int64_t id = 0;
  int64_t parent = -1;
  std::vector<std::pair<int, double>> fixes;  // (column, value)
  std::shared_ptr<const Basis> basis;
  // Pseudocost bookkeeping for the branching that created this node.
  int branch_col = -1;
  double distance = 0.0;  // How far the branching moved the column.
  double parent_objective = 0.0;
  int up = 0;
};

// Per-column average objective gain per unit change, down (0) and up (1).
class Pseudocosts {
 public:
  explicit Pseudocosts(int columns) {
    for (int d = 0; d < 2; ++d) {
      sum_[d].assign(columns, 0.0);
      count_[d].assign(columns, 0);
    }
  }
  void Record(int col, int up, double gain_per_unit) {
    sum_[up][col] += gain_per_unit;
    ++count_[up][col];
    total_[up] += gain_per_unit;
    ++samples_[up];
  }
  int Samples(int col) const {
    return std::min(count_[0][col], count_[1][col]);
  }
  double Get(int col, int up) const {
    if (count_[up][col] > 0) return sum_[up][col] / count_[up][col];
    return samples_[up] > 0 ? total_[up] / samples_[up] : 1.0;
  }

 private:
  std::array<std::vector<double>, 2> sum_;
  std::array<std::vector<int>, 2> count_;
  std::array<double, 2> total_ = {0.0, 0.0};
  std::array<int64_t, 2> samples_ = {0, 0};
};

double Fraction(double v) { return v - std::floor(v); }

// Product score; small gains are floored so one dead side does not zero it.
double Score(double down, double up) {
  constexpr double kFloor = 1e-6;
  return std::max(down, kFloor) * std::max(up, kFloor);
}

int SelectBranchZFirst(const VarLayout& layout,
                       const std::vector<double>& values, double tolerance) {
  int best = -1;
  double best_score = tolerance;
  for (int i = 0; i < layout.n; ++i) {
    const double f = Fraction(values[layout.Z(i)]);
    const double score = std::min(f, 1.0 - f);
    if (score > best_score + 1e-12) {
      best_score = score;
      best = layout.Z(i);
    }
  }
  return best >= 0 ? best : SelectBranch(layout, values, tolerance);
}

struct NodeOrder {
  // Best bound first, then deeper, then older.
  bool operator()(const std::shared_ptr<Node>& a,
                  const std::shared_ptr<Node>& b) const {
    if (a->bound != b->bound) return a->bound > b->bound;
    if (a->depth != b->depth) return a->depth < b->depth;
    return a->id > b->id;
  }
};

std::vector<KnapsackCut> OriginalBases(const Instance& instance,
                                       const Cycle& cycle) {
  std::vector<KnapsackCut> bases;
  for (int i : cycle.Nodes(instance)) {
    const NodeView view = instance.View(i);
    KnapsackCut base;
    base.family = CutFamily::kBase;
    base.node = i;
    for (const Neighbor& nb : view.in) base.alpha.push_back(nb.weight);
    base.beta = view.threshold;
    bases.push_back(std::move(base));
  }
  return bases;
}

bool Integral(const VarLayout& layout, const std::vector<double>& values,
              double tol) {
  for (int c = layout.binary_begin(); c < layout.binary_end(); ++c) {
    if (std::abs(values[c] - std::round(values[c])) > tol) return false;
  }
  return true;
}

double Bound(double objective) { return std::ceil(objective - 1e-6); }

}  // namespace

SolveReport Solve(const Instance& original, Mode mode,
                  const SolveParams& params) {
  const Clock::time_point start = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };
  const Instance instance = Preprocess(original);
  const int n = instance.num_nodes();
  SolveReport report;
  report.mode = mode;
  const double inf = std::numeric_limits<double>::infinity();
  if (instance.coverage() > n) {
    report.status = SolveStatus::kInfeasible;
    report.ub = report.lb = inf;
    report.root_lp = report.root_bound = inf;
    report.seconds = elapsed();
    return report;
  }

  const VarLayout layout = LayoutFor(instance, mode);
  LpModel model = Assemble(instance, mode);
  CutPool pool;
  for (const Inequality& cut : params.seed_cuts) {
    if (pool.Add(cut, cut.Render(instance))) {
      model.AddRow(ToRow(layout, cut));
      ++report.cuts[static_cast<int>(cut.family)];
    }
  }
  SimplexSolver solver(model);
  auto solve_lp = [&] {
    LpSolution sol = solver.Solve();
    if (sol.status == LpStatus::kIterationLimit ||
        sol.status == LpStatus::kUnbounded) {
      throw std::runtime_error(std::string("LP failed: ") +
                               LpStatusName(sol.status));
    }
    return sol;
  };
  auto add_cut = [&](const Inequality& cut) {
    solver.AddRow(ToRow(layout, cut));
    ++report.cuts[static_cast<int>(cut.family)];
  };

  LpSolution sol = solve_lp();
  if (sol.status == LpStatus::kInfeasible) {
    report.status = SolveStatus::kInfeasible;
    report.ub = report.lb = inf;
    report.root_lp = report.root_bound = inf;
    report.seconds = elapsed();
    return report;
  }
  report.root_lp = sol.objective;
  if (mode == Mode::kCb) {
    while (report.root_rounds < params.max_rounds &&
           elapsed() < params.time_limit &&
           !Integral(layout, sol.values, params.integrality_tolerance)) {
      const std::vector<Inequality> cuts =
          SeparateRound(instance, ToPoint(layout, sol.values), params, &pool);
      if (cuts.empty()) break;
      for (const Inequality& cut : cuts) add_cut(cut);
      ++report.root_rounds;
      sol = solve_lp();
      if (sol.status != LpStatus::kOptimal) break;
    }
  }
  report.root_bound = sol.objective;

  Pseudocosts pseudocosts(layout.size());
  // Probes both children of `col` on a copy of the solver.
  auto probe = [&](int col, double objective, double frac, double ub_now,
                   std::array<double, 2>* gains) {
    for (int up = 0; up < 2; ++up) {
      SimplexSolver copy = solver;
      copy.set_iteration_limit(params.strong_iterations);
      copy.SetBounds(col, up, up);
      const LpSolution child = copy.Solve();
      const double distance = up ? 1.0 - frac : frac;
      if (child.status == LpStatus::kInfeasible) {
        (*gains)[up] = std::isfinite(ub_now) ? ub_now - objective + 1.0 : 1e6;
        continue;
      }
      const double gain = std::max(0.0, child.objective - objective);
      (*gains)[up] = gain;
      if (child.status == LpStatus::kOptimal) {
        pseudocosts.Record(col, up, gain / distance);
      }
    }
  };
  auto choose_branch = [&](const LpSolution& lp, double ub_now) {
    const double tol = params.integrality_tolerance;
    switch (params.branch_rule) {
      case BranchRule::kMostFractional:
        return SelectBranch(layout, lp.values, tol);
      case BranchRule::kZFirst:
        return SelectBranchZFirst(layout, lp.values, tol);
      case BranchRule::kPseudocost:
      case BranchRule::kHybrid:
        break;
    }
    std::vector<int> fractional;
    for (int c = layout.binary_begin(); c < layout.binary_end(); ++c) {
      const double f = Fraction(lp.values[c]);
      if (f > tol && f < 1.0 - tol) fractional.push_back(c);
    }
    if (params.branch_rule == BranchRule::kHybrid) {
      const int z = SelectBranchZFirst(layout, lp.values, tol);
      if (z >= layout.Z(0) && z < layout.Z(0) + layout.n) return z;
    }
    if (fractional.empty()) return SelectBranch(layout, lp.values, tol);
    std::vector<int> unreliable;
    for (int c : fractional) {
      if (pseudocosts.Samples(c) < params.reliability) unreliable.push_back(c);
    }
    std::stable_sort(unreliable.begin(), unreliable.end(), [&](int a, int b) {
      const double fa = Fraction(lp.values[a]), fb = Fraction(lp.values[b]);
      return std::min(fa, 1.0 - fa) > std::min(fb, 1.0 - fb);
    });
    if (static_cast<int>(unreliable.size()) > params.strong_candidates) {
      unreliable.resize(params.strong_candidates);
    }
    std::vector<std::array<double, 2>> probed(layout.size(), {-1.0, -1.0});
    for (int c : unreliable) {
      probe(c, lp.objective, Fraction(lp.values[c]), ub_now, &probed[c]);
    }
    int best = -1;
    double best_score = -1.0;
    for (int c : fractional) {
      const double f = Fraction(lp.values[c]);
      double down = pseudocosts.Get(c, 0) * f;
      double up = pseudocosts.Get(c, 1) * (1.0 - f);
      if (probed[c][0] >= 0.0) {
        down = probed[c][0];
        up = probed[c][1];
      }
      const double score = Score(down, up);
      if (score > best_score * (1.0 + 1e-9) + 1e-12) {
        best_score = score;
        best = c;
      }
    }
    return best;
  };

  double ub = inf;
  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>,
                      NodeOrder>
      open;
  int64_t next_id = 0;
  int64_t last_solved = -1;
  std::vector<int> fixed;  // Columns currently fixed in the solver.
  auto root = std::make_shared<Node>();
  root->bound = Bound(sol.objective);
  root->id = next_id++;
  open.push(root);
  bool root_solved = true;
  bool stopped = false;

  while (!open.empty()) {
    if (elapsed() >= params.time_limit) {
      report.status = SolveStatus::kTimeLimit;
      stopped = true;
      break;
    }
    if (params.node_limit > 0 && report.nodes >= params.node_limit) {
      report.status = SolveStatus::kNodeLimit;
      stopped = true;
      break;
    }
    const std::shared_ptr<Node> node = open.top();
    open.pop();
    if (node->bound >= ub) continue;
    ++report.nodes;

    if (!root_solved) {
      for (int col : fixed) solver.SetBounds(col, 0.0, 1.0);
      fixed.clear();
      for (const auto& [col, value] : node->fixes) {
        solver.SetBounds(col, value, value);
        fixed.push_back(col);
      }
      if (node->parent != last_solved && node->basis) {
        solver.SetBasis(*node->basis);
      }
      sol = solve_lp();
      if (node->branch_col >= 0 && sol.status == LpStatus::kOptimal) {
        pseudocosts.Record(
            node->branch_col, node->up,
            std::max(0.0, sol.objective - node->parent_objective) /
                node->distance);
      }
    }
    root_solved = false;
    last_solved = node->id;

    while (true) {
      if (sol.status == LpStatus::kInfeasible) break;
      const double bound = Bound(sol.objective);
      if (bound >= ub) break;
      if (!Integral(layout, sol.values, params.integrality_tolerance)) {
        const int col = choose_branch(sol, ub);
        const double frac = Fraction(sol.values[col]);
        auto basis = std::make_shared<const Basis>(solver.GetBasis());
        for (double value : {0.0, 1.0}) {
          auto child = std::make_shared<Node>();
          child->branch_col = col;
          child->up = value > 0.5 ? 1 : 0;
          child->distance = child->up ? 1.0 - frac : frac;
          child->parent_objective = sol.objective;
          child->bound = bound;
          child->depth = node->depth + 1;
          child->id = next_id++;
          child->parent = node->id;
          child->fixes = node->fixes;
          child->fixes.push_back({col, value});
          child->basis = basis;
          open.push(child);
        }
        break;
      }
      Point point = ToPoint(layout, sol.values);
      RepairX(instance, &point);
      const std::optional<Cycle> found = FindViolatedCycleInteger(instance, point);
      if (found) {
        const Cycle cycle = Canonical(instance, *found);
        const std::vector<int> nodes = cycle.Nodes(instance);
        const int k = *std::min_element(nodes.begin(), nodes.end());
        const Inequality gcec = BuildGcec(instance, cycle, k);
        assert(gcec.Violation(point) >= 1.0 - 1e-9);
        if (pool.Add(gcec, gcec.Render(instance))) add_cut(gcec);
        if (!params.gcec_only && ConstantFormValid(instance, cycle)) {
          const Inequality empty = BuildUcCut(
              instance, MakeUcData(instance, cycle, OriginalBases(instance, cycle),
                                   {}, -1));
          if (pool.Add(empty, empty.Render(instance))) add_cut(empty);
        }
        sol = solve_lp();
        continue;
      }
      double value = 0.0;
      for (double x : point.x) value += x;
      if (value < ub) {
        ub = value;
        report.incumbent = point;
      }
      break;
    }
  }

  report.ub = ub;
  if (!stopped) {
    report.status = std::isinf(ub) ? SolveStatus::kInfeasible : SolveStatus::kOptimal;
    report.lb = ub;
  } else {
    double lb = ub;
    while (!open.empty()) {
      lb = std::min(lb, open.top()->bound);
      open.pop();
    }
    report.lb = lb;
  }
  if (std::isfinite(report.ub) && std::isfinite(report.lb)) {
    report.gap = report.lb > 0 ? 100.0 * (report.ub - report.lb) / report.lb
                 : report.ub > report.lb ? inf
                                         : 0.0;
  } else if (report.status != SolveStatus::kInfeasible) {
    report.gap = inf;
  }
  if (!report.incumbent.x.empty()) {
    report.order = ActivationSequence(instance, report.incumbent);
  }
  report.seconds = elapsed();
  return report;
}

namespace {

std::string Number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

}  // namespace

std::string TsvHeader() {
  std::ostringstream out;
  out << "instance\tmode\tn\tm\tv\tq\ta\tstatus\tub\tlb\tgap\tnodes";
  for (int f = 0; f < kNumCutFamilies; ++f) {
    out << "\tcuts_" << CutFamilyName(static_cast<CutFamily>(f));
  }
  out << "\tseconds\troot_lp\troot_bound";
  return out.str();
}

std::string FormatTsv(const SolveReport& report, const Instance& instance,
                      const std::string& id, double q) {
  const int n = instance.num_nodes();
  std::ostringstream out;
  out << id << '\t' << ModeName(report.mode) << '\t' << n << '\t'
      << instance.num_arcs() << '\t'
      << Number(n > 0 ? static_cast<double>(instance.num_arcs()) / n : 0.0)
      << '\t' << (q < 0 ? std::string("-") : Number(q)) << '\t'
      << Number(n > 0 ? static_cast<double>(instance.coverage()) / n : 0.0)
      << '\t' << SolveStatusName(report.status) << '\t' << Number(report.ub)
      << '\t' << Number(report.lb) << '\t' << Number(report.gap) << '\t'
      << report.nodes;
  for (int c : report.cuts) out << '\t' << c;
  out << '\t' << std::fixed << std::setprecision(3) << report.seconds
      << std::defaultfloat << '\t' << Number(report.root_lp) << '\t'
      << Number(report.root_bound);
  return out.str();
}

std::string FormatText(const SolveReport& report, const Instance& instance,
                       const std::string& id) {
  std::ostringstream out;
  out << "instance   " << id << "\n"
      << "mode       " << ModeName(report.mode) << "\n"
      << "size       n=" << instance.num_nodes() << " m=" << instance.num_arcs()
      << " b=" << instance.coverage() << "\n"
      << "status     " << SolveStatusName(report.status) << "\n"
      << "ub         " << Number(report.ub) << "\n"
      << "lb         " << Number(report.lb) << "\n"
      << "gap        " << Number(report.gap) << "\n"
      << "root lp    " << Number(report.root_lp) << "\n"
      << "root bound " << Number(report.root_bound) << " (" << report.root_rounds
      << " rounds)\n"
      << "nodes      " << report.nodes << "\n"
      << "cuts      ";
  for (int f = 0; f < kNumCutFamilies; ++f) {
    out << ' ' << CutFamilyName(static_cast<CutFamily>(f)) << '='
        << report.cuts[f];
  }
  out << "\nseconds    " << std::fixed << std::setprecision(3) << report.seconds
      << "\n";
  if (!report.order.empty()) {
    out << "order     ";
    for (int i : report.order) out << ' ' << i + 1;
    out << "\n";
  }
  return out.str();
}

}  // namespace lcim
