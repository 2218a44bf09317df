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

#include "lcim/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lcim/knapsack_cuts.h"

namespace lcim {

namespace {

constexpr double kEnumTolerance = 1e-9;
constexpr double kRankTolerance = 1e-8;

int64_t Influence(const Instance& instance, int node, uint32_t set) {
  int64_t total = 0;
  for (int a : instance.in_arcs(node)) {
    if (set >> instance.arc(a).tail & 1u) total += instance.arc(a).weight;
  }
  return total;
}

// Rank of the rows after subtracting the first, by elimination with partial
// pivoting.
int AffineRank(std::vector<std::vector<double>> points) {
  if (points.size() <= 1) return 0;
  const size_t cols = points[0].size();
  std::vector<std::vector<double>> rows;
  for (size_t r = 1; r < points.size(); ++r) {
    std::vector<double> row(cols);
    for (size_t c = 0; c < cols; ++c) row[c] = points[r][c] - points[0][c];
    rows.push_back(std::move(row));
  }
  int rank = 0;
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    size_t pivot = rank;
    for (size_t r = rank; r < rows.size(); ++r) {
      if (std::abs(rows[r][c]) > std::abs(rows[pivot][c])) pivot = r;
    }
    if (std::abs(rows[pivot][c]) <= kRankTolerance) continue;
    std::swap(rows[pivot], rows[rank]);
    for (size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][c] / rows[rank][c];
      if (f == 0.0) continue;
      for (size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int64_t OrderCost(const Instance& instance, const std::vector<int>& order) {
  std::vector<bool> active(instance.num_nodes(), false);
  int64_t cost = 0;
  for (int i : order) {
    int64_t in = 0;
    for (int a : instance.in_arcs(i)) {
      if (active[instance.arc(a).tail]) in += instance.arc(a).weight;
    }
    cost += std::max<int64_t>(0, instance.threshold(i) - in);
    active[i] = true;
  }
  return cost;
}

std::optional<ActivationOrder> BruteForceOptimum(const Instance& instance) {
  const int n = instance.num_nodes();
  if (n > 16) throw std::invalid_argument("brute force limited to n <= 16");
  if (instance.coverage() > n) return std::nullopt;
  const uint32_t full = (1u << n) - 1;
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max();
  std::vector<int64_t> best(full + 1, kInf);
  std::vector<int8_t> last(full + 1, -1);
  best[0] = 0;
  for (uint32_t s = 1; s <= full; ++s) {
    for (int i = 0; i < n; ++i) {
      if (!(s >> i & 1u)) continue;
      const uint32_t rest = s & ~(1u << i);
      const int64_t cost =
          best[rest] +
          std::max<int64_t>(0, instance.threshold(i) - Influence(instance, i, rest));
      if (cost < best[s]) {
        best[s] = cost;
        last[s] = static_cast<int8_t>(i);
      }
    }
  }
  uint32_t pick = full;
  for (uint32_t s = 0; s <= full; ++s) {
    if (std::popcount(s) >= instance.coverage() && best[s] < best[pick]) {
      pick = s;
    }
  }
  ActivationOrder out;
  out.cost = best[pick];
  for (uint32_t s = pick; s != 0; s &= ~(1u << last[s])) {
    out.order.push_back(last[s]);
  }
  std::reverse(out.order.begin(), out.order.end());
  return out;
}

std::optional<ActivationOrder> PermutationOptimum(const Instance& instance) {
  const int n = instance.num_nodes();
  if (n > 8) throw std::invalid_argument("permutation oracle limited to n <= 8");
  if (instance.coverage() > n) return std::nullopt;
  ActivationOrder best;
  best.cost = std::numeric_limits<int64_t>::max();
  std::vector<int> order;
  std::vector<bool> used(n, false);
  std::function<void(int64_t)> extend = [&](int64_t cost) {
    if (cost >= best.cost) return;
    if (static_cast<int64_t>(order.size()) >= instance.coverage()) {
      best.cost = cost;
      best.order = order;
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      int64_t in = 0;
      for (int a : instance.in_arcs(i)) {
        if (used[instance.arc(a).tail]) in += instance.arc(a).weight;
      }
      used[i] = true;
      order.push_back(i);
      extend(cost + std::max<int64_t>(0, instance.threshold(i) - in));
      order.pop_back();
      used[i] = false;
    }
  };
  extend(0);
  return best;
}

NodeInequality NodeInequality::From(const KnapsackCut& cut) {
  NodeInequality out;
  out.cx = 1.0;
  for (int64_t a : cut.alpha) out.cy.push_back(static_cast<double>(a));
  out.cz = -static_cast<double>(cut.beta);
  out.rhs = 0.0;
  return out;
}

namespace {

// Calls visit(x, y, z) for every binary (y, z) with minimal x.
template <typename Visit>
void ForEachNodePoint(const NodeView& view, Visit visit) {
  const int v = view.degree();
  if (v > 20) throw std::invalid_argument("node enumeration limited to v <= 20");
  std::vector<double> y(v);
  for (int z = 0; z < 2; ++z) {
    for (uint32_t mask = 0; mask < (1u << v); ++mask) {
      int64_t in = 0;
      for (int k = 0; k < v; ++k) {
        y[k] = mask >> k & 1u;
        if (y[k] > 0) in += view.in[k].weight;
      }
      const double x =
          static_cast<double>(std::max<int64_t>(0, view.threshold * z - in));
      visit(x, y, static_cast<double>(z));
    }
  }
}

double NodeActivity(const NodeInequality& ineq, double x,
                    const std::vector<double>& y, double z) {
  double total = ineq.cx * x + ineq.cz * z;
  for (size_t k = 0; k < y.size(); ++k) total += ineq.cy[k] * y[k];
  return total;
}

void CheckShape(const NodeInequality& ineq, const NodeView& view) {
  if (static_cast<int>(ineq.cy.size()) != view.degree()) {
    throw std::invalid_argument("coefficient count does not match degree");
  }
}

}  // namespace

bool CheckValidity(const NodeInequality& ineq, const NodeView& view) {
  CheckShape(ineq, view);
  if (ineq.cx < -kEnumTolerance) return false;  // x is unbounded above.
  bool valid = true;
  ForEachNodePoint(view, [&](double x, const std::vector<double>& y, double z) {
    if (NodeActivity(ineq, x, y, z) < ineq.rhs - kEnumTolerance) valid = false;
  });
  return valid;
}

bool CheckFacet(const NodeInequality& ineq, const NodeView& view) {
  if (!CheckValidity(ineq, view)) {
    throw std::invalid_argument("facet check on an invalid inequality");
  }
  std::vector<std::vector<double>> tight;
  const bool free_x = std::abs(ineq.cx) <= kEnumTolerance;
  ForEachNodePoint(view, [&](double x, const std::vector<double>& y, double z) {
    if (std::abs(NodeActivity(ineq, x, y, z) - ineq.rhs) > kEnumTolerance) return;
    std::vector<double> p = {x};
    p.insert(p.end(), y.begin(), y.end());
    p.push_back(z);
    tight.push_back(p);
    if (free_x) {
      p[0] += 1.0;
      tight.push_back(p);
    }
  });
  return AffineRank(std::move(tight)) == view.degree() + 1;
}

bool CheckValidity(const Inequality& ineq, const Instance& instance,
                   QOptions options) {
  const int n = instance.num_nodes();
  if (n > 8) throw std::invalid_argument("Q enumeration limited to n <= 8");
  for (const Term& t : ineq.terms) {
    if (t.kind == VarKind::kX && t.coef < -kEnumTolerance) return false;
  }
  const uint32_t full = (1u << n) - 1;
  Point point;
  point.x.assign(n, 0.0);
  point.y.assign(instance.num_arcs(), 0.0);
  point.z.assign(n, 0.0);
  bool valid = true;
  for (uint32_t active = 0; active <= full && valid; ++active) {
    if (std::popcount(active) < instance.coverage()) continue;
    if (options.all_active && active != full) continue;
    std::vector<int> edges;  // Lower-index arc of each active edge.
    for (int a = 0; a < instance.num_arcs(); ++a) {
      const Arc& arc = instance.arc(a);
      if (arc.tail < arc.head && (active >> arc.tail & 1u) &&
          (active >> arc.head & 1u)) {
        edges.push_back(a);
      }
    }
    for (int i = 0; i < n; ++i) point.z[i] = active >> i & 1u;
    std::fill(point.y.begin(), point.y.end(), 0.0);
    std::function<void(size_t)> orient = [&](size_t e) {
      if (!valid) return;
      if (e == edges.size()) {
        // Acyclic support: repeatedly peel nodes without live in-arcs.
        uint32_t left = active;
        bool progress = true;
        while (left != 0 && progress) {
          progress = false;
          for (int i = 0; i < n; ++i) {
            if (!(left >> i & 1u)) continue;
            bool source = true;
            for (int a : instance.in_arcs(i)) {
              if (point.y[a] > 0.5 && (left >> instance.arc(a).tail & 1u)) {
                source = false;
                break;
              }
            }
            if (source) {
              left &= ~(1u << i);
              progress = true;
            }
          }
        }
        if (left != 0) return;
        for (int i = 0; i < n; ++i) {
          int64_t in = 0;
          for (int a : instance.in_arcs(i)) {
            if (point.y[a] > 0.5) in += instance.arc(a).weight;
          }
          point.x[i] = static_cast<double>(std::max<int64_t>(
              0, instance.threshold(i) * static_cast<int64_t>(point.z[i]) - in));
        }
        if (ineq.Violation(point) > kEnumTolerance) valid = false;
        return;
      }
      const int a = edges[e];
      const int r = instance.reverse_arc(a);
      if (!options.all_active) orient(e + 1);
      point.y[a] = 1.0;
      orient(e + 1);
      point.y[a] = 0.0;
      point.y[r] = 1.0;
      orient(e + 1);
      point.y[r] = 0.0;
    };
    orient(0);
  }
  return valid;
}

UcBest EnumerateUcSubsets(const Instance& instance, const Cycle& cycle,
                          const std::vector<KnapsackCut>& bases, int anchor,
                          const Point& point) {
  const int k = cycle.size();
  if (k > 12) throw std::invalid_argument("U enumeration limited to 12 nodes");
  if (static_cast<int>(bases.size()) != k) {
    throw std::invalid_argument("need one base per cycle node");
  }
  std::vector<int> eligible;
  for (int t = 0; t < k; ++t) {
    if (Omega(instance, cycle, bases[t]) >= 1) eligible.push_back(t);
  }
  UcBest best;
  best.violation = -std::numeric_limits<double>::infinity();
  const uint32_t count = 1u << eligible.size();
  for (uint32_t mask = 0; mask < count; ++mask) {
    std::vector<int> u;
    for (size_t e = 0; e < eligible.size(); ++e) {
      if (mask >> e & 1u) u.push_back(eligible[e]);
    }
    UcData data;
    try {
      data = MakeUcData(instance, cycle, bases, u, anchor);
    } catch (const std::invalid_argument&) {
      continue;  // delta overflow
    }
    const double violation = BuildUcCut(instance, data).Violation(point);
    if (violation > best.violation) {
      best.violation = violation;
      best.u = u;
    }
  }
  return best;
}

std::optional<MisBest> MaxMisViolation(const NodeView& view,
                                       const NodePoint& point) {
  const int v = view.degree();
  if (v > 16) throw std::invalid_argument("MIS enumeration limited to v <= 16");
  std::optional<MisBest> best;
  for (uint32_t mask = 0; mask < (1u << v); ++mask) {
    std::vector<int> m;
    int64_t sum = 0;
    for (int k = 0; k < v; ++k) {
      if (mask >> k & 1u) {
        m.push_back(k);
        sum += view.in[k].weight;
      }
    }
    if (view.threshold - sum <= 0) continue;
    const double violation = BuildMisCut(view, m).Violation(point);
    if (!best || violation > best->violation) best = MisBest{m, violation};
  }
  return best;
}

}  // namespace lcim
