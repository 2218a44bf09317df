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

#include "lcim/special_cases.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace lcim {

std::vector<int> CycleOrder(const Instance& instance) {
  const int n = instance.num_nodes();
  if (n < 3) throw std::invalid_argument("cycle instance needs n >= 3");
  if (instance.num_arcs() != 2 * n) {
    throw std::invalid_argument("not a simple cycle: need n edges");
  }
  for (int i = 0; i < n; ++i) {
    if (instance.degree(i) != 2) {
      throw std::invalid_argument("not a simple cycle: node degree != 2");
    }
  }
  std::vector<int> order = {0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  int prev = -1;
  int cur = 0;
  while (true) {
    int next = -1;
    for (int a : instance.out_arcs(cur)) {
      const int w = instance.arc(a).head;
      if (w == prev) continue;
      if (next < 0 || (prev < 0 && w < next)) next = w;
    }
    if (next == 0) break;
    if (seen[next]) throw std::invalid_argument("not a simple cycle");
    seen[next] = true;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  if (static_cast<int>(order.size()) != n) {
    throw std::invalid_argument("not a simple cycle: disconnected");
  }
  return order;
}

const char* DirectionName(Direction direction) {
  switch (direction) {
    case Direction::kForward:
      return "forward";
    case Direction::kBackward:
      return "backward";
    case Direction::kMixed:
      return "mixed";
  }
  return "unknown";
}

namespace {

struct CycleData {
  std::vector<int> nodes;
  std::vector<int64_t> h;
  std::vector<int64_t> fwd;  // Weight of nodes[t] -> nodes[t+1].
  std::vector<int64_t> bwd;  // Weight of nodes[t+1] -> nodes[t].
};

CycleData LoadCycle(const Instance& instance, int64_t b) {
  if (!instance.IsPreprocessed()) {
    throw std::invalid_argument("cycle DP needs preprocessed weights (d <= h)");
  }
  CycleData c;
  c.nodes = CycleOrder(instance);
  const int n = static_cast<int>(c.nodes.size());
  if (b < 1 || b > n) throw std::invalid_argument("b must lie in [1, n]");
  for (int t = 0; t < n; ++t) {
    const int u = c.nodes[t];
    const int w = c.nodes[(t + 1) % n];
    c.h.push_back(instance.threshold(u));
    c.fwd.push_back(instance.arc(instance.FindArc(u, w)).weight);
    c.bwd.push_back(instance.arc(instance.FindArc(w, u)).weight);
  }
  return c;
}

// Topological order of the active nodes under the chosen orientations.
std::vector<int> RealiseOrder(const CycleData& c, const std::vector<int>& active,
                              const std::vector<int>& state) {
  const int n = static_cast<int>(c.nodes.size());
  std::vector<int> indegree(n, 0);
  for (int t = 0; t < n; ++t) {
    if (state[t] == 1) ++indegree[(t + 1) % n];
    if (state[t] == 2) ++indegree[t];
  }
  std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>,
                      std::greater<>>
      ready;
  for (int t = 0; t < n; ++t) {
    if (active[t] && indegree[t] == 0) ready.push({c.nodes[t], t});
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int t = ready.top().second;
    ready.pop();
    order.push_back(c.nodes[t]);
    // Out-edges of t: e_t forward, e_{t-1} backward.
    if (state[t] == 1 && --indegree[(t + 1) % n] == 0) {
      ready.push({c.nodes[(t + 1) % n], (t + 1) % n});
    }
    const int pe = (t + n - 1) % n;
    if (state[pe] == 2 && --indegree[pe] == 0) {
      ready.push({c.nodes[pe], pe});
    }
  }
  return order;
}

Direction Classify(const std::vector<int>& state) {
  bool any_fwd = false;
  bool any_bwd = false;
  for (int s : state) {
    any_fwd |= s == 1;
    any_bwd |= s == 2;
  }
  if (any_fwd && any_bwd) return Direction::kMixed;
  return any_bwd ? Direction::kBackward : Direction::kForward;
}

}  // namespace

CyclePlan DpCycle(const Instance& instance, int64_t b) {
  const CycleData c = LoadCycle(instance, b);
  const int n = static_cast<int>(c.nodes.size());
  const int nb = static_cast<int>(b) + 1;
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  // State: (a_t, s_{t-1}, count, flags); flags bit 0 = every edge so far
  // forward, bit 1 = every edge so far backward.
  const int num_states = 2 * 3 * nb * 4;
  auto index = [&](int a, int s, int cnt, int flags) {
    return ((a * 3 + s) * nb + cnt) * 4 + flags;
  };
  CyclePlan best;
  best.b = b;
  best.cost = kInf;
  std::vector<int> best_active;
  std::vector<int> best_state;
  std::vector<std::vector<int64_t>> cost(n + 1,
                                         std::vector<int64_t>(num_states));
  std::vector<std::vector<int>> back(n + 1, std::vector<int>(num_states));
  for (int a0 = 0; a0 < 2; ++a0) {
    for (int s_last = 0; s_last < 3; ++s_last) {
      if (s_last != 0 && a0 == 0) continue;
      for (auto& layer : cost) std::fill(layer.begin(), layer.end(), kInf);
      const int flags0 = (s_last == 1 ? 1 : 0) | (s_last == 2 ? 2 : 0);
      cost[0][index(a0, s_last, 0, flags0)] = 0;
      for (int t = 0; t < n; ++t) {
        for (int st = 0; st < num_states; ++st) {
          const int64_t base = cost[t][st];
          if (base >= kInf) continue;
          const int flags = st % 4;
          const int cnt = (st / 4) % nb;
          const int s_prev = (st / 4 / nb) % 3;
          const int a = st / 4 / nb / 3;
          const bool last = t == n - 1;
          for (int a_next = 0; a_next < 2; ++a_next) {
            if (last && a_next != a0) continue;
            for (int s = 0; s < 3; ++s) {
              if (last && s != s_last) continue;
              if (s != 0 && !(a && a_next)) continue;
              int64_t pay = 0;
              if (a) {
                int64_t in = 0;
                if (s_prev == 1) in += c.fwd[(t + n - 1) % n];
                if (s == 2) in += c.bwd[t];
                pay = std::max<int64_t>(0, c.h[t] - in);
              }
              const int ncnt = std::min<int>(static_cast<int>(b), cnt + a);
              int nflags = flags;
              if (!last) nflags &= (s == 1 ? 1 : 0) | (s == 2 ? 2 : 0);
              const int to = index(a_next, s, ncnt, nflags);
              if (base + pay < cost[t + 1][to]) {
                cost[t + 1][to] = base + pay;
                back[t + 1][to] = st;
              }
            }
          }
        }
      }
      // Final states close the cycle on (a0, s_last) with no directed loop.
      const int end = index(a0, s_last, static_cast<int>(b), 0);
      if (cost[n][end] >= best.cost) continue;
      best.cost = cost[n][end];
      std::vector<int> active(n), state(n);
      int st = end;
      for (int t = n; t >= 1; --t) {
        const int prev = back[t][st];
        active[t - 1] = prev / 4 / nb / 3;
        state[t - 1] = (st / 4 / nb) % 3;
        st = prev;
      }
      best_active = active;
      best_state = state;
    }
  }
  if (best.cost >= kInf) throw std::logic_error("cycle DP found no plan");
  best.order = RealiseOrder(c, best_active, best_state);
  best.start = best.order.empty() ? c.nodes[0] : best.order[0];
  best.direction = Classify(best_state);
  return best;
}

namespace {

CyclePlan SingleChain(const Instance& instance, int64_t b, bool naive) {
  const CycleData c = LoadCycle(instance, b);
  const int n = static_cast<int>(c.nodes.size());
  for (int t = 0; t < n; ++t) {
    if (c.h[(t + 1) % n] < c.fwd[t] || c.h[t] < c.bwd[t]) {
      throw std::logic_error("negative chain step");
    }
  }
  // step_f[k]: cost of node k+1 when reached from k going forward.
  // step_b[k]: cost of node k when reached from k+1 going backward.
  std::vector<int64_t> step_f(n), step_b(n);
  for (int k = 0; k < n; ++k) {
    step_f[k] = c.h[(k + 1) % n] - c.fwd[k];
    step_b[k] = c.h[k] - c.bwd[k];
  }
  const int len = static_cast<int>(b) - 1;  // Arcs walked.
  const int walk = b == n ? n - 2 : len;    // Arcs charged one-sided.
  auto chain = [&](int t, bool forward) -> int64_t {
    int64_t total = c.h[t];
    for (int k = 0; k < walk; ++k) {
      total += forward ? step_f[(t + k) % n] : step_b[(t - k - 1 + 2 * n) % n];
    }
    return total;
  };
  auto closing = [&](int t, bool forward) -> int64_t {
    // b = n: the last node hears from both cycle neighbors.
    if (forward) {
      const int last = (t + n - 1) % n;
      return std::max<int64_t>(
          0, c.h[last] - c.fwd[(last + n - 1) % n] - c.bwd[last]);
    }
    const int last = (t + 1) % n;
    return std::max<int64_t>(0, c.h[last] - c.bwd[last] - c.fwd[t]);
  };
  std::vector<int64_t> fwd_sum(n), bwd_sum(n);
  if (naive) {
    for (int t = 0; t < n; ++t) {
      fwd_sum[t] = chain(t, true);
      bwd_sum[t] = chain(t, false);
    }
  } else {
    // Sliding windows over the doubled step arrays.
    int64_t wf = 0;
    for (int k = 0; k < walk; ++k) wf += step_f[k % n];
    for (int t = 0; t < n; ++t) {
      fwd_sum[t] = c.h[t] + wf;
      if (walk > 0) wf += step_f[(t + walk) % n] - step_f[t];
    }
    // Backward from t charges step_b[t-1], ..., step_b[t-walk].
    int64_t wb = 0;
    for (int k = 1; k <= walk; ++k) wb += step_b[(0 - k + 2 * n) % n];
    for (int t = 0; t < n; ++t) {
      bwd_sum[t] = c.h[t] + wb;
      if (walk > 0) wb += step_b[t] - step_b[(t - walk + 2 * n) % n];
    }
  }
  CyclePlan best;
  best.b = b;
  best.cost = std::numeric_limits<int64_t>::max();
  for (int t = 0; t < n; ++t) {
    for (int dir = 0; dir < 2; ++dir) {
      const bool forward = dir == 0;
      int64_t value = forward ? fwd_sum[t] : bwd_sum[t];
      if (b == n) value += closing(t, forward);
      if (b == 1) value = c.h[t];
      if (value < best.cost) {
        best.cost = value;
        best.start = c.nodes[t];
        best.direction = forward ? Direction::kForward : Direction::kBackward;
        best.order.clear();
        for (int k = 0; k < b; ++k) {
          best.order.push_back(c.nodes[forward ? (t + k) % n : (t - k + n) % n]);
        }
      }
    }
  }
  return best;
}

}  // namespace

CyclePlan DpCycleSingleChain(const Instance& instance, int64_t b) {
  return SingleChain(instance, b, false);
}

CyclePlan DpCycleSingleChainNaive(const Instance& instance, int64_t b) {
  return SingleChain(instance, b, true);
}

namespace {

bool IsTree(const Instance& instance) {
  const int n = instance.num_nodes();
  if (instance.num_edges() != n - 1) return false;
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int a : instance.out_arcs(u)) {
      const int w = instance.arc(a).head;
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

}  // namespace

HullCoeffs MakeEqualCoeffs(const Instance& instance) {
  if (instance.coverage() != instance.num_nodes()) {
    throw std::invalid_argument("equal-influence model needs b = n");
  }
  HullCoeffs hull;
  for (int i = 0; i < instance.num_nodes(); ++i) {
    const int64_t h = instance.threshold(i);
    int64_t d = h;
    const std::vector<int>& in = instance.in_arcs(i);
    if (!in.empty()) {
      d = instance.arc(in[0]).weight;
      for (int a : in) {
        if (instance.arc(a).weight != d) {
          std::ostringstream msg;
          msg << "unequal influence into node " << i + 1 << ": "
              << instance.arc(a).weight << " vs " << d;
          throw std::invalid_argument(msg.str());
        }
      }
    }
    if (d > h) throw std::invalid_argument("influence exceeds threshold");
    const int64_t sigma = (h + d - 1) / d;
    hull.d.push_back(d);
    hull.sigma.push_back(sigma);
    hull.g.push_back(h - (sigma - 1) * d);
  }
  return hull;
}

HullCoeffs MakeHullCoeffs(const Instance& instance) {
  if (!IsTree(instance)) throw std::invalid_argument("graph is not a tree");
  return MakeEqualCoeffs(instance);
}

LpModel BuildTreeEqualModel(const Instance& instance, bool with_hull) {
  const HullCoeffs hull = MakeHullCoeffs(instance);
  const int n = instance.num_nodes();
  LpModel model;
  for (int i = 0; i < n; ++i) {
    model.AddVariable("x[" + std::to_string(i + 1) + "]", 0.0, kInfinity, 1.0);
  }
  for (const Arc& arc : instance.arcs()) {
    model.AddVariable("y[" + std::to_string(arc.tail + 1) + "," +
                          std::to_string(arc.head + 1) + "]",
                      0.0, 1.0, 0.0);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> terms = {{i, 1.0}};
    for (int a : instance.in_arcs(i)) {
      terms.push_back({n + a, static_cast<double>(hull.d[i])});
    }
    model.AddRow(terms, RowSense::kGreaterEqual,
                 static_cast<double>(instance.threshold(i)),
                 "node[" + std::to_string(i + 1) + "]");
  }
  for (int a = 0; a < instance.num_arcs(); ++a) {
    const int r = instance.reverse_arc(a);
    if (r < a) continue;
    model.AddRow({{n + a, 1.0}, {n + r, 1.0}}, RowSense::kEqual, 1.0,
                 "edge[" + std::to_string(a) + "]");
  }
  if (with_hull) {
    for (int i = 0; i < n; ++i) {
      const double alpha = static_cast<double>(std::min(hull.g[i], hull.d[i]));
      std::vector<std::pair<int, double>> terms = {{i, 1.0}};
      for (int a : instance.in_arcs(i)) terms.push_back({n + a, alpha});
      model.AddRow(terms, RowSense::kGreaterEqual,
                   static_cast<double>(hull.g[i] * hull.sigma[i]),
                   "hull[" + std::to_string(i + 1) + "]");
    }
  }
  return model;
}

Inequality BuildUcEqualCut(const Instance& instance, const Cycle& cycle,
                           const std::vector<int>& u) {
  ValidateCycle(instance, cycle);
  const HullCoeffs hull = MakeEqualCoeffs(instance);
  const std::vector<int> nodes = cycle.Nodes(instance);
  const int k = static_cast<int>(nodes.size());
  std::vector<bool> on_cycle(instance.num_nodes(), false);
  for (int i : nodes) on_cycle[i] = true;
  std::vector<bool> in_u(instance.num_nodes(), false);
  int64_t delta = 1;
  std::vector<int64_t> omega(instance.num_nodes(), 0);
  for (int i : u) {
    if (i < 0 || i >= instance.num_nodes() || !on_cycle[i]) {
      throw std::invalid_argument("U must lie on the cycle");
    }
    if (in_u[i]) continue;
    in_u[i] = true;
    const int64_t alpha = std::min(hull.g[i], hull.d[i]);
    const int64_t beta = hull.g[i] * hull.sigma[i];
    int outside = 0;
    for (int a : instance.in_arcs(i)) {
      if (!on_cycle[instance.arc(a).tail]) ++outside;
    }
    omega[i] = instance.threshold(i) - beta + outside * (alpha - hull.d[i]);
    if (omega[i] <= 0) throw std::invalid_argument("omega must be >= 1 on U");
    delta = std::lcm(delta, omega[i]);
    if (delta > kMaxDelta) throw std::invalid_argument("delta overflow");
  }
  std::vector<double> ycoef(instance.num_arcs(), 0.0);
  Inequality ineq;
  ineq.family = CutFamily::kUc;
  int u_size = 0;
  double rhs = 0.0;
  for (int i = 0; i < instance.num_nodes(); ++i) {
    if (!in_u[i]) continue;
    ++u_size;
    const double gamma = static_cast<double>(delta / omega[i]);
    const double alpha = static_cast<double>(std::min(hull.g[i], hull.d[i]));
    ineq.terms.push_back({VarKind::kX, i, gamma});
    for (int a : instance.in_arcs(i)) ycoef[a] += gamma * alpha;
    rhs += gamma * static_cast<double>(hull.g[i] * hull.sigma[i]);
  }
  for (int t = 0; t < k; ++t) {
    if (in_u[nodes[t]]) continue;
    ycoef[cycle.arcs[(t + k - 1) % k]] -= static_cast<double>(delta);
  }
  for (int a = 0; a < instance.num_arcs(); ++a) {
    if (ycoef[a] != 0.0) ineq.terms.push_back({VarKind::kY, a, ycoef[a]});
  }
  rhs += static_cast<double>(delta) * (1.0 - k + u_size);
  ineq.rhs = rhs;
  std::ostringstream key;
  key << "uc-eq:";
  for (int a : Canonical(instance, cycle).arcs) key << a << ',';
  key << ':';
  for (int i = 0; i < instance.num_nodes(); ++i) {
    if (in_u[i]) key << i << ',';
  }
  ineq.key = key.str();
  return ineq;
}

}  // namespace lcim
