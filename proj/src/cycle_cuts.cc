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

#include "lcim/cycle_cuts.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "lcim/knapsack_cuts.h"

namespace lcim {

std::vector<int> Cycle::Nodes(const Instance& instance) const {
  std::vector<int> nodes;
  for (int a : arcs) nodes.push_back(instance.arc(a).tail);
  return nodes;
}

Cycle MakeCycle(const Instance& instance, const std::vector<int>& nodes) {
  Cycle cycle;
  const int k = static_cast<int>(nodes.size());
  for (int t = 0; t < k; ++t) {
    const int a = instance.FindArc(nodes[t], nodes[(t + 1) % k]);
    if (a < 0) throw std::invalid_argument("cycle uses a missing arc");
    cycle.arcs.push_back(a);
  }
  ValidateCycle(instance, cycle);
  return cycle;
}

void ValidateCycle(const Instance& instance, const Cycle& cycle) {
  const int k = cycle.size();
  if (k < 2) throw std::invalid_argument("cycle needs at least two arcs");
  std::set<int> seen;
  for (int t = 0; t < k; ++t) {
    const int a = cycle.arcs[t];
    if (a < 0 || a >= instance.num_arcs()) {
      throw std::invalid_argument("cycle arc out of range");
    }
    const Arc& arc = instance.arc(a);
    const Arc& next = instance.arc(cycle.arcs[(t + 1) % k]);
    if (arc.head != next.tail) throw std::invalid_argument("arcs do not chain");
    if (!seen.insert(arc.tail).second) {
      throw std::invalid_argument("cycle repeats a node");
    }
  }
}

Cycle Canonical(const Instance& instance, const Cycle& cycle) {
  const std::vector<int> nodes = cycle.Nodes(instance);
  const int start = static_cast<int>(
      std::min_element(nodes.begin(), nodes.end()) - nodes.begin());
  Cycle out;
  for (int t = 0; t < cycle.size(); ++t) {
    out.arcs.push_back(cycle.arcs[(start + t) % cycle.size()]);
  }
  return out;
}

Inequality BuildGcec(const Instance& instance, const Cycle& cycle, int k) {
  const std::vector<int> nodes = cycle.Nodes(instance);
  if (std::find(nodes.begin(), nodes.end(), k) == nodes.end()) {
    throw std::invalid_argument("GCEC anchor is not on the cycle");
  }
  Inequality ineq;
  ineq.family = CutFamily::kGcec;
  for (int i : nodes) {
    if (i != k) ineq.terms.push_back({VarKind::kZ, i, 1.0});
  }
  for (int a : cycle.arcs) ineq.terms.push_back({VarKind::kY, a, -1.0});
  ineq.rhs = 0.0;
  std::ostringstream key;
  key << "gcec:" << k << ':';
  for (int a : Canonical(instance, cycle).arcs) key << a << ',';
  ineq.key = key.str();
  return ineq;
}

std::optional<Cycle> FindViolatedCycleInteger(const Instance& instance,
                                              const Point& point) {
  const int n = instance.num_nodes();
  std::vector<int> color(n, 0);  // 0 new, 1 on stack, 2 done.
  std::vector<int> via(n, -1);   // Arc used to reach the node.
  for (int root = 0; root < n; ++root) {
    if (color[root] != 0) continue;
    std::vector<std::pair<int, size_t>> stack = {{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      const std::vector<int>& out = instance.out_arcs(u);
      if (next == out.size()) {
        color[u] = 2;
        stack.pop_back();
        continue;
      }
      const int a = out[next++];
      if (point.y[a] <= 0.5) continue;
      const int w = instance.arc(a).head;
      if (color[w] == 1) {
        Cycle cycle;
        cycle.arcs.push_back(a);
        for (int t = u; t != w; t = instance.arc(via[t]).tail) {
          cycle.arcs.push_back(via[t]);
        }
        std::reverse(cycle.arcs.begin(), cycle.arcs.end());
        return Canonical(instance, cycle);
      }
      if (color[w] == 0) {
        color[w] = 1;
        via[w] = a;
        stack.push_back({w, 0});
      }
    }
  }
  return std::nullopt;
}

double CycleWeight(const Instance& instance, const Cycle& cycle,
                   const Point& point) {
  double w = 0.0;
  for (int a : cycle.arcs) {
    w += point.z[instance.arc(a).head] - point.y[a];
  }
  return w;
}

std::vector<Cycle> FindViolatedCyclesFractional(const Instance& instance,
                                                const Point& point,
                                                int max_cycles,
                                                double tolerance) {
  const int n = instance.num_nodes();
  std::vector<double> weight(instance.num_arcs());
  for (int a = 0; a < instance.num_arcs(); ++a) {
    weight[a] =
        std::max(0.0, point.z[instance.arc(a).head] - point.y[a]);
  }
  std::vector<std::pair<double, Cycle>> found;
  std::set<std::vector<int>> seen;
  std::vector<double> dist(n);
  std::vector<int> via(n);
  for (int a = 0; a < instance.num_arcs(); ++a) {
    const int k = instance.arc(a).tail;
    const int l = instance.arc(a).head;
    const int forbidden = instance.reverse_arc(a);
    const double budget = 1.0 - tolerance - weight[a];
    if (budget <= 0) continue;
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    std::fill(via.begin(), via.end(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[l] = 0.0;
    heap.push({0.0, l});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[u] || u == k) continue;
      if (d >= budget) break;
      for (int e : instance.out_arcs(u)) {
        if (e == forbidden) continue;
        const int w = instance.arc(e).head;
        const double nd = d + weight[e];
        if (nd < dist[w]) {
          dist[w] = nd;
          via[w] = e;
          heap.push({nd, w});
        }
      }
    }
    if (!(dist[k] < budget)) continue;
    Cycle cycle;
    for (int t = k; t != l; t = instance.arc(via[t]).tail) {
      cycle.arcs.push_back(via[t]);
    }
    cycle.arcs.push_back(a);
    std::reverse(cycle.arcs.begin(), cycle.arcs.end());
    // Now a, then the path l -> k; rotate to canonical form.
    cycle = Canonical(instance, cycle);
    if (cycle.size() < 3) continue;
    if (!seen.insert(cycle.arcs).second) continue;
    found.push_back({CycleWeight(instance, cycle, point), cycle});
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Cycle> out;
  for (auto& [w, cycle] : found) {
    if (static_cast<int>(out.size()) >= max_cycles) break;
    if (w < 1.0 - tolerance) out.push_back(std::move(cycle));
  }
  return out;
}

bool ConstantFormValid(const Instance& instance, const Cycle& cycle) {
  return cycle.size() > instance.num_nodes() - instance.coverage();
}

int64_t Omega(const Instance& instance, const Cycle& cycle,
              const KnapsackCut& base) {
  const std::vector<int> nodes = cycle.Nodes(instance);
  const NodeView view = instance.View(base.node);
  int64_t omega = view.threshold - base.beta;
  for (int j = 0; j < view.degree(); ++j) {
    const int nb = view.in[j].node;
    if (std::find(nodes.begin(), nodes.end(), nb) != nodes.end()) continue;
    omega += base.alpha[j] - view.in[j].weight;
  }
  return omega;
}

UcData MakeUcData(const Instance& instance, const Cycle& cycle,
                  std::vector<KnapsackCut> bases, std::vector<int> u,
                  int anchor) {
  ValidateCycle(instance, cycle);
  UcData data;
  data.cycle = cycle;
  data.nodes = cycle.Nodes(instance);
  if (bases.size() != data.nodes.size()) {
    throw std::invalid_argument("need one base inequality per cycle node");
  }
  for (size_t t = 0; t < bases.size(); ++t) {
    if (bases[t].node != data.nodes[t]) {
      throw std::invalid_argument("base inequality on the wrong node");
    }
    data.omega.push_back(Omega(instance, cycle, bases[t]));
  }
  data.bases = std::move(bases);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  data.delta = 1;
  for (int t : u) {
    if (t < 0 || t >= static_cast<int>(data.nodes.size())) {
      throw std::invalid_argument("U position out of range");
    }
    if (data.omega[t] <= 0) {
      throw std::invalid_argument("omega must be >= 1 on U");
    }
    data.delta = std::lcm(data.delta, data.omega[t]);
    if (data.delta > kMaxDelta) throw std::invalid_argument("delta overflow");
  }
  data.u = std::move(u);
  for (int t : data.u) data.gamma.push_back(data.delta / data.omega[t]);
  if (anchor >= 0 && std::find(data.nodes.begin(), data.nodes.end(), anchor) ==
                         data.nodes.end()) {
    throw std::invalid_argument("anchor is not on the cycle");
  }
  data.anchor = anchor;
  return data;
}

Inequality BuildUcCut(const Instance& instance, const UcData& data) {
  std::map<std::pair<int, int>, double> coef;
  auto add = [&](VarKind kind, int index, double c) {
    coef[{static_cast<int>(kind), index}] += c;
  };
  const int k = static_cast<int>(data.nodes.size());
  std::vector<bool> in_u(k, false);
  for (size_t s = 0; s < data.u.size(); ++s) {
    const int t = data.u[s];
    in_u[t] = true;
    const double g = static_cast<double>(data.gamma[s]);
    const KnapsackCut& base = data.bases[t];
    const NodeView view = instance.View(base.node);
    add(VarKind::kX, base.node, g);
    for (int j = 0; j < view.degree(); ++j) {
      if (base.alpha[j] != 0) {
        add(VarKind::kY, view.in[j].arc, g * static_cast<double>(base.alpha[j]));
      }
    }
    add(VarKind::kZ, base.node, -g * static_cast<double>(base.beta));
  }
  const double delta = static_cast<double>(data.delta);
  for (int t = 0; t < k; ++t) {
    if (in_u[t]) continue;
    // Arc of C entering nodes[t].
    const int a = data.cycle.arcs[(t + k - 1) % k];
    add(VarKind::kZ, data.nodes[t], delta);
    add(VarKind::kY, a, -delta);
  }
  Inequality ineq;
  ineq.family = data.u.empty() && data.anchor >= 0 ? CutFamily::kGcec
                                                   : CutFamily::kUc;
  if (data.anchor >= 0) {
    add(VarKind::kZ, data.anchor, -delta);
    ineq.rhs = 0.0;
  } else {
    ineq.rhs = delta;
  }
  for (const auto& [key, c] : coef) {
    if (c != 0.0) {
      ineq.terms.push_back({static_cast<VarKind>(key.first), key.second, c});
    }
  }
  std::ostringstream key;
  key << "uc:" << data.anchor << ':';
  for (int a : Canonical(instance, data.cycle).arcs) key << a << ',';
  key << ':';
  for (int t : data.u) {
    key << data.nodes[t] << '/' << CutFamilyName(data.bases[t].family) << '/';
    for (int s : data.bases[t].set) key << s << '.';
    key << ',';
  }
  ineq.key = key.str();
  return ineq;
}

namespace {

// Entering-arc weight w_t = z_{nodes[t]} - y_{arc into nodes[t]}.
std::vector<double> EnteringWeights(const Instance& instance,
                                    const Cycle& cycle, const Point& point) {
  const int k = cycle.size();
  std::vector<double> w(k);
  for (int t = 0; t < k; ++t) {
    const int a = cycle.arcs[(t + k - 1) % k];
    w[t] = point.z[instance.arc(a).head] - point.y[a];
  }
  return w;
}

KnapsackCut OriginalRow(const NodeView& view) {
  KnapsackCut cut;
  cut.family = CutFamily::kBase;
  cut.node = view.node;
  for (const Neighbor& nb : view.in) cut.alpha.push_back(nb.weight);
  cut.beta = view.threshold;
  return cut;
}

}  // namespace

double UcViolation(const Instance& instance, const UcData& data,
                   const Point& point) {
  const std::vector<double> w = EnteringWeights(instance, data.cycle, point);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double c0 = data.anchor >= 0 ? point.z[data.anchor] : 1.0;
  double s = c0 - total;
  for (int t : data.u) {
    const NodeView view = instance.View(data.nodes[t]);
    const double theta = data.bases[t].Slack(Restrict(point, view));
    s += w[t] - theta / static_cast<double>(data.omega[t]);
  }
  return static_cast<double>(data.delta) * s;
}

std::optional<UcSeparation> SeparateUc(
    const Instance& instance, const Cycle& cycle,
    const std::vector<std::vector<KnapsackCut>>& candidates,
    const Point& point, double tolerance) {
  ValidateCycle(instance, cycle);
  const std::vector<int> nodes = cycle.Nodes(instance);
  const int k = static_cast<int>(nodes.size());
  if (static_cast<int>(candidates.size()) != k) {
    throw std::invalid_argument("need candidates per cycle node");
  }
  std::vector<KnapsackCut> bases;
  std::vector<int64_t> omega(k, 0);
  std::vector<double> theta(k, 0.0);
  std::vector<bool> eligible(k, false);
  for (int t = 0; t < k; ++t) {
    const NodeView view = instance.View(nodes[t]);
    const NodePoint np = Restrict(point, view);
    int pick = -1;
    for (size_t c = 0; c < candidates[t].size(); ++c) {
      const KnapsackCut& cand = candidates[t][c];
      if (cand.node != nodes[t] || Omega(instance, cycle, cand) < 1) continue;
      if (pick < 0 || cand.Slack(np) < candidates[t][pick].Slack(np)) {
        pick = static_cast<int>(c);
      }
    }
    bases.push_back(pick >= 0 ? candidates[t][pick] : OriginalRow(view));
    omega[t] = Omega(instance, cycle, bases[t]);
    theta[t] = bases[t].Slack(np);
    eligible[t] = omega[t] >= 1;
  }

  int anchor = -1;
  if (!ConstantFormValid(instance, cycle)) {
    anchor = nodes[0];
    for (int i : nodes) {
      if (point.z[i] > point.z[anchor]) anchor = i;
    }
  }
  const std::vector<double> w = EnteringWeights(instance, cycle, point);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double c0 = anchor >= 0 ? point.z[anchor] : 1.0;
  const double c = c0 - total;

  // Exact: best sum of a_t per reachable lcm value.
  struct State {
    double sum = 0.0;
    std::vector<int> u;
  };
  std::map<int64_t, State> states = {{1, State{}}};
  for (int t = 0; t < k; ++t) {
    if (!eligible[t]) continue;
    const double a = w[t] - theta[t] / static_cast<double>(omega[t]);
    std::map<int64_t, State> next = states;
    for (const auto& [l, state] : states) {
      const int64_t nl = std::lcm(l, omega[t]);
      if (nl > kMaxDelta) continue;
      const double sum = state.sum + a;
      auto it = next.find(nl);
      if (it == next.end() || sum > it->second.sum) {
        State grown = state;
        grown.sum = sum;
        grown.u.push_back(t);
        next[nl] = std::move(grown);
      }
    }
    states = std::move(next);
  }
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> best_u;
  for (const auto& [l, state] : states) {
    const double value = static_cast<double>(l) * (c + state.sum);
    if (value > best + 1e-12) {
      best = value;
      best_u = state.u;
    }
  }

  // The chain DAG over eligible nodes sorted by theta.
  UcDag dag;
  dag.theta = theta;
  for (int t = 0; t < k; ++t) {
    if (eligible[t]) dag.order.push_back(t);
  }
  std::stable_sort(dag.order.begin(), dag.order.end(),
                   [&](int a, int b) { return theta[a] < theta[b]; });
  dag.f_direct = -std::numeric_limits<double>::infinity();
  int direct = -1;
  for (int t : dag.order) {
    const double f =
        static_cast<double>(omega[t]) * (c0 - (total - w[t])) - theta[t];
    if (f > dag.f_direct) {
      dag.f_direct = f;
      direct = t;
    }
  }
  dag.value = dag.order.empty() ? c : dag.f_direct;
  if (direct >= 0) dag.best_u = {direct};
  int64_t delta = 1;
  double prefix_w = 0.0;
  double chain = 0.0;
  std::vector<int> prefix;
  for (int t : dag.order) {
    const int64_t nd = std::lcm(delta, omega[t]);
    if (nd > kMaxDelta) break;
    delta = nd;
    prefix.push_back(t);
    prefix_w += w[t];
    chain += theta[t];
    double f = static_cast<double>(delta) * (c0 - (total - prefix_w));
    for (int s : prefix) {
      f -= (static_cast<double>(delta / omega[s]) + 1.0) * theta[s];
    }
    dag.f_exit.push_back(f);
    if (chain + f > dag.value) {
      dag.value = chain + f;
      dag.best_u = prefix;
      std::sort(dag.best_u.begin(), dag.best_u.end());
    }
  }

  if (!(best > tolerance)) return std::nullopt;
  UcSeparation out;
  out.data = MakeUcData(instance, cycle, std::move(bases), best_u, anchor);
  out.cut = BuildUcCut(instance, out.data);
  out.violation = out.cut.Violation(point);
  out.dag = std::move(dag);
  return out;
}

bool DominanceCheck(const Instance& instance, const Cycle& cycle,
                    const Point& point) {
  const double weight = CycleWeight(instance, cycle, point);
  const double empty_violation = 1.0 - weight;
  for (int k : cycle.Nodes(instance)) {
    const double gcec_violation = BuildGcec(instance, cycle, k).Violation(point);
    if (gcec_violation > 0 && empty_violation < gcec_violation - 1e-12) {
      return false;
    }
  }
  return true;
}

}  // namespace lcim
