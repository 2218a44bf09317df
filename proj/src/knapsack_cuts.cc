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

#include "lcim/knapsack_cuts.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace lcim {
namespace {

int64_t SumOver(const NodeView& view, const std::vector<int>& members) {
  int64_t sum = 0;
  for (int j : members) sum += view.in[j].weight;
  return sum;
}

bool ValidMembers(const NodeView& view, std::vector<int>* members) {
  std::sort(members->begin(), members->end());
  if (std::adjacent_find(members->begin(), members->end()) != members->end()) {
    return false;
  }
  for (int j : *members) {
    if (j < 0 || j >= view.degree()) return false;
  }
  return true;
}

bool AllAbove(const NodeView& view, const std::vector<int>& members,
              int64_t residual) {
  for (int j : members) {
    if (view.in[j].weight <= residual) return false;
  }
  return true;
}

int64_t CoverResidual(const NodeView& view, const std::vector<int>& s) {
  return view.threshold + SumOver(view, s) - view.TotalWeight();
}

int64_t PackingResidual(const NodeView& view, const std::vector<int>& l) {
  return SumOver(view, l) - view.threshold;
}

LiftingSet MakeLiftingSet(const NodeView& view, std::vector<int> members,
                          int64_t residual) {
  LiftingSet set;
  set.members = std::move(members);
  set.residual = residual;
  std::vector<int64_t> weights;
  for (int j : set.members) {
    if (view.in[j].weight > residual) weights.push_back(view.in[j].weight);
  }
  std::sort(weights.begin(), weights.end(), std::greater<>());
  set.prefix.push_back(0);
  for (int64_t w : weights) set.prefix.push_back(set.prefix.back() + w);
  return set;
}

// Number of k in 1..r with D_k - residual <= d.
int Segment(int64_t d, const LiftingSet& set) {
  const int r = set.r();
  int lo = 0;
  int hi = r;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (set.prefix[mid] - set.residual <= d) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

std::vector<int> Complement(const NodeView& view, const std::vector<int>& set) {
  std::vector<bool> in(view.degree(), false);
  for (int j : set) in[j] = true;
  std::vector<int> rest;
  for (int j = 0; j < view.degree(); ++j) {
    if (!in[j]) rest.push_back(j);
  }
  return rest;
}

}  // namespace

bool IsMinimalCover(const NodeView& view, const std::vector<int>& members) {
  std::vector<int> s = members;
  if (!ValidMembers(view, &s)) return false;
  const int64_t pi = CoverResidual(view, s);
  return pi > 0 && AllAbove(view, s, pi);
}

bool IsMinimalPacking(const NodeView& view, const std::vector<int>& members) {
  std::vector<int> l = members;
  if (!ValidMembers(view, &l)) return false;
  const int64_t lambda = PackingResidual(view, l);
  return lambda > 0 && AllAbove(view, l, lambda);
}

LiftingSet MakeCoverSet(const NodeView& view, std::vector<int> members) {
  if (!IsMinimalCover(view, members)) {
    throw std::invalid_argument("not a minimal continuous cover");
  }
  std::sort(members.begin(), members.end());
  const int64_t pi = CoverResidual(view, members);
  return MakeLiftingSet(view, std::move(members), pi);
}

LiftingSet MakePackingSet(const NodeView& view, std::vector<int> members) {
  if (!IsMinimalPacking(view, members)) {
    throw std::invalid_argument("not a minimal continuous packing");
  }
  std::sort(members.begin(), members.end());
  const int64_t lambda = PackingResidual(view, members);
  return MakeLiftingSet(view, std::move(members), lambda);
}

int64_t Phi(int64_t d, const LiftingSet& cover) {
  const int64_t pi = cover.residual;
  const int r = cover.r();
  const int j = Segment(d, cover);
  if (j == r) return r * pi + d - cover.prefix[r];
  if (d >= cover.prefix[j]) return j * pi;
  return j * pi + d - cover.prefix[j];
}

int64_t Psi(int64_t d, const LiftingSet& packing) {
  const int64_t lambda = packing.residual;
  const int r = packing.r();
  const int j = Segment(d, packing);
  if (j == r) return packing.prefix[r] - r * lambda;
  if (d >= packing.prefix[j]) return d - j * lambda;
  return packing.prefix[j] - j * lambda;
}

KnapsackCut BuildCoverCut(const NodeView& view, const std::vector<int>& s) {
  const LiftingSet cover = MakeCoverSet(view, s);
  KnapsackCut cut;
  cut.family = CutFamily::kCover;
  cut.node = view.node;
  cut.set = cover.members;
  cut.alpha.assign(view.degree(), 0);
  std::vector<bool> in_s(view.degree(), false);
  for (int j : cover.members) in_s[j] = true;
  int64_t smallest = cover.residual;
  int64_t lifted = 0;
  for (int j = 0; j < view.degree(); ++j) {
    const int64_t d = view.in[j].weight;
    if (in_s[j]) {
      cut.alpha[j] = std::min(cover.residual, d);
      smallest = std::min(smallest, d);
    } else {
      cut.alpha[j] = Phi(d, cover);
      lifted += cut.alpha[j];
    }
  }
  cut.beta = std::min(smallest, cover.residual) + lifted;
  return cut;
}

KnapsackCut BuildPackingCut(const NodeView& view, const std::vector<int>& l) {
  const LiftingSet packing = MakePackingSet(view, l);
  KnapsackCut cut;
  cut.family = CutFamily::kPacking;
  cut.node = view.node;
  cut.set = packing.members;
  cut.alpha.assign(view.degree(), 0);
  std::vector<bool> in_l(view.degree(), false);
  for (int j : packing.members) in_l[j] = true;
  cut.beta = 0;
  for (int j = 0; j < view.degree(); ++j) {
    const int64_t d = view.in[j].weight;
    if (in_l[j]) {
      cut.alpha[j] = std::max<int64_t>(0, d - packing.residual);
      cut.beta += cut.alpha[j];
    } else {
      cut.alpha[j] = Psi(d, packing);
    }
  }
  return cut;
}

KnapsackCut BuildMisCut(const NodeView& view, const std::vector<int>& m) {
  std::vector<int> members = m;
  if (!ValidMembers(view, &members)) {
    throw std::invalid_argument("bad influencing subset");
  }
  const int64_t p = view.threshold - SumOver(view, members);
  if (p <= 0) throw std::invalid_argument("MIS needs p = h - sum_M d > 0");
  KnapsackCut cut;
  cut.family = CutFamily::kMis;
  cut.node = view.node;
  cut.set = members;
  cut.alpha.assign(view.degree(), 0);
  std::vector<bool> in_m(view.degree(), false);
  for (int j : members) in_m[j] = true;
  for (int j = 0; j < view.degree(); ++j) {
    if (!in_m[j]) cut.alpha[j] = std::min(view.in[j].weight, p);
  }
  cut.beta = p;
  return cut;
}

namespace {

std::vector<std::vector<int>> EnumerateSubsets(
    const NodeView& view,
    const std::function<bool(const NodeView&, const std::vector<int>&)>& ok) {
  const int v = view.degree();
  if (v > 20) throw std::invalid_argument("enumeration limited to v <= 20");
  std::vector<std::vector<int>> out;
  for (uint32_t mask = 0; mask < (1u << v); ++mask) {
    std::vector<int> set;
    for (int j = 0; j < v; ++j) {
      if (mask >> j & 1) set.push_back(j);
    }
    if (ok(view, set)) out.push_back(std::move(set));
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> EnumerateMinimalCovers(const NodeView& view) {
  return EnumerateSubsets(view, IsMinimalCover);
}

std::vector<std::vector<int>> EnumerateMinimalPackings(const NodeView& view) {
  return EnumerateSubsets(view, IsMinimalPacking);
}

std::optional<Separated> SeparateMis(const NodeView& view,
                                     const NodePoint& point,
                                     double tolerance) {
  const int v = view.degree();
  const int64_t h = view.threshold;
  constexpr double kNone = -std::numeric_limits<double>::infinity();
  std::optional<Separated> best;
  double best_violation = tolerance;
  std::vector<double> value(h + 1);
  std::vector<std::vector<bool>> take(v, std::vector<bool>(h + 1, false));
  for (int64_t p = h; p >= 1; --p) {
    const int64_t cap = h - p;
    std::fill(value.begin(), value.end(), kNone);
    value[0] = 0.0;
    double all = 0.0;
    for (int j = 0; j < v; ++j) {
      const int64_t d = view.in[j].weight;
      const double gain = static_cast<double>(std::min(d, p)) * point.y[j];
      all += gain;
      std::fill(take[j].begin(), take[j].end(), false);
      for (int64_t w = cap; w >= d; --w) {
        if (value[w - d] == kNone) continue;
        const double cand = value[w - d] + gain;
        if (cand > value[w]) {
          value[w] = cand;
          take[j][w] = true;
        }
      }
    }
    if (value[cap] == kNone) continue;
    const double violation =
        static_cast<double>(p) * point.z - point.x - (all - value[cap]);
    if (violation > best_violation + 1e-12) {
      std::vector<int> m;
      int64_t w = cap;
      for (int j = v - 1; j >= 0; --j) {
        if (take[j][w]) {
          m.push_back(j);
          w -= view.in[j].weight;
        }
      }
      std::sort(m.begin(), m.end());
      KnapsackCut cut = BuildMisCut(view, m);
      best_violation = violation;
      const double exact = cut.Violation(point);
      best = Separated{m, std::move(cut), exact};
    }
  }
  return best;
}

std::optional<Separated> SeparateMisSortedScan(const NodeView& view,
                                               const NodePoint& point,
                                               double tolerance) {
  const int v = view.degree();
  std::vector<int> order(v);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (point.y[a] != point.y[b]) return point.y[a] < point.y[b];
    return view.in[a].weight > view.in[b].weight;
  });
  std::optional<Separated> best;
  double best_violation = tolerance;
  double prefix_y = 0.0;
  for (int k = 0; k <= v; ++k) {
    if (k > 0) prefix_y += point.y[order[k - 1]];
    if (k > 0 && point.z - prefix_y <= 0.0) break;
    std::vector<int> m(order.begin() + k, order.end());
    std::sort(m.begin(), m.end());
    const int64_t p = view.threshold - SumOver(view, m);
    if (p <= 0) continue;
    KnapsackCut cut = BuildMisCut(view, m);
    const double violation = cut.Violation(point);
    if (violation > best_violation + 1e-12 ||
        (best && violation > best_violation - 1e-12 && p > best->cut.beta &&
         violation > tolerance)) {
      best_violation = std::max(best_violation, violation);
      best = Separated{m, std::move(cut), violation};
    }
  }
  return best;
}

std::optional<LiftingSet> CoverFromMis(const NodeView& view,
                                       const std::vector<int>& m) {
  std::vector<int> members = m;
  if (!ValidMembers(view, &members)) return std::nullopt;
  const int64_t p = view.threshold - SumOver(view, members);
  if (p <= 0) return std::nullopt;
  std::vector<int> s = Complement(view, members);
  if (!IsMinimalCover(view, s)) return std::nullopt;
  return MakeCoverSet(view, std::move(s));
}

std::optional<Separated> PackingFromCover(const NodeView& view,
                                          const std::vector<int>& s,
                                          const NodePoint& point,
                                          double tolerance) {
  const std::vector<int> m = Complement(view, s);
  const int64_t base = SumOver(view, m);
  std::optional<Separated> best;
  double best_violation = tolerance;
  for (int k : s) {
    if (base + view.in[k].weight <= view.threshold) continue;
    std::vector<int> l = m;
    l.push_back(k);
    std::sort(l.begin(), l.end());
    if (!IsMinimalPacking(view, l)) continue;
    KnapsackCut cut = BuildPackingCut(view, l);
    const double violation = cut.Violation(point);
    if (violation > best_violation + 1e-12) {
      best_violation = violation;
      best = Separated{l, std::move(cut), violation};
    }
  }
  return best;
}

}  // namespace lcim
