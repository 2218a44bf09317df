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

// Cycle cuts: generalized cycle elimination constraints (GCEC) and (U,C)
// inequalities, which couple per-node base cuts
//   x_i + sum_j alpha_ji y_ji >= beta_i z_i
// around a directed cycle C.
//
// For U a subset of V(C), omega_i = h_i - beta_i + sum_{j not in V(C)}
// (alpha_ji - d_ji), delta = lcm(omega_i : i in U), gamma_i = delta/omega_i:
//   sum_{i in U} gamma_i (x_i + sum_j alpha_ji y_ji - beta_i z_i)
//       >= delta (c0 - sum_{(k,l) in C, l not in U} (z_l - y_kl))
// with c0 = 1 when every feasible solution activates a node of C
// (|V(C)| > n - b) and c0 = z_k for an anchor k in V(C) otherwise. With
// U empty and an anchor the inequality is the GCEC for that anchor.

#ifndef LCIM_CYCLE_CUTS_H_
#define LCIM_CYCLE_CUTS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "lcim/inequality.h"
#include "lcim/instance.h"

namespace lcim {

inline constexpr int64_t kMaxDelta = int64_t{1} << 31;

// Arc indices in order; arc t's head is arc t+1's tail, cyclically.
struct Cycle {
  std::vector<int> arcs;

  int size() const { return static_cast<int>(arcs.size()); }
  // Tails in order: nodes[t] is the tail of arcs[t].
  std::vector<int> Nodes(const Instance& instance) const;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

// From a node sequence i_1 -> i_2 -> ... -> i_k -> i_1. Throws
// std::invalid_argument on missing arcs or repeated nodes.
Cycle MakeCycle(const Instance& instance, const std::vector<int>& nodes);
void ValidateCycle(const Instance& instance, const Cycle& cycle);
// Rotated so that the smallest node id comes first. Direction is kept.
Cycle Canonical(const Instance& instance, const Cycle& cycle);

// sum_{(i,j) in C} y_ij <= sum_{i in V(C) \ k} z_i, stored as
// sum z - sum y >= 0. Throws when k is not on the cycle.
Inequality BuildGcec(const Instance& instance, const Cycle& cycle, int k);

// Some directed cycle in {(i,j) : y_ij > 1/2}, by depth-first search.
std::optional<Cycle> FindViolatedCycleInteger(const Instance& instance,
                                              const Point& point);

// Cycles of length >= 3 with sum (z_l - y_kl) < 1 - tolerance: for every arc
// (k,l) with y_kl > 0, a shortest l -> k path avoiding arc (l,k). At most
// `max_cycles` distinct cycles, lightest first.
std::vector<Cycle> FindViolatedCyclesFractional(const Instance& instance,
                                                const Point& point,
                                                int max_cycles = 10,
                                                double tolerance = 1e-6);

// sum over C of (z_l - y_kl).
double CycleWeight(const Instance& instance, const Cycle& cycle,
                   const Point& point);

// True iff the constant right-hand side 1 is valid for this cycle.
bool ConstantFormValid(const Instance& instance, const Cycle& cycle);

// omega_i for `base` (a cut on node `base.node`) relative to V(C).
int64_t Omega(const Instance& instance, const Cycle& cycle,
              const KnapsackCut& base);

struct UcData {
  Cycle cycle;
  std::vector<int> nodes;          // V(C), in cycle order.
  std::vector<KnapsackCut> bases;  // One per entry of `nodes`.
  std::vector<int64_t> omega;      // One per entry of `nodes`.
  std::vector<int> u;              // Positions into `nodes`, sorted.
  int64_t delta = 1;
  std::vector<int64_t> gamma;      // One per entry of `u`.
  int anchor = -1;                 // Node id, or -1 for the constant form.
};

// Throws std::invalid_argument when some i in U has omega_i <= 0, when
// delta would exceed kMaxDelta, or when the anchor is not on the cycle.
UcData MakeUcData(const Instance& instance, const Cycle& cycle,
                  std::vector<KnapsackCut> bases, std::vector<int> u,
                  int anchor);
Inequality BuildUcCut(const Instance& instance, const UcData& data);

// The theta-sorted chain DAG. Node order lists the eligible cycle positions
// by non-decreasing theta; f_exit[k] closes the prefix of length k+1.
struct UcDag {
  std::vector<int> order;
  std::vector<double> theta;  // Per cycle position.
  double f_direct = 0.0;      // Best single-node set.
  std::vector<double> f_exit;
  double value = 0.0;         // Longest path value.
  std::vector<int> best_u;    // Positions into the cycle node list.
};

struct UcSeparation {
  UcData data;
  Inequality cut;
  double violation = 0.0;
  UcDag dag;
};

// For each cycle node the candidate bases are searched for the one with the
// least theta among those with omega >= 1; nodes without such a candidate
// stay out of U. The returned U maximises the violation exactly (dynamic
// program over lcm values); the DAG is evaluated alongside. `anchor` < 0
// picks the constant form when valid and argmax z* otherwise.
std::optional<UcSeparation> SeparateUc(
    const Instance& instance, const Cycle& cycle,
    const std::vector<std::vector<KnapsackCut>>& candidates,
    const Point& point, double tolerance = 1e-6);

// Violation of the (U,C) cut for U given as positions, computed through
// delta (c + sum_{i in U}(w_i - theta_i / omega_i)).
double UcViolation(const Instance& instance, const UcData& data,
                   const Point& point);

// Test predicate: a violated GCEC for C implies the U = {} constant-form
// cut is violated by at least as much.
bool DominanceCheck(const Instance& instance, const Cycle& cycle,
                    const Point& point);

}  // namespace lcim

#endif  // LCIM_CYCLE_CUTS_H_
