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

// Polynomial special cases: LCIM on a simple cycle, and LCIM on a tree with
// equal incoming influence per node and full coverage.

#ifndef LCIM_SPECIAL_CASES_H_
#define LCIM_SPECIAL_CASES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "lcim/cycle_cuts.h"
#include "lcim/inequality.h"
#include "lcim/instance.h"
#include "lcim/lp.h"

namespace lcim {

// Nodes of a simple cycle instance in traversal order, starting at node 0
// and continuing to its smaller-id neighbor. Throws std::invalid_argument
// unless the graph is one simple cycle on n >= 3 nodes.
std::vector<int> CycleOrder(const Instance& instance);

enum class Direction { kForward, kBackward, kMixed };

const char* DirectionName(Direction direction);

struct CyclePlan {
  int start = 0;  // First activated node.
  Direction direction = Direction::kForward;
  int64_t b = 0;
  int64_t cost = 0;
  // Activated nodes in an order that realises `cost`.
  std::vector<int> order;
};

// Exact minimum-cost activation of at least b nodes on a simple cycle.
// Every active node pays max(0, h - influence from active neighbors ordered
// before it); the dynamic program walks the cycle once per boundary state,
// tracking whether each node is active and how each edge between active
// nodes is oriented. O(n b). Requires a preprocessed instance.
CyclePlan DpCycle(const Instance& instance, int64_t b);

// The single-chain recursion: start at some node, activate b - 1 further
// nodes in one direction, each paying h_k - d_jk; for b = n the last node
// receives influence from both sides. O(n) per b with sliding windows.
// Only an upper bound on the optimum in general.
CyclePlan DpCycleSingleChain(const Instance& instance, int64_t b);
// Same recursion evaluated naively in O(n b).
CyclePlan DpCycleSingleChainNaive(const Instance& instance, int64_t b);

// sigma_i = ceil(h_i / d_i), g_i = h_i - (sigma_i - 1) d_i.
struct HullCoeffs {
  std::vector<int64_t> d;
  std::vector<int64_t> sigma;
  std::vector<int64_t> g;
};

// Throws std::invalid_argument unless the graph is a tree, incoming weights
// are equal per node and b = n.
HullCoeffs MakeHullCoeffs(const Instance& instance);

// Variables "x[i]" (>= 0) and "y[i,j]" in [0, 1], 1-based names; rows
//   x_i + d_i sum_j y_ji >= h_i,  y_ij + y_ji = 1,
// and, when `with_hull`, x_i + min(g_i, d_i) sum_j y_ji >= g_i sigma_i.
// Objective min sum x.
LpModel BuildTreeEqualModel(const Instance& instance, bool with_hull = true);

// (U,C) cut for equal influence and z = 1 (an LCIM-TE model on any graph
// with equal incoming weights and b = n). Uses the hull coefficients
// alpha_i = min(g_i, d_i), beta_i = g_i sigma_i. Stored over the x and y
// variables of the instance; U lists node ids. Throws when some i in U has
// omega_i <= 0.
Inequality BuildUcEqualCut(const Instance& instance, const Cycle& cycle,
                           const std::vector<int>& u);
// Equal-influence hull coefficients without the tree requirement.
HullCoeffs MakeEqualCoeffs(const Instance& instance);

}  // namespace lcim

#endif  // LCIM_SPECIAL_CASES_H_
