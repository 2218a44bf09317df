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

// Ground-truth engines for tests: exhaustive LCIM optima, validity and
// facet checks by enumeration, and exhaustive cut separation.

#ifndef LCIM_ORACLE_H_
#define LCIM_ORACLE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "lcim/cycle_cuts.h"
#include "lcim/inequality.h"
#include "lcim/instance.h"

namespace lcim {

// Activated nodes in activation order.
struct ActivationOrder {
  int64_t cost = 0;
  std::vector<int> order;
};

// sum over the order of max(0, h_i - influence from earlier neighbors).
int64_t OrderCost(const Instance& instance, const std::vector<int>& order);

// Exact optimum by dynamic programming over activated subsets: the cost of
// the last node of a set only depends on the set. n <= 16; nullopt when
// b > n.
std::optional<ActivationOrder> BruteForceOptimum(const Instance& instance);

// Plain enumeration of subsets and permutations with prefix pruning. n <= 8.
std::optional<ActivationOrder> PermutationOptimum(const Instance& instance);

// cx x + sum_k cy[k] y_k + cz z >= rhs over one node.
struct NodeInequality {
  double cx = 1.0;
  std::vector<double> cy;
  double cz = 0.0;
  double rhs = 0.0;

  static NodeInequality From(const KnapsackCut& cut);
};

// Against P = {x >= 0, (y,z) binary, x + sum d y >= h z}.
bool CheckValidity(const NodeInequality& ineq, const NodeView& view);

struct QOptions {
  // Only z = 1 and every edge oriented one way (the equal-influence model
  // with b = n).
  bool all_active = false;
};

// Against every integral feasible point with minimal x: z binary with
// sum z >= b, y binary on arcs between active nodes, at most one
// orientation per edge, acyclic support. n <= 8.
bool CheckValidity(const Inequality& ineq, const Instance& instance,
                   QOptions options = {});

// True iff the tight points of P span an affine space of dimension v + 1.
// Throws std::invalid_argument when the inequality is not valid.
bool CheckFacet(const NodeInequality& ineq, const NodeView& view);

struct UcBest {
  std::vector<int> u;  // Positions into the cycle node list.
  double violation = 0.0;
};

// Maximum (U,C) violation over every U made of positions with omega >= 1,
// for fixed bases (one per cycle node) and anchor. |V(C)| <= 12.
UcBest EnumerateUcSubsets(const Instance& instance, const Cycle& cycle,
                          const std::vector<KnapsackCut>& bases, int anchor,
                          const Point& point);

struct MisBest {
  std::vector<int> m;
  double violation = 0.0;
};

// Maximum MIS violation over all 2^v subsets with p > 0; nullopt when no
// such subset exists. v <= 16.
std::optional<MisBest> MaxMisViolation(const NodeView& view,
                                       const NodePoint& point);

}  // namespace lcim

#endif  // LCIM_ORACLE_H_
