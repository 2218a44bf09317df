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

// Cuts from the single-node set {x + sum_j d_j y_j >= h z, y, z binary,
// x >= 0}: continuous cover, continuous packing and minimal influencing
// subset (MIS) inequalities, with their separation routines.
//
// Sets are given as positions into NodeView::in (0-based).

#ifndef LCIM_KNAPSACK_CUTS_H_
#define LCIM_KNAPSACK_CUTS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "lcim/inequality.h"
#include "lcim/instance.h"

namespace lcim {

inline constexpr double kViolationTolerance = 1e-6;

// Residual (pi or lambda) and the non-increasing prefix sums D_0 = 0,
// D_1, ..., D_r of the member weights above the residual.
struct LiftingSet {
  std::vector<int> members;  // Sorted positions.
  int64_t residual = 0;
  std::vector<int64_t> prefix;

  int r() const { return static_cast<int>(prefix.size()) - 1; }
};

// pi = h + sum_S d - sum_N d > 0 and d_k > pi for all k in S.
bool IsMinimalCover(const NodeView& view, const std::vector<int>& members);
// lambda = sum_L d - h > 0 and d_k > lambda for all k in L.
bool IsMinimalPacking(const NodeView& view, const std::vector<int>& members);

// Throw std::invalid_argument unless the set is a minimal cover / packing.
LiftingSet MakeCoverSet(const NodeView& view, std::vector<int> members);
LiftingSet MakePackingSet(const NodeView& view, std::vector<int> members);

// Lifting functions; both are nondecreasing with value 0 at d = 0.
int64_t Phi(int64_t d, const LiftingSet& cover);
int64_t Psi(int64_t d, const LiftingSet& packing);

KnapsackCut BuildCoverCut(const NodeView& view, const std::vector<int>& s);
KnapsackCut BuildPackingCut(const NodeView& view, const std::vector<int>& l);
// Throws std::invalid_argument when p = h - sum_M d <= 0.
KnapsackCut BuildMisCut(const NodeView& view, const std::vector<int>& m);

// Every minimal cover / packing of the node (exponential; small v only).
std::vector<std::vector<int>> EnumerateMinimalCovers(const NodeView& view);
std::vector<std::vector<int>> EnumerateMinimalPackings(const NodeView& view);

struct Separated {
  std::vector<int> set;
  KnapsackCut cut;
  double violation = 0.0;
};

// Most violated MIS inequality. Exact: for each p in [1, h] an exact-weight
// knapsack picks M with sum_M d = h - p maximising sum_M min(d, p) y*.
// Ties prefer larger p. Returns nothing unless violation > tolerance.
std::optional<Separated> SeparateMis(const NodeView& view,
                                     const NodePoint& point,
                                     double tolerance = kViolationTolerance);

// The O(v log v) prefix scan over y* in non-decreasing order (ties: larger d
// first). Fast but a heuristic: it can miss the most violated M.
std::optional<Separated> SeparateMisSortedScan(
    const NodeView& view, const NodePoint& point,
    double tolerance = kViolationTolerance);

// S = N \ M with pi = p. Nothing when p <= 0 or S is not a minimal cover.
std::optional<LiftingSet> CoverFromMis(const NodeView& view,
                                       const std::vector<int>& m);

// Over k in S with sum_{(N\S) + k} d > h and L = (N\S) + k a minimal
// packing, the most violated packing cut (ties: smallest k).
std::optional<Separated> PackingFromCover(
    const NodeView& view, const std::vector<int>& s, const NodePoint& point,
    double tolerance = kViolationTolerance);

}  // namespace lcim

#endif  // LCIM_KNAPSACK_CUTS_H_
