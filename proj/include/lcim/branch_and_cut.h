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

// Best-bound branch and cut over the binaries y, z. Cycles in integral
// candidates are cut off lazily; the cut-and-branch mode also separates
// knapsack and (U,C) cuts at the root.

#ifndef LCIM_BRANCH_AND_CUT_H_
#define LCIM_BRANCH_AND_CUT_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "lcim/formulation.h"
#include "lcim/inequality.h"
#include "lcim/instance.h"
#include "lcim/lp.h"

namespace lcim {

enum class BranchRule {
  kMostFractional,  // SelectBranch.
  kZFirst,          // Most fractional z; y only once every z is integral.
  kPseudocost,      // Reliability pseudocosts seeded by strong branching.
  kHybrid,          // Most fractional z, then pseudocosts over y.
};

const char* BranchRuleName(BranchRule rule);
std::optional<BranchRule> ParseBranchRule(const std::string& name);

struct SolveParams {
  double time_limit = 3600.0;  // Seconds.
  int max_rounds = 50;         // Root rounds in cut-and-branch mode.
  int cuts_per_round = 0;      // 0: no cap.
  int max_cycles = 10;         // Fractional cycles examined per round.
  double integrality_tolerance = 1e-6;
  double violation_tolerance = 1e-6;
  int64_t node_limit = 0;      // 0: no cap.
  BranchRule branch_rule = BranchRule::kHybrid;
  int reliability = 4;          // Pseudocost samples before trusting a column.
  int strong_candidates = 8;    // Unreliable columns probed per node.
  int strong_iterations = 60;   // Simplex cap per probe.
  uint64_t seed = 0;           // Reserved; the search is deterministic.
  // Lazy cuts: GCEC only, instead of GCEC plus the constant (U,C) form.
  bool gcec_only = false;
  bool separate_mis = true;
  bool separate_cover = true;
  bool separate_packing = true;
  bool separate_uc = true;
  // Added to the model before the first LP solve.
  std::vector<Inequality> seed_cuts;
};

enum class SolveStatus { kOptimal, kInfeasible, kTimeLimit, kNodeLimit };

const char* SolveStatusName(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::kOptimal;
  Mode mode = Mode::kDef;
  double root_lp = 0.0;     // First LP value.
  double root_bound = 0.0;  // LP value after root cuts.
  int root_rounds = 0;
  double ub = 0.0;
  double lb = 0.0;
  double gap = 0.0;  // 100 (ub - lb) / lb.
  int64_t nodes = 0;
  std::array<int, kNumCutFamilies> cuts{};
  double seconds = 0.0;
  Point incumbent;
  // Activated nodes in an order consistent with the incumbent.
  std::vector<int> order;

  int cuts_total() const;
};

// Global, deduplicated by Inequality::key (or the rendering when empty).
class CutPool {
 public:
  // False when the key is already present.
  bool Add(const Inequality& ineq, const std::string& fallback_key);
  void AddBase(const KnapsackCut& cut);
  const std::vector<Inequality>& cuts() const { return cuts_; }
  // Knapsack cuts on `node` held by the pool.
  const std::vector<KnapsackCut>& bases(int node) const;

 private:
  std::vector<Inequality> cuts_;
  std::unordered_set<std::string> keys_;
  std::vector<std::vector<KnapsackCut>> bases_;
  std::unordered_set<std::string> base_keys_;
  static const std::vector<KnapsackCut> kEmpty;
};

// One round of root separation at `point`: MIS, cover and packing cuts per
// node, then (U,C) cuts along lightly weighted cycles. Returns the new cuts
// (all violated by more than the tolerance), already recorded in `pool`.
std::vector<Inequality> SeparateRound(const Instance& instance,
                                      const Point& point,
                                      const SolveParams& params,
                                      CutPool* pool);

// Index of the branching column: most fractional binary, ties to z, then
// to the smaller column. Throws std::logic_error when all are integral.
int SelectBranch(const VarLayout& layout, const std::vector<double>& values,
                 double tolerance);

// x_i = max(0, h_i z_i - sum d_ji y_ji) for integral y, z.
void RepairX(const Instance& instance, Point* point);

// Topological order of the active nodes of an acyclic integral point.
std::vector<int> ActivationSequence(const Instance& instance,
                                    const Point& point);

SolveReport Solve(const Instance& instance, Mode mode,
                  const SolveParams& params = {});

std::string TsvHeader();
// `id`, `q` describe the source; q < 0 prints "-".
std::string FormatTsv(const SolveReport& report, const Instance& instance,
                      const std::string& id, double q);
std::string FormatText(const SolveReport& report, const Instance& instance,
                       const std::string& id);

}  // namespace lcim

#endif  // LCIM_BRANCH_AND_CUT_H_
