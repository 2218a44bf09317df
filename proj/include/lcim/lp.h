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

// A small bounded-variable revised simplex. Rows are kept as A x - s = 0 with
// one logical variable s_r per row carrying the row bounds, so that no
// slack-splitting into standard form is needed. The basis inverse is held
// densely; models here have at most a few thousand rows.

#ifndef LCIM_LP_H_
#define LCIM_LP_H_

#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lcim {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

struct LpVariable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  double cost = 0.0;
};

struct LpRow {
  std::vector<std::pair<int, double>> terms;  // (variable, coefficient)
  RowSense sense = RowSense::kGreaterEqual;
  double rhs = 0.0;
  std::string name;
};

// Minimization model. Throws std::invalid_argument on malformed input.
class LpModel {
 public:
  int AddVariable(std::string name, double lower, double upper, double cost);
  int AddRow(LpRow row);
  int AddRow(std::vector<std::pair<int, double>> terms, RowSense sense,
             double rhs, std::string name = "");
  // Throws std::invalid_argument("unknown variable ...") for a bad name.
  int AddRowByName(const std::vector<std::pair<std::string, double>>& terms,
                   RowSense sense, double rhs, std::string name = "");

  // -1 when absent.
  int FindVariable(const std::string& name) const;
  void SetBounds(int var, double lower, double upper);

  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const LpVariable& variable(int j) const { return variables_[j]; }
  const LpRow& row(int r) const { return rows_[r]; }
  const std::vector<LpVariable>& variables() const { return variables_; }
  const std::vector<LpRow>& rows() const { return rows_; }

  // Row-oriented text dump:
  //   lp <num_variables> <num_rows>
  //   var <index> <name> <lower> <upper> <cost>
  //   row <index> <name> <sense: <= >= => <rhs> <j>:<coef> ...
  std::string Dump() const;

 private:
  void CheckRow(const LpRow& row) const;

  std::vector<LpVariable> variables_;
  std::vector<LpRow> rows_;
  std::unordered_map<std::string, int> by_name_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
  std::vector<double> values;          // Structural values.
  std::vector<double> row_activities;  // a_r x.
  // Multipliers with cost_j = reduced_cost_j + sum_r row_duals_r a_rj.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  int64_t iterations = 0;
};

enum class VarStatus : uint8_t { kBasic, kAtLower, kAtUpper, kFree };

// Statuses for the structural variables followed by one per row logical.
struct Basis {
  std::vector<VarStatus> variables;
  std::vector<VarStatus> rows;
};

struct SimplexOptions {
  double feasibility_tolerance = 1e-7;
  double optimality_tolerance = 1e-7;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 100;
  int64_t bland_after_degenerate = 1000;
  int64_t iteration_limit = 0;  // 0 picks a size-based default.
};

// Persistent solver supporting row addition, bound changes and warm starts.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LpModel& model, SimplexOptions options = {});

  int num_variables() const { return n_; }
  int num_rows() const { return m_; }

  // Appends a row; its logical enters the basis so the current basis stays
  // valid and dual feasible.
  int AddRow(const LpRow& row);
  void SetBounds(int var, double lower, double upper);
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }

  LpSolution Solve();
  // Caps simplex iterations per Solve; 0 restores the size-based default.
  void set_iteration_limit(int64_t limit) { options_.iteration_limit = limit; }

  Basis GetBasis() const;
  // Rows missing from `basis` (added later) get basic logicals.
  void SetBasis(const Basis& basis);

 private:
  enum class Outcome { kOptimal, kInfeasible, kUnbounded, kLimit, kRestart };

  bool IsBasic(int var) const { return status_[var] == VarStatus::kBasic; }
  double Cost(int var) const { return var < n_ ? cost_[var] : 0.0; }
  void PlaceNonbasic(int var);
  // Dot of a dense row-space vector with column `var`.
  double ColumnDot(const double* row_vector, int var) const;
  void ComputeColumn(int var, std::vector<double>* alpha) const;
  void Refactor();
  void ComputePrimal();
  void ComputeDuals(bool phase_one);
  bool FlipToDualFeasible();
  bool DualFeasible() const;
  double PrimalInfeasibility(int var) const;
  void Pivot(int position, int entering, const std::vector<double>& column);

  bool Consistent() const;
  Outcome DualSimplex();
  Outcome PrimalSimplex(bool phase_one);
  LpSolution Extract(LpStatus status) const;

  SimplexOptions options_;
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<std::pair<int, double>>> columns_;
  std::vector<double> cost_;
  std::vector<double> lower_;  // Structurals, then row logicals.
  std::vector<double> upper_;

  std::vector<VarStatus> status_;
  std::vector<double> value_;
  std::vector<int> head_;      // Basic variable at each position.
  std::vector<int> position_;  // Position of a basic variable, else -1.
  std::vector<double> binv_;   // m_ x m_, row p = position p.
  std::vector<int> nonzeros_;  // Scratch for Pivot.
  std::vector<double> dj_;
  std::vector<double> y_;      // Row multipliers of the last pricing.
  bool factored_ = false;
  int updates_since_refactor_ = 0;
  int64_t iterations_ = 0;
  int64_t degenerate_ = 0;
};

// One-shot solve from a slack basis.
LpSolution SolveLp(const LpModel& model, SimplexOptions options = {});

}  // namespace lcim

#endif  // LCIM_LP_H_
