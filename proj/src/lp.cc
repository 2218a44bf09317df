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

#include "lcim/lp.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lcim {
namespace {
// Entries of the inverse below this magnitude are fill-in noise.
constexpr double kDropTolerance = 1e-14;
}  // namespace

// ---------------------------------------------------------------- LpModel

int LpModel::AddVariable(std::string name, double lower, double upper,
                         double cost) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper ||
      lower == kInfinity || upper == -kInfinity) {
    throw std::invalid_argument("bad bounds for variable " + name);
  }
  if (!std::isfinite(cost)) {
    throw std::invalid_argument("non-finite cost for variable " + name);
  }
  const int index = num_variables();
  if (!name.empty()) {
    if (!by_name_.emplace(name, index).second) {
      throw std::invalid_argument("duplicate variable " + name);
    }
  }
  variables_.push_back({std::move(name), lower, upper, cost});
  return index;
}

void LpModel::CheckRow(const LpRow& row) const {
  for (const auto& [j, coef] : row.terms) {
    if (j < 0 || j >= num_variables()) {
      throw std::invalid_argument("unknown variable index " +
                                  std::to_string(j));
    }
    if (!std::isfinite(coef)) throw std::invalid_argument("non-finite coef");
  }
  if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite rhs");
}

int LpModel::AddRow(LpRow row) {
  CheckRow(row);
  // Merge repeated indices so every row is a proper sparse vector.
  std::sort(row.terms.begin(), row.terms.end());
  std::vector<std::pair<int, double>> merged;
  for (const auto& term : row.terms) {
    if (!merged.empty() && merged.back().first == term.first) {
      merged.back().second += term.second;
    } else {
      merged.push_back(term);
    }
  }
  std::erase_if(merged, [](const auto& t) { return t.second == 0.0; });
  row.terms = std::move(merged);
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

int LpModel::AddRow(std::vector<std::pair<int, double>> terms, RowSense sense,
                    double rhs, std::string name) {
  return AddRow(LpRow{std::move(terms), sense, rhs, std::move(name)});
}

int LpModel::AddRowByName(
    const std::vector<std::pair<std::string, double>>& terms, RowSense sense,
    double rhs, std::string name) {
  LpRow row;
  for (const auto& [var, coef] : terms) {
    const int j = FindVariable(var);
    if (j < 0) throw std::invalid_argument("unknown variable " + var);
    row.terms.push_back({j, coef});
  }
  row.sense = sense;
  row.rhs = rhs;
  row.name = std::move(name);
  return AddRow(std::move(row));
}

int LpModel::FindVariable(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

void LpModel::SetBounds(int var, double lower, double upper) {
  if (var < 0 || var >= num_variables() || lower > upper) {
    throw std::invalid_argument("bad SetBounds");
  }
  variables_[var].lower = lower;
  variables_[var].upper = upper;
}

std::string LpModel::Dump() const {
  std::ostringstream out;
  out.precision(17);
  out << "lp " << num_variables() << ' ' << num_rows() << '\n';
  for (int j = 0; j < num_variables(); ++j) {
    const LpVariable& v = variables_[j];
    out << "var " << j << ' ' << (v.name.empty() ? "-" : v.name) << ' '
        << v.lower << ' ' << v.upper << ' ' << v.cost << '\n';
  }
  for (int r = 0; r < num_rows(); ++r) {
    const LpRow& row = rows_[r];
    const char* sense = row.sense == RowSense::kLessEqual      ? "<="
                        : row.sense == RowSense::kGreaterEqual ? ">="
                                                               : "=";
    out << "row " << r << ' ' << (row.name.empty() ? "-" : row.name) << ' '
        << sense << ' ' << row.rhs;
    for (const auto& [j, coef] : row.terms) out << ' ' << j << ':' << coef;
    out << '\n';
  }
  return out.str();
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

// ---------------------------------------------------------- SimplexSolver

namespace {

void RowBounds(const LpRow& row, double* lower, double* upper) {
  switch (row.sense) {
    case RowSense::kLessEqual:
      *lower = -kInfinity;
      *upper = row.rhs;
      break;
    case RowSense::kGreaterEqual:
      *lower = row.rhs;
      *upper = kInfinity;
      break;
    case RowSense::kEqual:
      *lower = *upper = row.rhs;
      break;
  }
}

}  // namespace

SimplexSolver::SimplexSolver(const LpModel& model, SimplexOptions options)
    : options_(options), n_(model.num_variables()), m_(0) {
  columns_.assign(n_, {});
  for (int j = 0; j < n_; ++j) {
    cost_.push_back(model.variable(j).cost);
    lower_.push_back(model.variable(j).lower);
    upper_.push_back(model.variable(j).upper);
    status_.push_back(VarStatus::kAtLower);
    value_.push_back(0.0);
    position_.push_back(-1);
    dj_.push_back(0.0);
    PlaceNonbasic(j);
  }
  factored_ = true;
  for (const LpRow& row : model.rows()) AddRow(row);
}

void SimplexSolver::PlaceNonbasic(int var) {
  const double lo = lower_[var];
  const double up = upper_[var];
  VarStatus s = status_[var];
  if (s == VarStatus::kBasic) s = VarStatus::kAtLower;
  if (s == VarStatus::kAtUpper && up == kInfinity) s = VarStatus::kAtLower;
  if (s == VarStatus::kAtLower && lo == -kInfinity) s = VarStatus::kAtUpper;
  if (s == VarStatus::kAtUpper && up == kInfinity) s = VarStatus::kFree;
  if (s == VarStatus::kFree && lo > -kInfinity) s = VarStatus::kAtLower;
  if (s == VarStatus::kFree && up < kInfinity) s = VarStatus::kAtUpper;
  status_[var] = s;
  if (s == VarStatus::kAtLower) value_[var] = lo;
  if (s == VarStatus::kAtUpper) value_[var] = up;
  if (s == VarStatus::kFree) value_[var] = 0.0;
}

int SimplexSolver::AddRow(const LpRow& row) {
  for (const auto& [j, coef] : row.terms) {
    if (j < 0 || j >= n_) throw std::invalid_argument("unknown variable");
  }
  const int r = m_;
  const int var = n_ + r;
  double lo, up;
  RowBounds(row, &lo, &up);
  double activity = 0.0;
  for (const auto& [j, coef] : row.terms) {
    if (coef == 0.0) continue;
    columns_[j].push_back({r, coef});
    activity += coef * value_[j];
  }
  lower_.push_back(lo);
  upper_.push_back(up);
  status_.push_back(VarStatus::kBasic);
  value_.push_back(activity);
  position_.push_back(m_);
  dj_.push_back(0.0);
  y_.push_back(0.0);
  head_.push_back(var);

  const int old = m_;
  m_ = old + 1;
  if (factored_) {
    std::vector<double> next(static_cast<size_t>(m_) * m_, 0.0);
    for (int p = 0; p < old; ++p) {
      std::copy(binv_.begin() + static_cast<size_t>(p) * old,
                binv_.begin() + static_cast<size_t>(p + 1) * old,
                next.begin() + static_cast<size_t>(p) * m_);
    }
    // New inverse row: [u_B^T B^-1, -1].
    double* last = &next[static_cast<size_t>(old) * m_];
    for (const auto& [j, coef] : row.terms) {
      if (coef == 0.0 || !IsBasic(j)) continue;
      const double* src = &binv_[static_cast<size_t>(position_[j]) * old];
      for (int k = 0; k < old; ++k) last[k] += coef * src[k];
    }
    last[old] = -1.0;
    binv_ = std::move(next);
  }
  return r;
}

void SimplexSolver::SetBounds(int var, double lower, double upper) {
  if (var < 0 || var >= n_ + m_ || lower > upper) {
    throw std::invalid_argument("bad SetBounds");
  }
  lower_[var] = lower;
  upper_[var] = upper;
  if (!IsBasic(var)) PlaceNonbasic(var);
}

Basis SimplexSolver::GetBasis() const {
  Basis basis;
  basis.variables.assign(status_.begin(), status_.begin() + n_);
  basis.rows.assign(status_.begin() + n_, status_.end());
  return basis;
}

void SimplexSolver::SetBasis(const Basis& basis) {
  if (static_cast<int>(basis.variables.size()) != n_ ||
      static_cast<int>(basis.rows.size()) > m_) {
    throw std::invalid_argument("basis size mismatch");
  }
  for (int j = 0; j < n_ + m_; ++j) {
    VarStatus s = VarStatus::kBasic;
    if (j < n_) {
      s = basis.variables[j];
    } else if (j - n_ < static_cast<int>(basis.rows.size())) {
      s = basis.rows[j - n_];
    }
    status_[j] = s;
  }
  head_.clear();
  for (int j = 0; j < n_ + m_; ++j) {
    if (IsBasic(j)) head_.push_back(j);
  }
  // Too many basics: demote structurals. Too few: promote logicals.
  for (int k = static_cast<int>(head_.size()) - 1;
       k >= 0 && static_cast<int>(head_.size()) > m_; --k) {
    if (head_[k] < n_) {
      status_[head_[k]] = VarStatus::kAtLower;
      head_.erase(head_.begin() + k);
    }
  }
  for (int r = 0; r < m_ && static_cast<int>(head_.size()) < m_; ++r) {
    if (!IsBasic(n_ + r)) {
      status_[n_ + r] = VarStatus::kBasic;
      head_.push_back(n_ + r);
    }
  }
  std::fill(position_.begin(), position_.end(), -1);
  for (int p = 0; p < m_; ++p) position_[head_[p]] = p;
  for (int j = 0; j < n_ + m_; ++j) {
    if (!IsBasic(j)) PlaceNonbasic(j);
  }
  factored_ = false;
}

double SimplexSolver::ColumnDot(const double* row_vector, int var) const {
  if (var >= n_) return -row_vector[var - n_];
  double sum = 0.0;
  for (const auto& [r, coef] : columns_[var]) sum += row_vector[r] * coef;
  return sum;
}

void SimplexSolver::ComputeColumn(int var, std::vector<double>* alpha) const {
  alpha->assign(m_, 0.0);
  if (var >= n_) {
    const int r = var - n_;
    for (int p = 0; p < m_; ++p) (*alpha)[p] = -binv_[static_cast<size_t>(p) * m_ + r];
    return;
  }
  for (int p = 0; p < m_; ++p) {
    const double* row = &binv_[static_cast<size_t>(p) * m_];
    double sum = 0.0;
    for (const auto& [r, coef] : columns_[var]) sum += row[r] * coef;
    (*alpha)[p] = sum;
  }
}

void SimplexSolver::Refactor() {
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<int> cols;
    std::vector<int> row_index(m_, -1);
    std::vector<int> rows_s;
    for (int j = 0; j < n_; ++j) {
      if (IsBasic(j)) cols.push_back(j);
    }
    for (int r = 0; r < m_; ++r) {
      if (!IsBasic(n_ + r)) {
        row_index[r] = static_cast<int>(rows_s.size());
        rows_s.push_back(r);
      }
    }
    const int k = static_cast<int>(cols.size());
    if (k != static_cast<int>(rows_s.size())) {
      throw std::logic_error("basis size inconsistent");
    }
    // Gauss-Jordan on [M | I] with row pivoting per column.
    std::vector<double> mat(static_cast<size_t>(k) * k, 0.0);
    std::vector<double> inv(static_cast<size_t>(k) * k, 0.0);
    for (int c = 0; c < k; ++c) {
      for (const auto& [r, coef] : columns_[cols[c]]) {
        if (row_index[r] >= 0) mat[static_cast<size_t>(row_index[r]) * k + c] = coef;
      }
    }
    for (int t = 0; t < k; ++t) inv[static_cast<size_t>(t) * k + t] = 1.0;
    std::vector<int> pivot_row_of_col(k, -1);
    std::vector<bool> row_used(k, false);
    std::vector<int> bad_cols;
    for (int c = 0; c < k; ++c) {
      int best = -1;
      double best_abs = 1e-9;
      for (int t = 0; t < k; ++t) {
        if (row_used[t]) continue;
        const double a = std::abs(mat[static_cast<size_t>(t) * k + c]);
        if (a > best_abs) {
          best_abs = a;
          best = t;
        }
      }
      if (best < 0) {
        bad_cols.push_back(c);
        continue;
      }
      row_used[best] = true;
      pivot_row_of_col[c] = best;
      double* prow = &mat[static_cast<size_t>(best) * k];
      double* pinv = &inv[static_cast<size_t>(best) * k];
      const double piv = prow[c];
      std::vector<int> mat_nz, inv_nz;
      for (int q = 0; q < k; ++q) {
        if (prow[q] != 0.0) {
          prow[q] /= piv;
          mat_nz.push_back(q);
        }
        if (pinv[q] != 0.0) {
          pinv[q] /= piv;
          inv_nz.push_back(q);
        }
      }
      for (int t = 0; t < k; ++t) {
        if (t == best) continue;
        double* trow = &mat[static_cast<size_t>(t) * k];
        const double f = trow[c];
        if (f == 0.0) continue;
        double* tinv = &inv[static_cast<size_t>(t) * k];
        for (int q : mat_nz) trow[q] -= f * prow[q];
        for (int q : inv_nz) tinv[q] -= f * pinv[q];
        trow[c] = 0.0;
      }
    }
    if (!bad_cols.empty()) {
      // Swap dependent structurals for logicals of uncovered rows.
      std::vector<int> free_rows;
      for (int t = 0; t < k; ++t) {
        if (!row_used[t]) free_rows.push_back(rows_s[t]);
      }
      for (size_t b = 0; b < bad_cols.size(); ++b) {
        const int var = cols[bad_cols[b]];
        status_[var] = value_[var] - lower_[var] <= upper_[var] - value_[var]
                           ? VarStatus::kAtLower
                           : VarStatus::kAtUpper;
        PlaceNonbasic(var);
        status_[n_ + free_rows[b]] = VarStatus::kBasic;
      }
      continue;
    }
    // Row c of M^-1 is row pivot_row_of_col[c] of `inv`.
    head_.clear();
    std::fill(position_.begin(), position_.end(), -1);
    binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
    for (int c = 0; c < k; ++c) {
      const int p = static_cast<int>(head_.size());
      head_.push_back(cols[c]);
      position_[cols[c]] = p;
      const double* g = &inv[static_cast<size_t>(pivot_row_of_col[c]) * k];
      double* dst = &binv_[static_cast<size_t>(p) * m_];
      for (int t = 0; t < k; ++t) dst[rows_s[t]] = g[t];
    }
    for (int r = 0; r < m_; ++r) {
      if (row_index[r] >= 0) continue;
      const int p = static_cast<int>(head_.size());
      head_.push_back(n_ + r);
      position_[n_ + r] = p;
      binv_[static_cast<size_t>(p) * m_ + r] = -1.0;
    }
    // Logical rows: sum_c A[r][c] * row c of G.
    for (int c = 0; c < k; ++c) {
      const double* src = &binv_[static_cast<size_t>(c) * m_];
      for (const auto& [r, coef] : columns_[cols[c]]) {
        if (row_index[r] >= 0) continue;
        double* dst = &binv_[static_cast<size_t>(position_[n_ + r]) * m_];
        for (int t = 0; t < k; ++t) dst[rows_s[t]] += coef * src[rows_s[t]];
      }
    }
    factored_ = true;
    updates_since_refactor_ = 0;
    return;
  }
  throw std::runtime_error("basis repair failed");
}

void SimplexSolver::ComputePrimal() {
  std::vector<double> rhs(m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    if (IsBasic(j) || value_[j] == 0.0) continue;
    for (const auto& [r, coef] : columns_[j]) rhs[r] -= coef * value_[j];
  }
  for (int r = 0; r < m_; ++r) {
    if (!IsBasic(n_ + r)) rhs[r] += value_[n_ + r];
  }
  for (int p = 0; p < m_; ++p) {
    const double* row = &binv_[static_cast<size_t>(p) * m_];
    double sum = 0.0;
    for (int r = 0; r < m_; ++r) sum += row[r] * rhs[r];
    value_[head_[p]] = sum;
  }
}

double SimplexSolver::PrimalInfeasibility(int var) const {
  if (value_[var] < lower_[var]) return lower_[var] - value_[var];
  if (value_[var] > upper_[var]) return value_[var] - upper_[var];
  return 0.0;
}

void SimplexSolver::ComputeDuals(bool phase_one) {
  const double tol = options_.feasibility_tolerance;
  std::fill(y_.begin(), y_.end(), 0.0);
  for (int p = 0; p < m_; ++p) {
    const int var = head_[p];
    double c = 0.0;
    if (phase_one) {
      if (value_[var] < lower_[var] - tol) c = -1.0;
      if (value_[var] > upper_[var] + tol) c = 1.0;
    } else {
      c = Cost(var);
    }
    if (c == 0.0) continue;
    const double* row = &binv_[static_cast<size_t>(p) * m_];
    for (int r = 0; r < m_; ++r) y_[r] += c * row[r];
  }
  for (int j = 0; j < n_ + m_; ++j) {
    if (IsBasic(j)) {
      dj_[j] = 0.0;
      continue;
    }
    const double c = phase_one ? 0.0 : Cost(j);
    dj_[j] = c - ColumnDot(y_.data(), j);
  }
}

bool SimplexSolver::FlipToDualFeasible() {
  const double tol = options_.optimality_tolerance;
  bool feasible = true;
  for (int j = 0; j < n_ + m_; ++j) {
    if (IsBasic(j) || lower_[j] == upper_[j]) continue;
    const double d = dj_[j];
    const VarStatus s = status_[j];
    if (d < -tol && s != VarStatus::kAtUpper) {
      if (upper_[j] < kInfinity) {
        status_[j] = VarStatus::kAtUpper;
        value_[j] = upper_[j];
      } else {
        feasible = false;
      }
    } else if (d > tol && s != VarStatus::kAtLower) {
      if (lower_[j] > -kInfinity) {
        status_[j] = VarStatus::kAtLower;
        value_[j] = lower_[j];
      } else {
        feasible = false;
      }
    }
  }
  return feasible;
}

bool SimplexSolver::DualFeasible() const {
  const double tol = options_.optimality_tolerance;
  for (int j = 0; j < n_ + m_; ++j) {
    if (IsBasic(j) || lower_[j] == upper_[j]) continue;
    const VarStatus s = status_[j];
    if (dj_[j] < -tol && s != VarStatus::kAtUpper) return false;
    if (dj_[j] > tol && s != VarStatus::kAtLower) return false;
  }
  return true;
}

void SimplexSolver::Pivot(int position, int entering,
                          const std::vector<double>& column) {
  double* prow = &binv_[static_cast<size_t>(position) * m_];
  const double piv = column[position];
  nonzeros_.clear();
  for (int r = 0; r < m_; ++r) {
    if (prow[r] == 0.0) continue;
    prow[r] /= piv;
    nonzeros_.push_back(r);
  }
  for (int p = 0; p < m_; ++p) {
    if (p == position) continue;
    const double f = column[p];
    if (f == 0.0) continue;
    double* row = &binv_[static_cast<size_t>(p) * m_];
    for (int r : nonzeros_) {
      row[r] -= f * prow[r];
      if (std::abs(row[r]) < kDropTolerance) row[r] = 0.0;
    }
  }
  const int leaving = head_[position];
  head_[position] = entering;
  position_[entering] = position;
  position_[leaving] = -1;
  status_[entering] = VarStatus::kBasic;
  ++updates_since_refactor_;
}

SimplexSolver::Outcome SimplexSolver::DualSimplex() {
  const double ptol = options_.feasibility_tolerance;
  const double dtol = options_.optimality_tolerance;
  const double pivtol = options_.pivot_tolerance;
  std::vector<double> alpha_row(n_ + m_, 0.0);
  std::vector<double> column;
  std::vector<int> candidates;
  while (true) {
    if (iterations_ >= options_.iteration_limit) return Outcome::kLimit;
    if (updates_since_refactor_ >= options_.refactor_interval) {
      Refactor();
      ComputePrimal();
      ComputeDuals(false);
    }
    const bool bland = degenerate_ > options_.bland_after_degenerate;
    int p = -1;
    double worst = ptol;
    for (int pos = 0; pos < m_; ++pos) {
      const double inf = PrimalInfeasibility(head_[pos]);
      if (inf <= ptol) continue;
      if (bland) {
        if (p < 0 || head_[pos] < head_[p]) p = pos;
      } else if (inf > worst) {
        worst = inf;
        p = pos;
      }
    }
    if (p < 0) return Outcome::kOptimal;
    const int leaving = head_[p];
    const bool below = value_[leaving] < lower_[leaving];
    const double* rho = &binv_[static_cast<size_t>(p) * m_];

    // Candidates: nonbasics whose move pushes x_leaving toward its bound.
    candidates.clear();
    double bound = kInfinity;
    for (int j = 0; j < n_ + m_; ++j) {
      if (IsBasic(j) || lower_[j] == upper_[j]) continue;
      const double a = ColumnDot(rho, j);
      alpha_row[j] = a;
      if (std::abs(a) <= pivtol) continue;
      // x_leaving moves by -a per unit increase of x_j.
      const bool want_increase = below ? a < 0 : a > 0;
      const VarStatus s = status_[j];
      bool ok;
      double slack;
      if (want_increase) {
        ok = s != VarStatus::kAtUpper;
        slack = dj_[j];
      } else {
        ok = s != VarStatus::kAtLower;
        slack = -dj_[j];
      }
      if (!ok) continue;
      candidates.push_back(j);
      bound = std::min(bound, (std::max(slack, 0.0) + dtol) / std::abs(a));
    }
    if (candidates.empty()) return Outcome::kInfeasible;
    int q = -1;
    double best = -1.0;
    double best_ratio = kInfinity;
    for (int j : candidates) {
      const double a = alpha_row[j];
      const bool want_increase = below ? a < 0 : a > 0;
      const double slack = std::max(want_increase ? dj_[j] : -dj_[j], 0.0);
      const double ratio = slack / std::abs(a);
      if (bland) {
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-12 && (q < 0 || j < q))) {
          best_ratio = std::min(best_ratio, ratio);
          q = j;
        }
      } else if (ratio <= bound && std::abs(a) > best) {
        best = std::abs(a);
        q = j;
      }
    }
    if (q < 0) return Outcome::kInfeasible;
    ComputeColumn(q, &column);
    const double a_q = alpha_row[q];
    if (std::abs(column[p] - a_q) > 1e-7 * (1.0 + std::abs(a_q)) &&
        updates_since_refactor_ > 0) {
      Refactor();
      ComputePrimal();
      ComputeDuals(false);
      continue;
    }
    const double theta = dj_[q] / a_q;
    if (std::abs(dj_[q]) <= dtol) ++degenerate_;
    for (int j = 0; j < n_ + m_; ++j) {
      if (IsBasic(j) || lower_[j] == upper_[j]) continue;
      dj_[j] -= theta * alpha_row[j];
    }
    // Fixed nonbasics were skipped above; refresh them from scratch later.
    dj_[q] = 0.0;
    dj_[leaving] = -theta;

    const double target = below ? lower_[leaving] : upper_[leaving];
    const double delta = (value_[leaving] - target) / column[p];
    for (int pos = 0; pos < m_; ++pos) {
      if (column[pos] != 0.0) value_[head_[pos]] -= column[pos] * delta;
    }
    value_[q] += delta;
    Pivot(p, q, column);
    value_[leaving] = target;
    status_[leaving] = below ? VarStatus::kAtLower : VarStatus::kAtUpper;
    ++iterations_;
  }
}

SimplexSolver::Outcome SimplexSolver::PrimalSimplex(bool phase_one) {
  const double ptol = options_.feasibility_tolerance;
  const double dtol = options_.optimality_tolerance;
  const double pivtol = options_.pivot_tolerance;
  std::vector<double> column;
  int stalls = 0;
  while (true) {
    if (iterations_ >= options_.iteration_limit) return Outcome::kLimit;
    if (updates_since_refactor_ >= options_.refactor_interval) {
      Refactor();
      ComputePrimal();
    }
    if (phase_one) {
      bool infeasible = false;
      for (int pos = 0; pos < m_ && !infeasible; ++pos) {
        infeasible = PrimalInfeasibility(head_[pos]) > ptol;
      }
      if (!infeasible) return Outcome::kOptimal;
    }
    ComputeDuals(phase_one);
    const bool bland = degenerate_ > options_.bland_after_degenerate;
    int q = -1;
    int dir = 0;
    double best = dtol;
    for (int j = 0; j < n_ + m_; ++j) {
      if (IsBasic(j) || lower_[j] == upper_[j]) continue;
      const double d = dj_[j];
      int move = 0;
      if (d < -dtol && value_[j] < upper_[j]) move = 1;
      if (d > dtol && value_[j] > lower_[j]) move = -1;
      if (move == 0) continue;
      if (bland) {
        q = j;
        dir = move;
        break;
      }
      if (std::abs(d) > best) {
        best = std::abs(d);
        q = j;
        dir = move;
      }
    }
    if (q < 0) return phase_one ? Outcome::kInfeasible : Outcome::kOptimal;
    ComputeColumn(q, &column);

    // Two-pass ratio test.
    double relaxed = kInfinity;
    for (int pos = 0; pos < m_; ++pos) {
      const double a = column[pos];
      if (std::abs(a) <= pivtol) continue;
      const double rate = -a * dir;
      const int b = head_[pos];
      const double x = value_[b];
      if (phase_one && x < lower_[b] - ptol) {
        if (rate > 0) relaxed = std::min(relaxed, (lower_[b] - x) / rate);
      } else if (phase_one && x > upper_[b] + ptol) {
        if (rate < 0) relaxed = std::min(relaxed, (x - upper_[b]) / -rate);
      } else if (rate < 0 && lower_[b] > -kInfinity) {
        relaxed = std::min(relaxed, (x - lower_[b] + ptol) / -rate);
      } else if (rate > 0 && upper_[b] < kInfinity) {
        relaxed = std::min(relaxed, (upper_[b] - x + ptol) / rate);
      }
    }
    int p = -1;
    double step = kInfinity;
    bool to_lower = false;
    double best_pivot = 0.0;
    for (int pos = 0; pos < m_; ++pos) {
      const double a = column[pos];
      if (std::abs(a) <= pivtol) continue;
      const double rate = -a * dir;
      const int b = head_[pos];
      const double x = value_[b];
      double limit = kInfinity;
      bool lower_side = false;
      if (phase_one && x < lower_[b] - ptol) {
        if (rate > 0) {
          limit = (lower_[b] - x) / rate;
          lower_side = true;
        }
      } else if (phase_one && x > upper_[b] + ptol) {
        if (rate < 0) limit = (x - upper_[b]) / -rate;
      } else if (rate < 0 && lower_[b] > -kInfinity) {
        limit = (x - lower_[b]) / -rate;
        lower_side = true;
      } else if (rate > 0 && upper_[b] < kInfinity) {
        limit = (upper_[b] - x) / rate;
      }
      if (limit == kInfinity || limit > relaxed) continue;
      bool take;
      if (bland) {
        take = p < 0 || limit < step - 1e-12 ||
               (limit <= step + 1e-12 && b < head_[p]);
      } else {
        take = std::abs(a) > best_pivot;
      }
      if (take) {
        p = pos;
        step = limit;
        to_lower = lower_side;
        best_pivot = std::abs(a);
      }
    }
    const double flip = upper_[q] - lower_[q];
    if (p < 0 && flip == kInfinity) {
      if (!phase_one) return Outcome::kUnbounded;
      if (++stalls > 3) return Outcome::kInfeasible;
      Refactor();
      ComputePrimal();
      continue;
    }
    ++iterations_;
    if (p < 0 || flip <= step) {
      const double delta = dir * flip;
      for (int pos = 0; pos < m_; ++pos) {
        if (column[pos] != 0.0) value_[head_[pos]] -= column[pos] * delta;
      }
      value_[q] += delta;
      status_[q] = dir > 0 ? VarStatus::kAtUpper : VarStatus::kAtLower;
      value_[q] = dir > 0 ? upper_[q] : lower_[q];
      continue;
    }
    step = std::max(step, 0.0);
    if (step < 1e-12) ++degenerate_;
    const double delta = dir * step;
    const int leaving = head_[p];
    for (int pos = 0; pos < m_; ++pos) {
      if (column[pos] != 0.0) value_[head_[pos]] -= column[pos] * delta;
    }
    value_[q] += delta;
    Pivot(p, q, column);
    status_[leaving] = to_lower ? VarStatus::kAtLower : VarStatus::kAtUpper;
    value_[leaving] = to_lower ? lower_[leaving] : upper_[leaving];
  }
}

bool SimplexSolver::Consistent() const {
  const double ptol = options_.feasibility_tolerance;
  std::vector<double> activity(m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    for (const auto& [r, coef] : columns_[j]) activity[r] += coef * value_[j];
  }
  for (int r = 0; r < m_; ++r) {
    const double scale = 1.0 + std::abs(activity[r]);
    if (std::abs(activity[r] - value_[n_ + r]) > 1e-9 * scale) return false;
  }
  for (int j = 0; j < n_ + m_; ++j) {
    if (PrimalInfeasibility(j) > ptol) return false;
  }
  return true;
}

LpSolution SimplexSolver::Solve() {
  if (options_.iteration_limit <= 0) {
    options_.iteration_limit = 20000 + 50LL * (n_ + m_);
  }
  iterations_ = 0;
  degenerate_ = 0;
  if (!factored_) Refactor();
  LpStatus status = LpStatus::kIterationLimit;
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (attempt > 0) Refactor();
    ComputePrimal();
    ComputeDuals(false);
    Outcome outcome;
    if (FlipToDualFeasible()) {
      ComputePrimal();
      outcome = DualSimplex();
      if (outcome == Outcome::kInfeasible) {
        status = LpStatus::kInfeasible;
        break;
      }
      if (outcome == Outcome::kLimit) break;
    }
    outcome = PrimalSimplex(true);
    if (outcome == Outcome::kInfeasible) {
      status = LpStatus::kInfeasible;
      break;
    }
    if (outcome == Outcome::kLimit) break;
    outcome = PrimalSimplex(false);
    if (outcome == Outcome::kUnbounded) {
      status = LpStatus::kUnbounded;
      break;
    }
    if (outcome == Outcome::kLimit) break;
    ComputeDuals(false);
    if (Consistent() && DualFeasible()) {
      status = LpStatus::kOptimal;
      break;
    }
  }
  if (status == LpStatus::kOptimal || status == LpStatus::kIterationLimit) {
    ComputeDuals(false);
  }
  return Extract(status);
}

LpSolution SimplexSolver::Extract(LpStatus status) const {
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations_;
  sol.values.assign(value_.begin(), value_.begin() + n_);
  sol.row_activities.assign(m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    sol.objective += cost_[j] * value_[j];
    for (const auto& [r, coef] : columns_[j]) {
      sol.row_activities[r] += coef * value_[j];
    }
  }
  sol.row_duals = y_;
  sol.reduced_costs.assign(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    sol.reduced_costs[j] = cost_[j] - ColumnDot(y_.data(), j);
  }
  return sol;
}

LpSolution SolveLp(const LpModel& model, SimplexOptions options) {
  SimplexSolver solver(model, options);
  return solver.Solve();
}

}  // namespace lcim
