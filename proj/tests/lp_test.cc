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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lcim/lp.h"

namespace lcim {
namespace {

// max x + y, x + 2y <= 4, 3x + y <= 6.
LpModel TwoByTwo() {
  LpModel model;
  const int x = model.AddVariable("x", 0, kInfinity, -1);
  const int y = model.AddVariable("y", 0, kInfinity, -1);
  model.AddRow({{x, 1}, {y, 2}}, RowSense::kLessEqual, 4, "a");
  model.AddRow({{x, 3}, {y, 1}}, RowSense::kLessEqual, 6, "b");
  return model;
}

// Primal feasibility, dual signs and complementary slackness.
void ExpectOptimal(const LpModel& model, const LpSolution& s) {
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  const double tol = 1e-6;
  double objective = 0.0;
  for (int j = 0; j < model.num_variables(); ++j) {
    const LpVariable& v = model.variable(j);
    const double value = s.values[j];
    EXPECT_GE(value, v.lower - tol);
    EXPECT_LE(value, v.upper + tol);
    objective += v.cost * value;
    double reduced = v.cost;
    for (int r = 0; r < model.num_rows(); ++r) {
      for (const auto& [var, coef] : model.row(r).terms) {
        if (var == j) reduced -= s.row_duals[r] * coef;
      }
    }
    EXPECT_NEAR(reduced, s.reduced_costs[j], 1e-6);
    if (reduced > tol) EXPECT_NEAR(value, v.lower, tol);
    if (reduced < -tol) EXPECT_NEAR(value, v.upper, tol);
  }
  EXPECT_NEAR(objective, s.objective, 1e-6);
  for (int r = 0; r < model.num_rows(); ++r) {
    const LpRow& row = model.row(r);
    double activity = 0.0;
    for (const auto& [var, coef] : row.terms) activity += coef * s.values[var];
    EXPECT_NEAR(activity, s.row_activities[r], 1e-6);
    const double dual = s.row_duals[r];
    switch (row.sense) {
      case RowSense::kGreaterEqual:
        EXPECT_GE(activity, row.rhs - tol);
        EXPECT_GE(dual, -tol);
        break;
      case RowSense::kLessEqual:
        EXPECT_LE(activity, row.rhs + tol);
        EXPECT_LE(dual, tol);
        break;
      case RowSense::kEqual:
        EXPECT_NEAR(activity, row.rhs, tol);
        break;
    }
    if (std::abs(dual) > tol) EXPECT_NEAR(activity, row.rhs, 1e-5);
  }
}

TEST(LpTest, SmallMaximisation) {
  const LpModel model = TwoByTwo();
  const LpSolution s = SolveLp(model);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -2.8, 1e-9);
  EXPECT_NEAR(s.values[0], 1.6, 1e-9);
  EXPECT_NEAR(s.values[1], 1.2, 1e-9);
  ExpectOptimal(model, s);
}

TEST(LpTest, EqualityAndBoxes) {
  LpModel model;
  const int a = model.AddVariable("a", 1, 3, 2);
  const int b = model.AddVariable("b", -kInfinity, kInfinity, 1);
  model.AddRow({{a, 1}, {b, 1}}, RowSense::kEqual, 5);
  model.AddRowByName({{"b", 1}}, RowSense::kGreaterEqual, 0);
  const LpSolution s = SolveLp(model);
  EXPECT_NEAR(s.objective, 6.0, 1e-9);  // a = 1, b = 4.
  ExpectOptimal(model, s);
  EXPECT_THROW(model.AddRowByName({{"c", 1}}, RowSense::kEqual, 0),
               std::invalid_argument);
  EXPECT_EQ(model.FindVariable("b"), 1);
  EXPECT_EQ(model.FindVariable("c"), -1);
}

TEST(LpTest, Infeasible) {
  LpModel model;
  const int x = model.AddVariable("x", 0, 10, 1);
  model.AddRow({{x, 1}}, RowSense::kGreaterEqual, 2);
  model.AddRow({{x, 1}}, RowSense::kLessEqual, 1);
  EXPECT_EQ(SolveLp(model).status, LpStatus::kInfeasible);

  LpModel boxed;
  const int y = boxed.AddVariable("y", 0, 1, 1);
  boxed.AddRow({{y, 1}}, RowSense::kGreaterEqual, 2);
  EXPECT_EQ(SolveLp(boxed).status, LpStatus::kInfeasible);
}

TEST(LpTest, Unbounded) {
  LpModel model;
  const int x = model.AddVariable("x", 0, kInfinity, -1);
  const int y = model.AddVariable("y", 0, kInfinity, 0);
  model.AddRow({{x, 1}, {y, -1}}, RowSense::kLessEqual, 1);
  EXPECT_EQ(SolveLp(model).status, LpStatus::kUnbounded);
}

TEST(LpTest, WarmStartAfterAddRow) {
  LpModel model = TwoByTwo();
  SimplexSolver solver(model);
  ASSERT_EQ(solver.Solve().status, LpStatus::kOptimal);
  const LpRow cut{{{0, 1}, {1, 1}}, RowSense::kLessEqual, 2.5, "cut"};
  solver.AddRow(cut);
  const LpSolution warm = solver.Solve();
  model.AddRow(cut);
  const LpSolution cold = SolveLp(model);
  EXPECT_NEAR(warm.objective, -2.5, 1e-9);
  EXPECT_NEAR(cold.objective, -2.5, 1e-9);
  ExpectOptimal(model, warm);
}

TEST(LpTest, BasisRestoreAndBounds) {
  const LpModel model = TwoByTwo();
  SimplexSolver solver(model);
  solver.Solve();
  const Basis basis = solver.GetBasis();
  solver.SetBounds(0, 0, 1);
  const LpSolution tight = solver.Solve();
  EXPECT_NEAR(tight.objective, -2.5, 1e-9);  // x = 1, y = 1.5.
  solver.SetBounds(0, 0, kInfinity);
  solver.SetBasis(basis);
  const LpSolution back = solver.Solve();
  EXPECT_NEAR(back.objective, -2.8, 1e-9);
  EXPECT_EQ(back.iterations, 0);
}

TEST(LpTest, DumpIsStable) {
  const std::string dump = TwoByTwo().Dump();
  EXPECT_EQ(dump.rfind("lp 2 2\n", 0), 0u);
  EXPECT_NE(dump.find("row 1 b <= 6 0:3 1:1"), std::string::npos);
}

// Random covering LPs with a known feasible point; warm-started row
// additions must agree with cold solves.
TEST(LpTest, RandomWarmMatchesCold) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> coef(-3, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 6;
    LpModel model;
    std::vector<double> feasible(n);
    for (int j = 0; j < n; ++j) {
      model.AddVariable("v" + std::to_string(j), 0, 1 + 4 * unit(rng),
                        0.1 + 3 * unit(rng));
      feasible[j] = model.variable(j).upper * unit(rng);
    }
    auto random_row = [&]() {
      LpRow row;
      double activity = 0.0;
      for (int j = 0; j < n; ++j) {
        const int c = coef(rng);
        if (c == 0) continue;
        row.terms.push_back({j, static_cast<double>(c)});
        activity += c * feasible[j];
      }
      row.sense = RowSense::kGreaterEqual;
      row.rhs = activity - unit(rng);
      return row;
    };
    for (int r = 0; r < n; ++r) model.AddRow(random_row());
    SimplexSolver solver(model);
    ASSERT_EQ(solver.Solve().status, LpStatus::kOptimal);
    for (int extra = 0; extra < 4; ++extra) {
      const LpRow row = random_row();
      model.AddRow(row);
      solver.AddRow(row);
      const LpSolution warm = solver.Solve();
      const LpSolution cold = SolveLp(model);
      ExpectOptimal(model, warm);
      ASSERT_EQ(cold.status, LpStatus::kOptimal);
      EXPECT_NEAR(warm.objective, cold.objective, 1e-6);
    }
  }
}

}  // namespace
}  // namespace lcim
