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

#ifndef LCIM_INEQUALITY_H_
#define LCIM_INEQUALITY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "lcim/instance.h"

namespace lcim {

enum class CutFamily { kCover, kPacking, kMis, kGcec, kUc, kHullEq, kBase };
inline constexpr int kNumCutFamilies = 7;

const char* CutFamilyName(CutFamily family);

enum class VarKind { kX, kY, kZ };

// y terms index arcs of the owning Instance; x and z terms index nodes.
struct Term {
  VarKind kind = VarKind::kX;
  int index = 0;
  double coef = 0.0;
};

// A point of the (x, y, z) space of an instance. y is indexed by arc.
struct Point {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
};

// sum(terms) >= rhs.
struct Inequality {
  CutFamily family = CutFamily::kBase;
  std::vector<Term> terms;
  double rhs = 0.0;
  // Dedup key: family, anchor and defining set.
  std::string key;

  double Activity(const Point& point) const;
  // rhs - activity; positive means violated.
  double Violation(const Point& point) const { return rhs - Activity(point); }
  // Human-readable, 1-based.
  std::string Render(const Instance& instance) const;
};

// Single-node restriction of a point: y follows the order of NodeView::in.
struct NodePoint {
  double x = 0.0;
  std::vector<double> y;
  double z = 0.0;
};

NodePoint Restrict(const Point& point, const NodeView& view);

// A cut x + sum_j alpha_j y_j >= beta z for one node; alpha follows
// NodeView::in.
struct KnapsackCut {
  CutFamily family = CutFamily::kBase;
  int node = 0;
  std::vector<int64_t> alpha;
  int64_t beta = 0;
  std::vector<int> set;  // Defining set, positions into NodeView::in.

  // x + sum alpha y - beta z.
  double Slack(const NodePoint& point) const;
  double Violation(const NodePoint& point) const { return -Slack(point); }
  Inequality ToInequality(const NodeView& view) const;
  // "x[i] + 4*y[j,i] + y[k,i] >= 5*z[i]" with 1-based ids; zero terms
  // omitted, unit coefficients bare.
  std::string Render(const NodeView& view) const;
};

}  // namespace lcim

#endif  // LCIM_INEQUALITY_H_
