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

// LP relaxations of LCIM.
//
//   min sum x
//   x_i + sum_j d_ji y_ji >= h_i z_i      (node rows)
//   y_ij + y_ji <= z_i       per arc      (arc rows)
//   sum z >= b                            (coverage row)
//   0 <= x_i <= h_i,  y, z in [0, 1]
//
// The layered mode (b = n only) adds l_i in [1, n] with
//   y_ij + y_ji = 1                       per edge
//   y_ji - (n-1) y_ij - l_j + l_i <= 0    per arc (i, j)
// so that every integral point is acyclic without cycle cuts.

#ifndef LCIM_FORMULATION_H_
#define LCIM_FORMULATION_H_

#include <optional>
#include <string>
#include <vector>

#include "lcim/inequality.h"
#include "lcim/instance.h"
#include "lcim/lp.h"

namespace lcim {

enum class Mode { kDef, kCb, kLn };

const char* ModeName(Mode mode);
std::optional<Mode> ParseMode(const std::string& text);

// Column layout: x, then y per arc, then z, then l (layered mode only).
struct VarLayout {
  int n = 0;
  int m = 0;
  bool layers = false;

  int X(int i) const { return i; }
  int Y(int a) const { return n + a; }
  int Z(int i) const { return n + m + i; }
  int L(int i) const { return 2 * n + m + i; }
  int size() const { return 2 * n + m + (layers ? n : 0); }
  // First and one-past-last column of the binaries y, z.
  int binary_begin() const { return n; }
  int binary_end() const { return 2 * n + m; }
};

VarLayout LayoutFor(const Instance& instance, Mode mode);

// Throws std::invalid_argument for the layered mode with b < n and for
// b > n.
LpModel Assemble(const Instance& instance, Mode mode);

Point ToPoint(const VarLayout& layout, const std::vector<double>& values);
LpRow ToRow(const VarLayout& layout, const Inequality& ineq);

}  // namespace lcim

#endif  // LCIM_FORMULATION_H_
