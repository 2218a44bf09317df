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

#include "lcim/formulation.h"

#include <stdexcept>

namespace lcim {

const char* ModeName(Mode mode) {
  switch (mode) {
    case Mode::kDef:
      return "def";
    case Mode::kCb:
      return "cb";
    case Mode::kLn:
      return "ln";
  }
  return "unknown";
}

std::optional<Mode> ParseMode(const std::string& text) {
  if (text == "def" || text == "DEF") return Mode::kDef;
  if (text == "cb" || text == "CB") return Mode::kCb;
  if (text == "ln" || text == "LN") return Mode::kLn;
  return std::nullopt;
}

VarLayout LayoutFor(const Instance& instance, Mode mode) {
  return VarLayout{instance.num_nodes(), instance.num_arcs(), mode == Mode::kLn};
}

LpModel Assemble(const Instance& instance, Mode mode) {
  const int n = instance.num_nodes();
  if (instance.coverage() > n) {
    throw std::invalid_argument("coverage exceeds node count");
  }
  if (mode == Mode::kLn && instance.coverage() != n) {
    throw std::invalid_argument("layered formulation needs b = n");
  }
  const VarLayout layout = LayoutFor(instance, mode);
  LpModel model;
  auto id = [](int i) { return std::to_string(i + 1); };
  for (int i = 0; i < n; ++i) {
    model.AddVariable("x[" + id(i) + "]", 0.0,
                      static_cast<double>(instance.threshold(i)), 1.0);
  }
  for (const Arc& arc : instance.arcs()) {
    model.AddVariable("y[" + id(arc.tail) + "," + id(arc.head) + "]", 0.0, 1.0,
                      0.0);
  }
  for (int i = 0; i < n; ++i) model.AddVariable("z[" + id(i) + "]", 0.0, 1.0, 0.0);
  if (layout.layers) {
    for (int i = 0; i < n; ++i) {
      model.AddVariable("l[" + id(i) + "]", 1.0, static_cast<double>(n), 0.0);
    }
  }

  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> terms = {{layout.X(i), 1.0}};
    for (int a : instance.in_arcs(i)) {
      terms.push_back(
          {layout.Y(a), static_cast<double>(instance.arc(a).weight)});
    }
    terms.push_back(
        {layout.Z(i), -static_cast<double>(instance.threshold(i))});
    model.AddRow(terms, RowSense::kGreaterEqual, 0.0, "node[" + id(i) + "]");
  }
  for (int a = 0; a < instance.num_arcs(); ++a) {
    const Arc& arc = instance.arc(a);
    model.AddRow({{layout.Y(a), 1.0},
                  {layout.Y(instance.reverse_arc(a)), 1.0},
                  {layout.Z(arc.tail), -1.0}},
                 RowSense::kLessEqual, 0.0,
                 "arc[" + id(arc.tail) + "," + id(arc.head) + "]");
  }
  std::vector<std::pair<int, double>> cover;
  for (int i = 0; i < n; ++i) cover.push_back({layout.Z(i), 1.0});
  model.AddRow(cover, RowSense::kGreaterEqual,
               static_cast<double>(instance.coverage()), "coverage");

  if (layout.layers) {
    for (int a = 0; a < instance.num_arcs(); ++a) {
      const Arc& arc = instance.arc(a);
      const int r = instance.reverse_arc(a);
      if (arc.tail < arc.head) {
        model.AddRow({{layout.Y(a), 1.0}, {layout.Y(r), 1.0}}, RowSense::kEqual,
                     1.0, "edge[" + id(arc.tail) + "," + id(arc.head) + "]");
      }
      model.AddRow({{layout.Y(r), 1.0},
                    {layout.Y(a), -static_cast<double>(n - 1)},
                    {layout.L(arc.head), -1.0},
                    {layout.L(arc.tail), 1.0}},
                   RowSense::kLessEqual, 0.0,
                   "layer[" + id(arc.tail) + "," + id(arc.head) + "]");
    }
  }
  return model;
}

Point ToPoint(const VarLayout& layout, const std::vector<double>& values) {
  Point p;
  p.x.assign(values.begin(), values.begin() + layout.n);
  p.y.assign(values.begin() + layout.n, values.begin() + layout.n + layout.m);
  p.z.assign(values.begin() + layout.n + layout.m,
             values.begin() + 2 * layout.n + layout.m);
  return p;
}

LpRow ToRow(const VarLayout& layout, const Inequality& ineq) {
  LpRow row;
  row.sense = RowSense::kGreaterEqual;
  row.rhs = ineq.rhs;
  row.name = ineq.key;
  for (const Term& t : ineq.terms) {
    int col = 0;
    switch (t.kind) {
      case VarKind::kX:
        col = layout.X(t.index);
        break;
      case VarKind::kY:
        col = layout.Y(t.index);
        break;
      case VarKind::kZ:
        col = layout.Z(t.index);
        break;
    }
    row.terms.push_back({col, t.coef});
  }
  return row;
}

}  // namespace lcim
