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

#include "lcim/inequality.h"

#include <cmath>
#include <sstream>
#include <string>

namespace lcim {

const char* CutFamilyName(CutFamily family) {
  switch (family) {
    case CutFamily::kCover:
      return "cover";
    case CutFamily::kPacking:
      return "packing";
    case CutFamily::kMis:
      return "mis";
    case CutFamily::kGcec:
      return "gcec";
    case CutFamily::kUc:
      return "uc";
    case CutFamily::kHullEq:
      return "hull-eq";
    case CutFamily::kBase:
      return "base";
  }
  return "unknown";
}

double Inequality::Activity(const Point& point) const {
  double sum = 0.0;
  for (const Term& t : terms) {
    switch (t.kind) {
      case VarKind::kX:
        sum += t.coef * point.x[t.index];
        break;
      case VarKind::kY:
        sum += t.coef * point.y[t.index];
        break;
      case VarKind::kZ:
        sum += t.coef * point.z[t.index];
        break;
    }
  }
  return sum;
}

namespace {

std::string FormatCoef(double c) {
  if (c == std::floor(c) && std::abs(c) < 1e15) {
    return std::to_string(static_cast<long long>(c));
  }
  std::ostringstream out;
  out << c;
  return out.str();
}

}  // namespace

std::string Inequality::Render(const Instance& instance) const {
  std::ostringstream out;
  bool first = true;
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    double c = t.coef;
    if (!first) {
      out << (c < 0 ? " - " : " + ");
      c = std::abs(c);
    } else if (c < 0) {
      out << "-";
      c = -c;
    }
    first = false;
    if (c != 1.0) out << FormatCoef(c) << '*';
    switch (t.kind) {
      case VarKind::kX:
        out << "x[" << t.index + 1 << ']';
        break;
      case VarKind::kY: {
        const Arc& arc = instance.arc(t.index);
        out << "y[" << arc.tail + 1 << ',' << arc.head + 1 << ']';
        break;
      }
      case VarKind::kZ:
        out << "z[" << t.index + 1 << ']';
        break;
    }
  }
  if (first) out << '0';
  out << " >= " << FormatCoef(rhs);
  return out.str();
}

NodePoint Restrict(const Point& point, const NodeView& view) {
  NodePoint np;
  np.x = point.x[view.node];
  np.z = point.z[view.node];
  for (const Neighbor& nb : view.in) np.y.push_back(point.y[nb.arc]);
  return np;
}

double KnapsackCut::Slack(const NodePoint& point) const {
  double sum = point.x - static_cast<double>(beta) * point.z;
  for (size_t j = 0; j < alpha.size(); ++j) {
    sum += static_cast<double>(alpha[j]) * point.y[j];
  }
  return sum;
}

Inequality KnapsackCut::ToInequality(const NodeView& view) const {
  Inequality ineq;
  ineq.family = family;
  ineq.terms.push_back({VarKind::kX, view.node, 1.0});
  for (size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] != 0) {
      ineq.terms.push_back(
          {VarKind::kY, view.in[j].arc, static_cast<double>(alpha[j])});
    }
  }
  ineq.terms.push_back({VarKind::kZ, view.node, -static_cast<double>(beta)});
  ineq.rhs = 0.0;
  std::ostringstream key;
  key << CutFamilyName(family) << ':' << view.node << ':';
  for (int s : set) key << view.in[s].node << ',';
  ineq.key = key.str();
  return ineq;
}

std::string KnapsackCut::Render(const NodeView& view) const {
  std::ostringstream out;
  const int i = view.node + 1;
  out << "x[" << i << ']';
  for (size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] == 0) continue;
    out << " + ";
    if (alpha[j] != 1) out << alpha[j] << '*';
    out << "y[" << view.in[j].node + 1 << ',' << i << ']';
  }
  out << " >= ";
  if (beta != 1) out << beta << '*';
  out << "z[" << i << ']';
  return out.str();
}

}  // namespace lcim
