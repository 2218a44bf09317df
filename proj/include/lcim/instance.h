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

#ifndef LCIM_INSTANCE_H_
#define LCIM_INSTANCE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcim {

// Nodes are 0-based inside the library. Files, cut renderings and the CLI use
// 1-based ids.

// A directed influence arc tail -> head. `weight` is d_{tail,head}: the
// influence the tail exerts on the head once the tail is active.
struct Arc {
  int tail = 0;
  int head = 0;
  int64_t weight = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
};

// One incoming neighbor of a node, as seen from the receiving node.
struct Neighbor {
  int node = 0;        // The influencing neighbor j.
  int64_t weight = 0;  // d_{j,i}.
  int arc = -1;        // Index of arc (j, i) in the owning Instance, or -1.
};

// The single-node mixed 0-1 knapsack data: x + sum_j d_j y_j >= h z.
struct NodeView {
  int node = 0;
  int64_t threshold = 0;
  std::vector<Neighbor> in;

  int degree() const { return static_cast<int>(in.size()); }
  int64_t TotalWeight() const;
};

// Builds a standalone NodeView (no owning instance): neighbors are nodes
// 0..v-1 and the receiving node is v, so 1-based renderings read y[j,v+1].
NodeView MakeNodeView(int64_t threshold, const std::vector<int64_t>& weights);

// An LCIM instance on a bidirectional graph. Immutable after construction;
// every constructor path validates the invariants below and throws
// std::invalid_argument on violation:
//  - arcs are symmetric as a relation, have no self-loops or duplicates;
//  - all weights and thresholds are positive;
//  - coverage b >= 1.
// b > n is representable so that the solver can report infeasibility.
class Instance {
 public:
  Instance() = default;
  Instance(int num_nodes, int64_t coverage, std::vector<int64_t> thresholds,
           std::vector<Arc> arcs);

  int num_nodes() const { return static_cast<int>(thresholds_.size()); }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  int num_edges() const { return num_arcs() / 2; }
  int64_t coverage() const { return coverage_; }
  int64_t threshold(int node) const { return thresholds_[node]; }
  const std::vector<int64_t>& thresholds() const { return thresholds_; }

  // Arcs sorted by (tail, head).
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int index) const { return arcs_[index]; }
  int reverse_arc(int index) const { return reverse_[index]; }
  // Arc index of (tail, head), or -1.
  int FindArc(int tail, int head) const;

  // Indices of arcs entering / leaving `node`.
  const std::vector<int>& in_arcs(int node) const { return in_arcs_[node]; }
  const std::vector<int>& out_arcs(int node) const { return out_arcs_[node]; }
  int degree(int node) const { return static_cast<int>(in_arcs_[node].size()); }

  NodeView View(int node) const;

  // True when max_j d_ji <= h_i for every node.
  bool IsPreprocessed() const;

  // Same graph and weights with a different coverage target.
  Instance WithCoverage(int64_t coverage) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.coverage_ == b.coverage_ && a.thresholds_ == b.thresholds_ &&
           a.arcs_ == b.arcs_;
  }

 private:
  int64_t coverage_ = 1;
  std::vector<int64_t> thresholds_;
  std::vector<Arc> arcs_;
  std::vector<int> reverse_;
  std::vector<std::vector<int>> in_arcs_;
  std::vector<std::vector<int>> out_arcs_;
};

// Clamps every d_ji > h_i down to h_i. Idempotent.
Instance Preprocess(const Instance& instance);

// b = ceil(a * n) for a penetration rate a in (0, 1].
int64_t CoverageForRate(double rate, int num_nodes);

// Text format "lcim 1"; see README.md for the grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& reason);
  int line() const { return line_; }

 private:
  int line_;
};

std::string FormatInstance(const Instance& instance);
Instance ParseInstance(const std::string& text);

// Throws std::runtime_error when the file cannot be opened or written.
void SaveInstance(const Instance& instance, const std::filesystem::path& path);
Instance LoadInstance(const std::filesystem::path& path);

// Nodes i with |N(i)| >= 2 but sum_j d_ji <= h_i. The loader reports these as
// warnings; the solver does not depend on the strict inequality.
std::vector<int> NodesWithoutSlack(const Instance& instance);

}  // namespace lcim

#endif  // LCIM_INSTANCE_H_
