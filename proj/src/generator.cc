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

#include "lcim/generator.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lcim {

Instance GenerateSmallWorld(const SmallWorldParams& params) {
  const int n = params.num_nodes;
  const int v = params.mean_degree;
  if (n < 4) throw std::invalid_argument("generator needs n >= 4");
  if (v < 2 || v % 2 != 0) throw std::invalid_argument("v must be even, >= 2");
  if (v >= n) throw std::invalid_argument("v must be < n");
  if (!(params.rewire >= 0.0 && params.rewire <= 1.0)) {
    throw std::invalid_argument("rewiring probability must lie in [0, 1]");
  }
  if (params.max_weight < 1) throw std::invalid_argument("max_weight < 1");
  const int64_t b = CoverageForRate(params.rate, n);

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick_node(0, n - 1);

  std::vector<std::set<int>> adj(n);
  for (int u = 0; u < n; ++u) {
    for (int j = 1; j <= v / 2; ++j) {
      int w = (u + j) % n;
      adj[u].insert(w);
      adj[w].insert(u);
    }
  }
  for (int j = 1; j <= v / 2; ++j) {
    for (int u = 0; u < n; ++u) {
      if (coin(rng) >= params.rewire) continue;
      int old = (u + j) % n;
      if (static_cast<int>(adj[u].size()) >= n - 1) continue;
      int w = pick_node(rng);
      while (w == u || adj[u].count(w)) w = pick_node(rng);
      adj[u].erase(old);
      adj[old].erase(u);
      adj[u].insert(w);
      adj[w].insert(u);
    }
  }

  std::uniform_int_distribution<int64_t> pick_weight(1, params.max_weight);
  std::vector<Arc> arcs;
  for (int u = 0; u < n; ++u) {
    for (int w : adj[u]) arcs.push_back({u, w, pick_weight(rng)});
  }

  std::vector<int64_t> incoming(n, 0);
  for (const Arc& arc : arcs) incoming[arc.head] += arc.weight;
  std::vector<int64_t> thresholds(n, 1);
  for (int i = 0; i < n; ++i) {
    const double total = static_cast<double>(incoming[i]);
    const double degree = static_cast<double>(adj[i].size());
    double spread = degree > 0 ? total / degree : 0.0;
    if (params.spread == SpreadKind::kVariance) spread = std::sqrt(spread);
    double draw = params.threshold_ratio * total;
    if (spread > 0) {
      std::normal_distribution<double> law(params.threshold_ratio * total,
                                           spread);
      draw = law(rng);
    }
    double clipped = std::max(1.0, std::min(draw, total));
    thresholds[i] = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(clipped)));
  }
  return Preprocess(Instance(n, b, std::move(thresholds), std::move(arcs)));
}

namespace {

std::vector<Arc> BothWays(const std::set<std::pair<int, int>>& edges,
                          int max_weight, std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> pick_weight(1, max_weight);
  std::vector<Arc> arcs;
  for (const auto& [u, w] : edges) {
    arcs.push_back({u, w, pick_weight(rng)});
    arcs.push_back({w, u, pick_weight(rng)});
  }
  return arcs;
}

}  // namespace

Instance GenerateRandomGraph(const RandomGraphParams& params) {
  const int n = params.num_nodes;
  if (n < 1) throw std::invalid_argument("need at least one node");
  if (params.max_weight < 1 || params.max_threshold < 1) {
    throw std::invalid_argument("weights and thresholds must be positive");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::set<std::pair<int, int>> edges;
  if (params.connected) {
    for (int i = 1; i < n; ++i) {
      const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
      edges.insert({j, i});
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng) < params.edge_probability) edges.insert({i, j});
    }
  }
  std::vector<Arc> arcs = BothWays(edges, params.max_weight, rng);
  std::uniform_int_distribution<int64_t> pick_h(1, params.max_threshold);
  std::vector<int64_t> thresholds(n);
  for (int64_t& h : thresholds) h = pick_h(rng);
  int64_t b = params.coverage;
  if (b == 0) b = std::uniform_int_distribution<int64_t>(1, n)(rng);
  return Preprocess(Instance(n, b, std::move(thresholds), std::move(arcs)));
}

Instance GenerateRandomCycle(int num_nodes, int max_weight, int max_threshold,
                             int64_t coverage, uint64_t seed) {
  if (num_nodes < 3) throw std::invalid_argument("cycle needs n >= 3");
  std::mt19937_64 rng(seed);
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < num_nodes; ++i) {
    const int j = (i + 1) % num_nodes;
    edges.insert({std::min(i, j), std::max(i, j)});
  }
  std::vector<Arc> arcs = BothWays(edges, max_weight, rng);
  std::uniform_int_distribution<int64_t> pick_h(1, max_threshold);
  std::vector<int64_t> thresholds(num_nodes);
  for (int64_t& h : thresholds) h = pick_h(rng);
  return Preprocess(
      Instance(num_nodes, coverage, std::move(thresholds), std::move(arcs)));
}

Instance GenerateEqualTree(int num_nodes, int max_weight, uint64_t seed) {
  if (num_nodes < 1) throw std::invalid_argument("need at least one node");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree(num_nodes, 0);
  for (int i = 1; i < num_nodes; ++i) {
    const int j = std::uniform_int_distribution<int>(0, i - 1)(rng);
    edges.push_back({j, i});
    ++degree[i];
    ++degree[j];
  }
  std::uniform_int_distribution<int64_t> pick_weight(1, max_weight);
  std::vector<int64_t> d(num_nodes);
  for (int64_t& w : d) w = pick_weight(rng);
  std::vector<int64_t> thresholds(num_nodes);
  for (int i = 0; i < num_nodes; ++i) {
    const int64_t top = std::max<int64_t>(1, d[i] * degree[i]);
    thresholds[i] = std::uniform_int_distribution<int64_t>(1, top)(rng);
  }
  std::vector<Arc> arcs;
  for (const auto& [u, w] : edges) {
    arcs.push_back({u, w, d[w]});
    arcs.push_back({w, u, d[u]});
  }
  return Preprocess(
      Instance(num_nodes, num_nodes, std::move(thresholds), std::move(arcs)));
}

}  // namespace lcim
