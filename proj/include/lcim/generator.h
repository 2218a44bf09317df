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

#ifndef LCIM_GENERATOR_H_
#define LCIM_GENERATOR_H_

#include <cstdint>

#include "lcim/instance.h"

namespace lcim {

// How the second parameter of the threshold normal law is read.
enum class SpreadKind { kVariance, kStdDev };

struct SmallWorldParams {
  int num_nodes = 50;
  int mean_degree = 4;      // v: even, < n.
  double rewire = 0.1;      // q in [0, 1].
  double rate = 1.0;        // a in (0, 1].
  uint64_t seed = 0;
  int max_weight = 10;      // d ~ U{1..max_weight}.
  double threshold_ratio = 0.7;
  SpreadKind spread = SpreadKind::kVariance;
};

// Watts-Strogatz ring lattice with rewiring, both arc directions weighted
// independently. Thresholds h_i = ceil(max(1, min(N(0.7 D_i, D_i / v_i), D_i)))
// where D_i is the incoming weight sum. The result is preprocessed and
// depends only on the parameters (including the seed).
Instance GenerateSmallWorld(const SmallWorldParams& params);

// Small random instances for tests and verification batteries.
struct RandomGraphParams {
  int num_nodes = 6;
  double edge_probability = 0.5;
  int max_weight = 5;
  int max_threshold = 10;
  int64_t coverage = 0;  // 0: uniform in [1, n].
  bool connected = true;  // Start from a random spanning tree.
  uint64_t seed = 0;
};

// Weights d ~ U{1..max_weight}, thresholds h ~ U{1..max_threshold};
// preprocessed.
Instance GenerateRandomGraph(const RandomGraphParams& params);

// Simple cycle 0 - 1 - ... - (n-1) - 0 with independent weights per arc.
Instance GenerateRandomCycle(int num_nodes, int max_weight, int max_threshold,
                             int64_t coverage, uint64_t seed);

// Random tree with equal incoming weight d_i ~ U{1..max_weight} per node,
// h_i ~ U{1..d_i deg_i} and b = n; preprocessed (which keeps weights equal).
Instance GenerateEqualTree(int num_nodes, int max_weight, uint64_t seed);

}  // namespace lcim

#endif  // LCIM_GENERATOR_H_
