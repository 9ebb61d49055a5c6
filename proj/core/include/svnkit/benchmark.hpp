// Copyright 2026 The svnkit Authors
//
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svnkit/community.hpp"
#include "svnkit/graph.hpp"

namespace svnkit {

// Planted-block bipartite generator: each A-node links to B-nodes of its own
// block with intra_link_prob and to the other blocks' B-nodes with
// inter_link_prob.
struct BenchmarkSpec {
  int n_blocks = 4;
  int a_nodes_per_block = 50;
  int b_nodes_per_block = 100;
  double intra_link_prob = 0.3;
  double inter_link_prob = 0.02;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct PlantedBenchmark {
  BipartiteNetwork network;
  Partition planted;  // A-node -> block
};

PlantedBenchmark generate_benchmark(const BenchmarkSpec& spec);

enum class SwapMode : std::uint8_t { degree_matched, any };

// p_r is the fraction of links targeted for swapping; each accepted
// double-edge swap rewires two links.
struct RewirePlan {
  double p_r = 0.0;
  std::uint64_t seed = 0;
  SwapMode mode = SwapMode::degree_matched;
};

struct RewireStats {
  std::int64_t swaps_requested = 0;
  std::int64_t swaps_done = 0;
  std::int64_t attempts = 0;
  bool budget_exhausted = false;
};

// Degree-preserving noise: repeated double-edge swaps (a1,b1),(a2,b2) ->
// (a1,b2),(a2,b1). In degree_matched mode a swap is accepted only when the
// two exchanged endpoints have equal degree, alternating between the B side
// and the A side; `any` lifts that restriction. Swaps that would duplicate an
// existing link are resampled within a bounded retry budget.
BipartiteNetwork rewire(const BipartiteNetwork& bn, const RewirePlan& plan,
                        RewireStats* stats = nullptr);

struct ExperimentConfig {
  std::vector<double> p_r_values;
  int realizations = 100;
  double alpha = 0.01;
  std::uint64_t seed = 0;
  Side side = Side::A;
  SwapMode swap_mode = SwapMode::degree_matched;
  int threads = 0;
};

struct ExperimentRow {
  std::string network_kind;  // full | fdr | bonferroni
  double p_r;
  std::string metric;  // r_adj | w_adj
  double mean;
  double stddev;
  std::size_t samples;  // realizations with a defined metric
};

// Noise-robustness protocol: the reference partition G0 is the Louvain best
// partition of the noiseless full projection (fixed Louvain seed). For every
// p_r and realization, the bipartite network is rewired and re-partitioned
// three ways (full projection, FDR-validated, Bonferroni-validated); each
// partition is scored against G0 with the adjusted Rand and adjusted Wallace
// indices. Realizations run in parallel with per-realization derived seeds;
// the aggregation is order-independent.
std::vector<ExperimentRow> robustness_experiment(const BipartiteNetwork& bn,
                                                 const ExperimentConfig& cfg);

// TSV `network_kind<TAB>p_r<TAB>metric<TAB>mean<TAB>std`.
void save_experiment(const std::vector<ExperimentRow>& rows,
                     const std::filesystem::path& path);

}  // namespace svnkit
