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
#include <span>
#include <vector>

#include "svnkit/graph.hpp"
#include "svnkit/svn.hpp"

namespace svnkit {

// Node-to-community assignment over a fixed universe of node indices.
// Coverage may be partial: validated networks drop nodes, and partition
// metrics are computed on the coverage intersection.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::size_t universe)
      : labels_(universe, kUncovered) {}

  std::size_t universe() const { return labels_.size(); }
  bool covers(NodeId node) const { return labels_[node] != kUncovered; }
  std::int32_t at(NodeId node) const { return labels_[node]; }
  void set(NodeId node, std::int32_t community) { labels_[node] = community; }

  std::size_t coverage_size() const;
  std::int32_t community_count() const;

  // Relabels communities to dense ids [0, count) in order of first
  // appearance by node index.
  void compact();

  static constexpr std::int32_t kUncovered = -1;

 private:
  std::vector<std::int32_t> labels_;
};

struct GraphEdge {
  NodeId u;
  NodeId v;
  double weight;
};

enum class EdgeWeightMode : std::uint8_t { binary, cooccurrence };

std::vector<GraphEdge> projection_edges(const ProjectedNetwork& pn,
                                        EdgeWeightMode mode);
// Validated links of the over tail; under-links mark avoided relationships
// and never feed community detection.
std::vector<GraphEdge> validated_edges(const ValidatedNetwork& vn,
                                       EdgeWeightMode mode);

// Two-phase modularity maximization: local moves to convergence, then graph
// aggregation, repeated until no gain. Deterministic for a fixed seed (the
// node visit order is reshuffled per pass from the seeded generator; equal
// best gains resolve to the lowest community label).
Partition louvain(std::size_t universe, std::span<const GraphEdge> edges,
                  std::uint64_t seed);
Partition louvain(const ProjectedNetwork& pn, std::uint64_t seed,
                  EdgeWeightMode mode = EdgeWeightMode::cooccurrence);
Partition louvain(const ValidatedNetwork& vn, std::uint64_t seed,
                  EdgeWeightMode mode = EdgeWeightMode::binary);

// Newman-Girvan modularity of a partition covering every edge endpoint.
double modularity(std::span<const GraphEdge> edges, const Partition& part);
double modularity(const ProjectedNetwork& pn, const Partition& part,
                  EdgeWeightMode mode = EdgeWeightMode::cooccurrence);

// Hubert-Arabie chance-corrected Rand index on the coverage intersection.
// Requires an overlap of at least 2 nodes.
double adjusted_rand(const Partition& a, const Partition& b);

// Chance-corrected Wallace index: of the candidate's co-clustered pairs, the
// fraction also co-clustered in the reference, rescaled by the probability
// that a random pair is co-clustered in the reference. Asymmetric. Undefined
// (throws std::domain_error) when the candidate co-clusters no pair or the
// reference co-clusters all pairs.
double adjusted_wallace(const Partition& candidate, const Partition& reference);

// Pipeline: one-tail over-expression validation, then Louvain on the
// validated network. The returned coverage is restricted to validated nodes,
// which is what makes the detected cores noise-robust.
Partition community_cores(const BipartiteNetwork& bn, Side side, double alpha,
                          CorrectionMethod method, std::uint64_t seed,
                          int threads = 0);

void save_partition(const Partition& part, const NodeIndex& index,
                    const std::filesystem::path& path);

// Label-keyed partition rows as read from a `node<TAB>community` file.
struct LabeledPartition {
  std::vector<std::pair<std::string, std::int64_t>> rows;
};
LabeledPartition read_partition_file(const std::filesystem::path& path);

// Rebuilds two partitions over a shared label universe so they can be
// compared regardless of origin.
std::pair<Partition, Partition> align_partitions(const LabeledPartition& a,
                                                 const LabeledPartition& b);

}  // namespace svnkit
