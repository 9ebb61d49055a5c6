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
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace svnkit {

using NodeId = std::uint32_t;

// Input-file problems (malformed lines, invariant violations). The CLI maps
// these to the usage/validation exit code.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Opaque labels mapped to dense indices. Insertion order defines the index,
// which keeps every downstream output canonical.
class NodeIndex {
 public:
  NodeId intern(std::string_view label);
  std::optional<NodeId> find(std::string_view label) const;
  const std::string& label(NodeId id) const { return labels_.at(id); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const {
      return std::hash<std::string_view>{}(s);
    }
  };
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId, StringHash, std::equal_to<>> index_;
};

struct WeightedEdge {
  NodeId source;
  NodeId target;
  double weight;
};

// Directed weighted edge set. Undirected input is stored as two directed
// half-edges so each link can be tested from both endpoints' perspectives.
class WeightedNetwork {
 public:
  // `edges` are the logical input edges; validation enforces positive
  // weights, no self-loops, and uniqueness (ordered pairs when directed,
  // unordered when not).
  static WeightedNetwork build(NodeIndex nodes, std::vector<WeightedEdge> edges,
                               bool directed);

  bool directed() const { return directed_; }
  std::size_t node_count() const { return nodes_.size(); }
  const NodeIndex& nodes() const { return nodes_; }

  // Directed half-edges in canonical (source, target) order. For undirected
  // networks every input edge appears in both orientations.
  std::span<const WeightedEdge> half_edges() const { return half_edges_; }
  std::span<const WeightedEdge> out_edges(NodeId node) const;
  std::int64_t out_degree(NodeId node) const;
  double out_strength(NodeId node) const;

 private:
  NodeIndex nodes_;
  bool directed_ = false;
  std::vector<WeightedEdge> half_edges_;    // sorted by (source, target)
  std::vector<std::size_t> offsets_;        // CSR over half_edges_
  std::vector<double> out_strength_;
};

// Per-node degree/strength row. For undirected networks the out and in
// columns coincide.
struct DegreeStrength {
  NodeId node;
  std::int64_t out_degree;
  double out_strength;
  std::int64_t in_degree;
  double in_strength;
};

std::vector<DegreeStrength> degrees_strengths(const WeightedNetwork& wn);

enum class Side : std::uint8_t { A, B };
const char* side_name(Side s);

enum class DuplicateLinkPolicy : std::uint8_t { warn_and_ignore, strict };

// Unweighted links between two disjoint node sets. Column membership defines
// the namespace: the same label in both columns is two distinct nodes.
class BipartiteNetwork {
 public:
  static BipartiteNetwork build(NodeIndex set_a, NodeIndex set_b,
                                std::vector<std::pair<NodeId, NodeId>> links,
                                DuplicateLinkPolicy policy,
                                std::size_t* duplicates_dropped = nullptr);

  std::size_t set_size(Side s) const {
    return s == Side::A ? a_index_.size() : b_index_.size();
  }
  const NodeIndex& index(Side s) const {
    return s == Side::A ? a_index_ : b_index_;
  }
  std::size_t link_count() const { return links_.size(); }
  std::span<const std::pair<NodeId, NodeId>> links() const { return links_; }

  // Sorted neighbor lists.
  std::span<const NodeId> neighbors(Side s, NodeId node) const;
  std::int64_t degree(Side s, NodeId node) const {
    return static_cast<std::int64_t>(neighbors(s, node).size());
  }

 private:
  NodeIndex a_index_;
  NodeIndex b_index_;
  std::vector<std::pair<NodeId, NodeId>> links_;  // canonical (a, b) order
  std::vector<std::vector<NodeId>> a_adj_;
  std::vector<std::vector<NodeId>> b_adj_;
};

struct ProjectedEdge {
  NodeId i;  // i < j
  NodeId j;
  std::int64_t cooccurrence;
};

// One-mode co-occurrence network over one side of a bipartite network. Pairs
// with zero co-occurrence are never materialized here; the two-tail test
// enumerates them lazily.
struct ProjectedNetwork {
  Side side = Side::A;
  std::size_t side_size = 0;                // size of the projected set
  std::vector<ProjectedEdge> edges;         // sorted by (i, j)
  std::vector<NodeId> nodes;                // nodes with at least one edge
};

ProjectedNetwork project(const BipartiteNetwork& bn, Side side);

// ---- File I/O -------------------------------------------------------------
//
// Weighted edge lists are TSV `source<TAB>target<TAB>weight`; bipartite link
// lists are TSV `nodeA<TAB>nodeB`. Lines starting with '#' are comments.

WeightedNetwork load_weighted(const std::filesystem::path& path, bool directed);
void save_weighted(const WeightedNetwork& wn, const std::filesystem::path& path);

BipartiteNetwork load_bipartite(
    const std::filesystem::path& path,
    DuplicateLinkPolicy policy = DuplicateLinkPolicy::warn_and_ignore,
    std::size_t* duplicates_dropped = nullptr);
void save_bipartite(const BipartiteNetwork& bn, const std::filesystem::path& path);

// Sidecar `label<TAB>index` emitted next to every network output.
void save_node_index(const NodeIndex& index, const std::filesystem::path& path);

// Round-trip-stable decimal formatting (shortest representation that parses
// back to the same double).
std::string format_double(double v);

}  // namespace svnkit
