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

#include "svnkit/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <unordered_set>

namespace svnkit {

namespace {

std::uint64_t pack_pair(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Splits a line into exactly `n` tab-separated fields.
bool split_fields(std::string_view line, std::span<std::string_view> out) {
  std::size_t start = 0;
  for (std::size_t f = 0; f < out.size(); ++f) {
    const std::size_t tab = line.find('\t', start);
    const bool last = f + 1 == out.size();
    if (last) {
      if (tab != std::string_view::npos) return false;  // too many fields
      out[f] = line.substr(start);
      if (out[f].empty()) return false;
    } else {
      if (tab == std::string_view::npos) return false;  // too few fields
      out[f] = line.substr(start, tab - start);
      if (out[f].empty()) return false;
      start = tab + 1;
    }
  }
  return true;
}

bool parse_weight(std::string_view s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::string strip_cr(const std::string& line) {
  if (!line.empty() && line.back() == '\r') return line.substr(0, line.size() - 1);
  return line;
}

[[noreturn]] void line_error(const std::filesystem::path& path, std::size_t lineno,
                             const std::string& what) {
  throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

NodeId NodeIndex::intern(std::string_view label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  const auto id = static_cast<NodeId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

std::optional<NodeId> NodeIndex::find(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

WeightedNetwork WeightedNetwork::build(NodeIndex nodes,
                                       std::vector<WeightedEdge> edges,
                                       bool directed) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    if (e.source == e.target) {
      throw ParseError("self-loop on node '" + nodes.label(e.source) + "'");
    }
    if (!(e.weight > 0.0)) {
      throw ParseError("non-positive weight on edge '" + nodes.label(e.source) +
                       "' -> '" + nodes.label(e.target) + "'");
    }
    const std::uint64_t key =
        directed ? pack_pair(e.source, e.target)
                 : pack_pair(std::min(e.source, e.target),
                             std::max(e.source, e.target));
    if (!seen.insert(key).second) {
      throw ParseError("duplicate edge '" + nodes.label(e.source) + "' -> '" +
                       nodes.label(e.target) + "'");
    }
  }

  WeightedNetwork wn;
  wn.nodes_ = std::move(nodes);
  wn.directed_ = directed;
  wn.half_edges_ = std::move(edges);
  if (!directed) {
    const std::size_t n = wn.half_edges_.size();
    wn.half_edges_.reserve(n * 2);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = wn.half_edges_[k];
      wn.half_edges_.push_back({e.target, e.source, e.weight});
    }
  }
  std::sort(wn.half_edges_.begin(), wn.half_edges_.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) {
              return std::tie(a.source, a.target) < std::tie(b.source, b.target);
            });

  const std::size_t n = wn.nodes_.size();
  wn.offsets_.assign(n + 1, 0);
  for (const auto& e : wn.half_edges_) wn.offsets_[e.source + 1]++;
  for (std::size_t i = 0; i < n; ++i) wn.offsets_[i + 1] += wn.offsets_[i];
  wn.out_strength_.assign(n, 0.0);
  for (const auto& e : wn.half_edges_) wn.out_strength_[e.source] += e.weight;
  return wn;
}

std::span<const WeightedEdge> WeightedNetwork::out_edges(NodeId node) const {
  return {half_edges_.data() + offsets_[node],
          offsets_[node + 1] - offsets_[node]};
}

std::int64_t WeightedNetwork::out_degree(NodeId node) const {
  return static_cast<std::int64_t>(offsets_[node + 1] - offsets_[node]);
}

double WeightedNetwork::out_strength(NodeId node) const {
  return out_strength_[node];
}

std::vector<DegreeStrength> degrees_strengths(const WeightedNetwork& wn) {
  const std::size_t n = wn.node_count();
  std::vector<DegreeStrength> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i] = {static_cast<NodeId>(i), 0, 0.0, 0, 0.0};
  }
  // Half-edges of an undirected network carry both orientations, so the out
  // and in columns coincide there without special casing.
  for (const auto& e : wn.half_edges()) {
    rows[e.source].out_degree++;
    rows[e.source].out_strength += e.weight;
    rows[e.target].in_degree++;
    rows[e.target].in_strength += e.weight;
  }
  return rows;
}

const char* side_name(Side s) { return s == Side::A ? "A" : "B"; }

BipartiteNetwork BipartiteNetwork::build(
    NodeIndex set_a, NodeIndex set_b,
    std::vector<std::pair<NodeId, NodeId>> links, DuplicateLinkPolicy policy,
    std::size_t* duplicates_dropped) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(links.size() * 2);
  std::vector<std::pair<NodeId, NodeId>> unique;
  unique.reserve(links.size());
  std::size_t dropped = 0;
  for (const auto& [a, b] : links) {
    if (!seen.insert(pack_pair(a, b)).second) {
      if (policy == DuplicateLinkPolicy::strict) {
        throw ParseError("duplicate link '" + set_a.label(a) + "' -- '" +
                         set_b.label(b) + "'");
      }
      ++dropped;
      continue;
    }
    unique.emplace_back(a, b);
  }
  if (duplicates_dropped) *duplicates_dropped = dropped;

  BipartiteNetwork bn;
  bn.a_index_ = std::move(set_a);
  bn.b_index_ = std::move(set_b);
  bn.links_ = std::move(unique);
  std::sort(bn.links_.begin(), bn.links_.end());
  bn.a_adj_.resize(bn.a_index_.size());
  bn.b_adj_.resize(bn.b_index_.size());
  for (const auto& [a, b] : bn.links_) {
    bn.a_adj_[a].push_back(b);
    bn.b_adj_[b].push_back(a);
  }
  for (auto& adj : bn.a_adj_) std::sort(adj.begin(), adj.end());
  for (auto& adj : bn.b_adj_) std::sort(adj.begin(), adj.end());
  return bn;
}

std::span<const NodeId> BipartiteNetwork::neighbors(Side s, NodeId node) const {
  const auto& adj = s == Side::A ? a_adj_ : b_adj_;
  return adj.at(node);
}

ProjectedNetwork project(const BipartiteNetwork& bn, Side side) {
  const Side other = side == Side::A ? Side::B : Side::A;
  const std::size_t n_other = bn.set_size(other);

  // Expand each opposite-side node's neighborhood into co-occurring pairs.
  std::unordered_map<std::uint64_t, std::int64_t> counts;
  for (std::size_t b = 0; b < n_other; ++b) {
    const auto nbrs = bn.neighbors(other, static_cast<NodeId>(b));
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
        counts[pack_pair(nbrs[x], nbrs[y])]++;  // neighbor lists are sorted
      }
    }
  }

  ProjectedNetwork pn;
  pn.side = side;
  pn.side_size = bn.set_size(side);
  pn.edges.reserve(counts.size());
  for (const auto& [key, c] : counts) {
    pn.edges.push_back({static_cast<NodeId>(key >> 32),
                        static_cast<NodeId>(key & 0xffffffffu), c});
  }
  std::sort(pn.edges.begin(), pn.edges.end(),
            [](const ProjectedEdge& a, const ProjectedEdge& b) {
              return std::tie(a.i, a.j) < std::tie(b.i, b.j);
            });

  std::vector<char> touched(pn.side_size, 0);
  for (const auto& e : pn.edges) touched[e.i] = touched[e.j] = 1;
  for (std::size_t v = 0; v < touched.size(); ++v) {
    if (touched[v]) pn.nodes.push_back(static_cast<NodeId>(v));
  }
  return pn;
}

WeightedNetwork load_weighted(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");

  NodeIndex nodes;
  std::vector<WeightedEdge> edges;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip_cr(raw);
    if (line.empty() || line[0] == '#') continue;
    std::string_view fields[3];
    if (!split_fields(line, fields)) {
      line_error(path, lineno, "expected source<TAB>target<TAB>weight");
    }
    double w = 0.0;
    if (!parse_weight(fields[2], w)) {
      line_error(path, lineno, "cannot parse weight '" + std::string(fields[2]) + "'");
    }
    if (!(w > 0.0)) line_error(path, lineno, "weight must be strictly positive");
    if (fields[0] == fields[1]) {
      line_error(path, lineno, "self-loop on node '" + std::string(fields[0]) + "'");
    }
    const NodeId s = nodes.intern(fields[0]);
    const NodeId t = nodes.intern(fields[1]);
    edges.push_back({s, t, w});
  }
  try {
    return WeightedNetwork::build(std::move(nodes), std::move(edges), directed);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_weighted(const WeightedNetwork& wn, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  const auto& idx = wn.nodes();
  if (wn.directed()) {
    for (const auto& e : wn.half_edges()) {
      out << idx.label(e.source) << '\t' << idx.label(e.target) << '\t'
          << format_double(e.weight) << '\n';
    }
  } else {
    // Emit each undirected link once, in canonical orientation.
    for (const auto& e : wn.half_edges()) {
      if (e.source < e.target) {
        out << idx.label(e.source) << '\t' << idx.label(e.target) << '\t'
            << format_double(e.weight) << '\n';
      }
    }
  }
}

BipartiteNetwork load_bipartite(const std::filesystem::path& path,
                                DuplicateLinkPolicy policy,
                                std::size_t* duplicates_dropped) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");

  NodeIndex set_a, set_b;
  std::vector<std::pair<NodeId, NodeId>> links;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = strip_cr(raw);
    if (line.empty() || line[0] == '#') continue;
    std::string_view fields[2];
    if (!split_fields(line, fields)) {
      line_error(path, lineno, "expected nodeA<TAB>nodeB");
    }
    links.emplace_back(set_a.intern(fields[0]), set_b.intern(fields[1]));
  }
  try {
    return BipartiteNetwork::build(std::move(set_a), std::move(set_b),
                                   std::move(links), policy, duplicates_dropped);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_bipartite(const BipartiteNetwork& bn, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (const auto& [a, b] : bn.links()) {
    out << bn.index(Side::A).label(a) << '\t' << bn.index(Side::B).label(b)
        << '\n';
  }
}

void save_node_index(const NodeIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (std::size_t i = 0; i < index.size(); ++i) {
    out << index.label(static_cast<NodeId>(i)) << '\t' << i << '\n';
  }
}

std::string format_double(double v) {
  char buf[40];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  // Shortest round-trip form: try increasing precision.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

}  // namespace svnkit
