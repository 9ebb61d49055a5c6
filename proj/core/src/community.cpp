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

#include "svnkit/community.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "svnkit/rng.hpp"

namespace svnkit {

std::size_t Partition::coverage_size() const {
  std::size_t n = 0;
  for (auto l : labels_) n += l != kUncovered;
  return n;
}

std::int32_t Partition::community_count() const {
  std::int32_t max_label = -1;
  for (auto l : labels_) max_label = std::max(max_label, l);
  return max_label + 1;
}

void Partition::compact() {
  std::unordered_map<std::int32_t, std::int32_t> remap;
  std::int32_t next = 0;
  for (auto& l : labels_) {
    if (l == kUncovered) continue;
    auto [it, inserted] = remap.emplace(l, next);
    if (inserted) ++next;
    l = it->second;
  }
}

std::vector<GraphEdge> projection_edges(const ProjectedNetwork& pn,
                                        EdgeWeightMode mode) {
  std::vector<GraphEdge> edges;
  edges.reserve(pn.edges.size());
  for (const auto& e : pn.edges) {
    const double w = mode == EdgeWeightMode::binary
                         ? 1.0
                         : static_cast<double>(e.cooccurrence);
    edges.push_back({e.i, e.j, w});
  }
  return edges;
}

std::vector<GraphEdge> validated_edges(const ValidatedNetwork& vn,
                                       EdgeWeightMode mode) {
  std::vector<GraphEdge> edges;
  for (const auto& e : vn.edges) {
    if (e.tail != Tail::over) continue;
    const double w = mode == EdgeWeightMode::binary
                         ? 1.0
                         : static_cast<double>(e.n_ij);
    edges.push_back({e.i, e.j, w});
  }
  return edges;
}

namespace {

// Compressed adjacency over the nodes touched by the edge list, with
// aggregated self-loops for the coarsened levels.
struct LevelGraph {
  std::size_t n = 0;
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> nbr;
  std::vector<double> weight;
  std::vector<double> self_loop;  // internal weight, counted once
  std::vector<double> degree;     // weighted degree incl. 2 * self_loop
  double two_m = 0.0;
};

LevelGraph build_level(std::size_t n, const std::vector<GraphEdge>& edges,
                       const std::vector<double>& self_loops) {
  LevelGraph g;
  g.n = n;
  g.offsets.assign(n + 1, 0);
  for (const auto& e : edges) {
    g.offsets[e.u + 1]++;
    g.offsets[e.v + 1]++;
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets[i + 1] += g.offsets[i];
  g.nbr.resize(2 * edges.size());
  g.weight.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (const auto& e : edges) {
    g.nbr[cursor[e.u]] = e.v;
    g.weight[cursor[e.u]++] = e.weight;
    g.nbr[cursor[e.v]] = e.u;
    g.weight[cursor[e.v]++] = e.weight;
  }
  g.self_loop = self_loops;
  g.self_loop.resize(n, 0.0);
  g.degree.assign(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    double d = 2.0 * g.self_loop[v];
    for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      d += g.weight[k];
    }
    g.degree[v] = d;
    g.two_m += d;
  }
  return g;
}

// One level of local moves; returns the node->community map (not compacted).
std::vector<std::uint32_t> local_moves(const LevelGraph& g, Rng& rng) {
  std::vector<std::uint32_t> comm(g.n);
  std::vector<double> tot(g.n);
  for (std::size_t v = 0; v < g.n; ++v) {
    comm[v] = static_cast<std::uint32_t>(v);
    tot[v] = g.degree[v];
  }

  std::vector<std::uint32_t> order(g.n);
  for (std::size_t v = 0; v < g.n; ++v) order[v] = static_cast<std::uint32_t>(v);

  std::vector<double> link_to(g.n, 0.0);
  std::vector<std::uint32_t> touched;

  bool moved = true;
  int pass = 0;
  const int max_passes = 512;  // safety net; convergence is typically fast
  while (moved && pass++ < max_passes) {
    moved = false;
    rng.shuffle(order);
    for (const std::uint32_t v : order) {
      const std::uint32_t c_old = comm[v];

      touched.clear();
      for (std::size_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
        const std::uint32_t c = comm[g.nbr[k]];
        if (link_to[c] == 0.0) touched.push_back(c);
        link_to[c] += g.weight[k];
      }
      if (link_to[c_old] == 0.0) touched.push_back(c_old);

      tot[c_old] -= g.degree[v];
      const double scale = g.degree[v] / g.two_m;
      double best_gain = link_to[c_old] - tot[c_old] * scale;
      std::uint32_t best_c = c_old;
      std::sort(touched.begin(), touched.end());
      for (const std::uint32_t c : touched) {
        if (c == c_old) continue;
        const double gain = link_to[c] - tot[c] * scale;
        // strict improvement only; equal-gain candidates resolve to the
        // lowest label through the sorted scan
        if (gain > best_gain) {
          best_gain = gain;
          best_c = c;
        }
      }
      tot[best_c] += g.degree[v];
      if (best_c != c_old) {
        comm[v] = best_c;
        moved = true;
      }
      for (const std::uint32_t c : touched) link_to[c] = 0.0;
    }
  }
  return comm;
}

}  // namespace

Partition louvain(std::size_t universe, std::span<const GraphEdge> edges,
                  std::uint64_t seed) {
  if (edges.empty()) {
    throw std::invalid_argument("community detection needs at least one edge");
  }

  // Restrict to nodes that touch an edge; isolated nodes stay uncovered.
  std::vector<std::uint32_t> to_local(universe, UINT32_MAX);
  std::vector<NodeId> to_global;
  for (const auto& e : edges) {
    for (NodeId end : {e.u, e.v}) {
      if (to_local[end] == UINT32_MAX) {
        to_local[end] = static_cast<std::uint32_t>(to_global.size());
        to_global.push_back(end);
      }
    }
  }

  std::vector<GraphEdge> level_edges;
  level_edges.reserve(edges.size());
  for (const auto& e : edges) {
    level_edges.push_back({to_local[e.u], to_local[e.v], e.weight});
  }
  std::vector<double> self_loops;
  std::size_t level_n = to_global.size();

  // assignment[v] = community of original local node v, refined per level
  std::vector<std::uint32_t> assignment(level_n);
  for (std::size_t v = 0; v < level_n; ++v) {
    assignment[v] = static_cast<std::uint32_t>(v);
  }

  Rng rng(seed);
  for (;;) {
    const LevelGraph g = build_level(level_n, level_edges, self_loops);
    std::vector<std::uint32_t> comm = local_moves(g, rng);

    // compact community ids in order of first appearance
    std::vector<std::uint32_t> remap(level_n, UINT32_MAX);
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < level_n; ++v) {
      if (remap[comm[v]] == UINT32_MAX) remap[comm[v]] = next++;
      comm[v] = remap[comm[v]];
    }
    for (auto& a : assignment) a = comm[a];
    if (next == level_n) break;  // no aggregation happened; done

    // aggregate: communities become nodes
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> agg;
    std::vector<double> next_self(next, 0.0);
    for (std::size_t i = 0; i < self_loops.size(); ++i) {
      next_self[comm[i]] += self_loops[i];
    }
    for (const auto& e : level_edges) {
      const std::uint32_t cu = comm[e.u];
      const std::uint32_t cv = comm[e.v];
      if (cu == cv) {
        next_self[cu] += e.weight;
      } else {
        agg[std::minmax(cu, cv)] += e.weight;
      }
    }
    level_edges.clear();
    for (const auto& [key, w] : agg) {
      level_edges.push_back({key.first, key.second, w});
    }
    self_loops = std::move(next_self);
    level_n = next;
    if (level_edges.empty()) break;  // fully disconnected communities
  }

  Partition part(universe);
  for (std::size_t v = 0; v < to_global.size(); ++v) {
    part.set(to_global[v], static_cast<std::int32_t>(assignment[v]));
  }
  part.compact();
  return part;
}

Partition louvain(const ProjectedNetwork& pn, std::uint64_t seed,
                  EdgeWeightMode mode) {
  return louvain(pn.side_size, projection_edges(pn, mode), seed);
}

Partition louvain(const ValidatedNetwork& vn, std::uint64_t seed,
                  EdgeWeightMode mode) {
  return louvain(vn.side_size, validated_edges(vn, mode), seed);
}

double modularity(std::span<const GraphEdge> edges, const Partition& part) {
  if (edges.empty()) {
    throw std::invalid_argument("modularity needs at least one edge");
  }
  std::unordered_map<std::int32_t, double> internal, degree;
  double m = 0.0;
  for (const auto& e : edges) {
    if (!part.covers(e.u) || !part.covers(e.v)) {
      throw std::invalid_argument("partition does not cover every network node");
    }
    m += e.weight;
    degree[part.at(e.u)] += e.weight;
    degree[part.at(e.v)] += e.weight;
    if (part.at(e.u) == part.at(e.v)) internal[part.at(e.u)] += e.weight;
  }
  double q = 0.0;
  for (const auto& [c, d] : degree) {
    const auto it = internal.find(c);
    const double e_c = it == internal.end() ? 0.0 : it->second;
    const double frac = d / (2.0 * m);
    q += e_c / m - frac * frac;
  }
  return q;
}

double modularity(const ProjectedNetwork& pn, const Partition& part,
                  EdgeWeightMode mode) {
  return modularity(projection_edges(pn, mode), part);
}

namespace {

struct PairCounts {
  double sum_cells_c2 = 0.0;  // pairs co-clustered in both
  double sum_a_c2 = 0.0;      // pairs co-clustered in the first partition
  double sum_b_c2 = 0.0;      // pairs co-clustered in the second
  double total_pairs = 0.0;   // C(overlap, 2)
};

double choose2(double x) { return x * (x - 1.0) / 2.0; }

PairCounts pair_counts(const Partition& a, const Partition& b) {
  if (a.universe() != b.universe()) {
    throw std::invalid_argument("partitions compare over the same universe");
  }
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> cells;
  std::unordered_map<std::int32_t, std::int64_t> rows, cols;
  std::int64_t overlap = 0;
  for (std::size_t v = 0; v < a.universe(); ++v) {
    const auto node = static_cast<NodeId>(v);
    if (!a.covers(node) || !b.covers(node)) continue;
    ++overlap;
    cells[{a.at(node), b.at(node)}]++;
    rows[a.at(node)]++;
    cols[b.at(node)]++;
  }
  if (overlap < 2) {
    throw std::invalid_argument("coverage overlap must contain at least 2 nodes");
  }
  PairCounts pc;
  for (const auto& [key, c] : cells) pc.sum_cells_c2 += choose2(static_cast<double>(c));
  for (const auto& [key, c] : rows) pc.sum_a_c2 += choose2(static_cast<double>(c));
  for (const auto& [key, c] : cols) pc.sum_b_c2 += choose2(static_cast<double>(c));
  pc.total_pairs = choose2(static_cast<double>(overlap));
  return pc;
}

}  // namespace

double adjusted_rand(const Partition& a, const Partition& b) {
  const PairCounts pc = pair_counts(a, b);
  const double expected = pc.sum_a_c2 * pc.sum_b_c2 / pc.total_pairs;
  const double max_index = 0.5 * (pc.sum_a_c2 + pc.sum_b_c2);
  const double denom = max_index - expected;
  if (denom == 0.0) return 1.0;  // both trivial partitions, necessarily equal
  return (pc.sum_cells_c2 - expected) / denom;
}

double adjusted_wallace(const Partition& candidate, const Partition& reference) {
  const PairCounts pc = pair_counts(candidate, reference);
  if (pc.sum_a_c2 == 0.0) {
    throw std::domain_error("candidate partition co-clusters no pair; Wallace proportion undefined");
  }
  const double wallace = pc.sum_cells_c2 / pc.sum_a_c2;
  const double chance = pc.sum_b_c2 / pc.total_pairs;
  if (chance == 1.0) {
    throw std::domain_error("reference co-clusters every pair; chance correction undefined");
  }
  return (wallace - chance) / (1.0 - chance);
}

Partition community_cores(const BipartiteNetwork& bn, Side side, double alpha,
                          CorrectionMethod method, std::uint64_t seed,
                          int threads) {
  const ValidatedNetwork vn = validate_one_tail(bn, side, alpha, method, threads);
  if (vn.edges.empty()) return Partition(bn.set_size(side));  // empty coverage
  return louvain(vn, seed);
}

void save_partition(const Partition& part, const NodeIndex& index,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (std::size_t v = 0; v < part.universe(); ++v) {
    const auto node = static_cast<NodeId>(v);
    if (!part.covers(node)) continue;
    out << index.label(node) << '\t' << part.at(node) << '\n';
  }
}

LabeledPartition read_partition_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  LabeledPartition lp;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": expected node<TAB>community");
    }
    try {
      lp.rows.emplace_back(line.substr(0, tab),
                           std::stoll(line.substr(tab + 1)));
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) +
                       ": cannot parse community id");
    }
  }
  return lp;
}

std::pair<Partition, Partition> align_partitions(const LabeledPartition& a,
                                                 const LabeledPartition& b) {
  NodeIndex universe;
  for (const auto& [label, c] : a.rows) universe.intern(label);
  for (const auto& [label, c] : b.rows) universe.intern(label);

  auto build = [&](const LabeledPartition& lp) {
    Partition p(universe.size());
    std::unordered_map<std::int64_t, std::int32_t> remap;
    std::int32_t next = 0;
    for (const auto& [label, c] : lp.rows) {
      auto [it, inserted] = remap.emplace(c, next);
      if (inserted) ++next;
      p.set(*universe.find(label), it->second);
    }
    return p;
  };
  return {build(a), build(b)};
}

}  // namespace svnkit
