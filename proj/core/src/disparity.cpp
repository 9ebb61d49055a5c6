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

#include "svnkit/disparity.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include "svnkit/parallel.hpp"

namespace svnkit {

Backbone disparity_backbone(const WeightedNetwork& wn, double alpha,
                            CorrectionMethod correction,
                            DegreeOnePolicy degree_one, int threads) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }

  Backbone bb;
  bb.alpha = alpha;
  bb.correction = correction;
  bb.degree_one = degree_one;

  const std::size_t n = wn.node_count();
  // Tested half-edges in deterministic order; per-node work is independent.
  std::vector<std::vector<PValueRecord>> per_node(n);
  std::vector<std::vector<BackboneEdge>> kept_by_policy(n);
  parallel_for(0, n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t u = lo; u < hi; ++u) {
      const auto node = static_cast<NodeId>(u);
      const std::int64_t k = wn.out_degree(node);
      if (k == 0) continue;
      if (k == 1) {
        if (degree_one == DegreeOnePolicy::keep) {
          const auto& e = wn.out_edges(node)[0];
          // Closed-form tail at degree 1 is identically 1; retention is by
          // policy, outside the test battery.
          kept_by_policy[u].push_back({e.source, e.target, e.weight, 1.0});
        }
        continue;
      }
      const double strength = wn.out_strength(node);
      for (const auto& e : wn.out_edges(node)) {
        const double x = e.weight / strength;
        PValueRecord rec;
        rec.subject = (static_cast<std::uint64_t>(e.source) << 32) | e.target;
        rec.tail = Tail::disparity;
        rec.statistic = x;
        rec.p = pvalue_disparity(k, x);
        per_node[u].push_back(rec);
      }
    }
  });

  TestBattery battery;
  battery.alpha = alpha;
  std::vector<const WeightedEdge*> tested_edges;
  for (std::size_t u = 0; u < n; ++u) {
    const auto node = static_cast<NodeId>(u);
    if (wn.out_degree(node) < 2) continue;
    std::size_t slot = 0;
    for (const auto& e : wn.out_edges(node)) {
      battery.records.push_back(per_node[u][slot++]);
      tested_edges.push_back(&e);
    }
  }
  battery.n_tests = static_cast<std::int64_t>(battery.records.size());
  bb.n_tests = battery.n_tests;

  if (!battery.records.empty()) {
    const CorrectionResult result = apply_correction(battery, correction);
    for (std::size_t idx : result.rejected) {
      const auto* e = tested_edges[idx];
      bb.edges.push_back({e->source, e->target, e->weight, battery.records[idx].p});
    }
  }
  for (auto& kept : kept_by_policy) {
    bb.edges.insert(bb.edges.end(), kept.begin(), kept.end());
  }
  std::sort(bb.edges.begin(), bb.edges.end(),
            [](const BackboneEdge& a, const BackboneEdge& b) {
              return std::tie(a.source, a.target) < std::tie(b.source, b.target);
            });
  return bb;
}

std::vector<BackboneEdge> symmetrize(const Backbone& backbone, SymmetrizeMode mode) {
  if (mode == SymmetrizeMode::none) return backbone.edges;

  std::map<std::pair<NodeId, NodeId>, std::pair<const BackboneEdge*, const BackboneEdge*>> pairs;
  for (const auto& e : backbone.edges) {
    const auto key = std::minmax(e.source, e.target);
    auto& slot = pairs[{key.first, key.second}];
    if (e.source < e.target) slot.first = &e; else slot.second = &e;
  }

  std::vector<BackboneEdge> out;
  for (const auto& [key, slot] : pairs) {
    const auto [fwd, rev] = slot;
    if (mode == SymmetrizeMode::set_intersection && (!fwd || !rev)) continue;
    const BackboneEdge* any = fwd ? fwd : rev;
    double p = any->p_value;
    if (fwd && rev) p = std::min(fwd->p_value, rev->p_value);
    out.push_back({key.first, key.second, any->weight, p});
  }
  return out;
}

void save_backbone(const Backbone& backbone, const NodeIndex& nodes,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (const auto& e : backbone.edges) {
    out << nodes.label(e.source) << '\t' << nodes.label(e.target) << '\t'
        << format_double(e.weight) << '\t' << format_double(e.p_value) << '\n';
  }
}

}  // namespace svnkit
