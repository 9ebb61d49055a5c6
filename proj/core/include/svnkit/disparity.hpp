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
#include <vector>

#include "svnkit/corrections.hpp"
#include "svnkit/graph.hpp"

namespace svnkit {

enum class DegreeOnePolicy : std::uint8_t { drop, keep };

struct BackboneEdge {
  NodeId source;
  NodeId target;
  double weight;
  double p_value;  // from the source's perspective
};

// The extracted backbone is intrinsically directed: each link is tested once
// per endpoint, and either endpoint can retain its orientation.
struct Backbone {
  std::vector<BackboneEdge> edges;  // sorted by (source, target)
  double alpha = 0.05;
  CorrectionMethod correction = CorrectionMethod::fdr;
  DegreeOnePolicy degree_one = DegreeOnePolicy::drop;
  std::int64_t n_tests = 0;  // (node, incident edge) tests actually performed
};

// Runs the normalized-weight null per (node, incident edge) pair and keeps
// the directed edges whose test rejects under the requested correction.
// Degree-1 nodes have no defined null; `keep` retains their single edge
// without a test, `drop` leaves retention to the other endpoint.
Backbone disparity_backbone(const WeightedNetwork& wn, double alpha,
                            CorrectionMethod correction,
                            DegreeOnePolicy degree_one = DegreeOnePolicy::drop,
                            int threads = 0);

enum class SymmetrizeMode : std::uint8_t { none, set_union, set_intersection };

// Optional post-step collapsing the directed backbone to undirected edges:
// union keeps a link retained from either endpoint, intersection only those
// retained from both. The reported p-value is the smaller of the two sides.
std::vector<BackboneEdge> symmetrize(const Backbone& backbone, SymmetrizeMode mode);

void save_backbone(const Backbone& backbone, const NodeIndex& nodes,
                   const std::filesystem::path& path);

}  // namespace svnkit
