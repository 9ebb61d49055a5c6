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

enum class TailsMode : std::uint8_t { one, two };

// Family accounting for the two-tail test. `tests` counts each tail of each
// pair as its own hypothesis (N_t = n(n-1)); `pairs` runs one two-sided test
// per pair with p = min(1, 2 min(p_over, p_under)) and N_t = n(n-1)/2.
enum class FamilyMode : std::uint8_t { tests, pairs };

struct ValidatedEdge {
  NodeId i;  // i < j
  NodeId j;
  std::int64_t n_ij;
  Tail tail;
  double p_value;
};

struct ValidatedNetwork {
  Side side = Side::A;
  TailsMode tails = TailsMode::one;
  FamilyMode family = FamilyMode::tests;
  CorrectionMethod method = CorrectionMethod::fdr;
  double alpha = 0.01;
  std::int64_t n_tests = 0;
  std::size_t side_size = 0;            // partition universe for this side
  std::size_t excluded_zero_degree = 0; // nodes left out of the two-tail family
  std::vector<ValidatedEdge> edges;     // sorted by (i, j, tail)
};

// Over-expression validation of the projected network: one upper-tail test
// per projected link (pairs with at least one common neighbor), family size
// equal to the number of projected links.
ValidatedNetwork validate_one_tail(const BipartiteNetwork& bn, Side side,
                                   double alpha, CorrectionMethod method,
                                   int threads = 0);

// Over- and under-expression validation over every pair of the chosen side,
// including pairs that never co-occur. Zero-degree nodes are excluded from
// the family (their tests are degenerate); the exclusion count is reported.
// Pair enumeration streams in chunks, so workers hold O(side) state.
ValidatedNetwork validate_two_tail(const BipartiteNetwork& bn, Side side,
                                   double alpha, CorrectionMethod method,
                                   FamilyMode family = FamilyMode::tests,
                                   int threads = 0);

void save_validated(const ValidatedNetwork& vn, const BipartiteNetwork& bn,
                    const std::filesystem::path& path);

}  // namespace svnkit
