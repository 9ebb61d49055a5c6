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
//
// Independent oracles used by the unit and acceptance suites. Everything in
// here recomputes expected values by brute force (enumeration, quadrature,
// quadratic scans, exact rational arithmetic) without touching the library's
// own computation paths.

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "svnkit/community.hpp"
#include "svnkit/corrections.hpp"
#include "svnkit/graph.hpp"

namespace oracles {

// Exact binomial coefficients by Pascal recurrence. n <= 62.
std::uint64_t choose_exact(int n, int k);

// Hypergeometric by exhaustive enumeration of neighbor sets: the first node
// is attached to a fixed set of n_i opposite-side nodes and every possible
// n_j-subset of the population is counted by overlap size. population <= 20.
struct HypergeomEnum {
  std::int64_t population;
  std::int64_t n_i;
  std::int64_t n_j;
  std::vector<std::int64_t> counts;  // counts[x] = #subsets with overlap x
  std::int64_t total;                // C(population, n_j)

  double pmf(std::int64_t x) const;
  double upper_tail(std::int64_t n) const;  // P(X >= n)
  double lower_tail(std::int64_t n) const;  // P(X <= n)
};
HypergeomEnum enumerate_hypergeom(std::int64_t population, std::int64_t n_i,
                                  std::int64_t n_j);

// Gauss-Legendre quadrature of the disparity null density
// (k-1)(1-t)^(k-2) over [0, x]. 128 nodes: exact for k <= 200.
double disparity_pvalue_by_quadrature(std::int64_t k, double x);

// Quadratic rank-scan rule: selection-sorts a copy, then checks every rank
// independently. Returns the indices rejected by the rank procedure.
std::vector<std::size_t> fdr_rank_scan(const std::vector<double>& pvalues,
                                       std::int64_t n_tests, double alpha);

// Pair-enumeration partition metrics in exact rational arithmetic.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  void reduce();
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct PairEnumeration {
  std::int64_t n11 = 0;  // co-clustered in both
  std::int64_t n10 = 0;  // co-clustered in the first only
  std::int64_t n01 = 0;
  std::int64_t n00 = 0;
  std::int64_t overlap = 0;
};
PairEnumeration enumerate_pairs(const svnkit::Partition& a,
                                const svnkit::Partition& b);

// Hubert-Arabie adjusted Rand from the enumerated pair counts.
// Returns {defined, value}.
std::pair<bool, double> adjusted_rand_oracle(const svnkit::Partition& a,
                                             const svnkit::Partition& b);

// Chance-corrected Wallace proportion; undefined when the candidate
// co-clusters no pair or the reference co-clusters all of them.
std::pair<bool, double> adjusted_wallace_oracle(
    const svnkit::Partition& candidate, const svnkit::Partition& reference);

// Co-occurrence counts by pairwise neighbor-set intersection.
std::vector<svnkit::ProjectedEdge> project_by_intersection(
    const svnkit::BipartiteNetwork& bn, svnkit::Side side);

// Newman-Girvan modularity evaluated directly from the definition.
double modularity_direct(const std::vector<svnkit::GraphEdge>& edges,
                         const std::vector<int>& labels);

// All set partitions of {0..n-1} as restricted-growth strings. n <= 8.
std::vector<std::vector<int>> all_set_partitions(int n);

}  // namespace oracles
