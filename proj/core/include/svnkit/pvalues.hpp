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

namespace svnkit {

// Natural log of n!. Backed by a grow-only cached table for small n and a
// Stirling-series log-gamma evaluation above the cache cap. Concurrent
// callers may trigger table growth; extension is race-free and grow-only.
double log_factorial(std::int64_t n);

// ln C(n, k). Returns -infinity for k < 0 or k > n.
double log_choose(std::int64_t n, std::int64_t k);

// Parameters of the random-overlap null for a pair of nodes that attach to
// `population` opposite-side nodes with degrees `successes` and `draws`.
struct HypergeomParams {
  std::int64_t population;  // size of the opposite set
  std::int64_t successes;   // degree of the first node
  std::int64_t draws;       // degree of the second node

  std::int64_t support_min() const {
    std::int64_t lo = successes + draws - population;
    return lo > 0 ? lo : 0;
  }
  std::int64_t support_max() const {
    return successes < draws ? successes : draws;
  }
  void validate() const;  // throws std::invalid_argument
};

enum class Tail : std::uint8_t { over, under, disparity };

const char* tail_name(Tail t);

// One hypothesis test, as fed to the corrections module. `subject` packs the
// tested edge (producer-defined, typically (i << 32) | j).
struct PValueRecord {
  std::uint64_t subject = 0;
  Tail tail = Tail::over;
  double p = 1.0;
  double statistic = 0.0;
};

// Probability of exactly x common neighbors under the random-overlap null.
// Zero outside the support. Exact up to rounding; stable for populations up
// to 1e7 with degrees up to 1e5.
double hypergeom_pmf(const HypergeomParams& params, std::int64_t x);

// Upper tail P(X >= n_ij): over-expression p-value. The tail is accumulated
// from its own terms (never as 1 minus the opposite tail), so extreme
// p-values keep full relative accuracy.
double pvalue_over(const HypergeomParams& params, std::int64_t n_ij);

// Lower tail P(X <= n_ij): under-expression p-value.
double pvalue_under(const HypergeomParams& params, std::int64_t n_ij);

// Both tails plus the point mass from a single support scan.
struct HypergeomTails {
  double over;
  double under;
  double pmf;
};
HypergeomTails hypergeom_tails(const HypergeomParams& params, std::int64_t n_ij);

// Null tail of the uniform strength-splitting model: probability that a
// normalized link weight of a degree-k node is x or larger, (1 - x)^(k - 1).
// Requires k >= 2; degree-1 handling is the caller's policy.
double pvalue_disparity(std::int64_t k, double x);

// P(successes >= k) under Binomial(n, p).
double binom_tail_at_least(std::int64_t n, std::int64_t k, double p);

// Family-wise probability of at least one rejection among n independent
// tests with per-test probability p_single: 1 - (1 - p_single)^n.
double fwer_at_least_one(double p_single, std::int64_t n_tests);

}  // namespace svnkit
