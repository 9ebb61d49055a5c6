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

#include <doctest.h>

#include <cmath>
#include <set>
#include <tuple>

#include "oracles.hpp"
#include "svnkit/benchmark.hpp"
#include "svnkit/rng.hpp"
#include "svnkit/svn.hpp"

using namespace svnkit;

namespace {

BipartiteNetwork from_links(int n_a, int n_b,
                            const std::vector<std::pair<int, int>>& links) {
  NodeIndex set_a, set_b;
  for (int i = 0; i < n_a; ++i) set_a.intern("a" + std::to_string(i));
  for (int j = 0; j < n_b; ++j) set_b.intern("b" + std::to_string(j));
  std::vector<std::pair<NodeId, NodeId>> out;
  for (const auto& [a, b] : links) {
    out.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  }
  return BipartiteNetwork::build(std::move(set_a), std::move(set_b),
                                 std::move(out), DuplicateLinkPolicy::strict);
}

BipartiteNetwork random_bipartite(Rng& rng, int n_a, int n_b, double density) {
  std::vector<std::pair<int, int>> links;
  for (int a = 0; a < n_a; ++a) {
    for (int b = 0; b < n_b; ++b) {
      if (rng.bernoulli(density)) links.emplace_back(a, b);
    }
  }
  return from_links(n_a, n_b, links);
}

using EdgeKey = std::tuple<NodeId, NodeId, Tail>;

std::set<EdgeKey> edge_set(const ValidatedNetwork& vn) {
  std::set<EdgeKey> s;
  for (const auto& e : vn.edges) s.insert({e.i, e.j, e.tail});
  return s;
}

}  // namespace

TEST_CASE("forced overlap is never significant") {
  // two A-nodes linked to every B-node: overlap is certain under the null
  std::vector<std::pair<int, int>> links;
  for (int b = 0; b < 50; ++b) {
    links.emplace_back(0, b);
    links.emplace_back(1, b);
  }
  const BipartiteNetwork bn = from_links(2, 50, links);
  const ValidatedNetwork vn =
      validate_one_tail(bn, Side::A, 0.05, CorrectionMethod::fdr);
  CHECK(vn.n_tests == 1);
  CHECK(vn.edges.empty());

  HypergeomParams p{50, 50, 50};
  CHECK(pvalue_over(p, 50) == 1.0);
}

TEST_CASE("strong overlap in a large population validates") {
  // N_B=100, N_i=N_j=10, all ten neighbors shared
  std::vector<std::pair<int, int>> links;
  for (int b = 0; b < 10; ++b) {
    links.emplace_back(0, b);
    links.emplace_back(1, b);
  }
  for (int b = 10; b < 100; ++b) links.emplace_back(2, b);  // fills out set B
  const BipartiteNetwork bn = from_links(3, 100, links);

  const ValidatedNetwork vn =
      validate_one_tail(bn, Side::A, 0.01, CorrectionMethod::bonferroni);
  REQUIRE(vn.edges.size() == 1);
  CHECK(vn.edges[0].n_ij == 10);
  // exact tail: 1 / C(100, 10)
  const double expect = std::exp(-log_choose(100, 10));
  CHECK(vn.edges[0].p_value == doctest::Approx(expect).epsilon(1e-9));
  CHECK(expect == doctest::Approx(5.78e-14).epsilon(0.01));
}

TEST_CASE("one-tail p-values equal an exhaustive pmf-summation oracle") {
  Rng rng(53);
  const BipartiteNetwork bn = random_bipartite(rng, 8, 12, 0.35);
  const ProjectedNetwork pn = project(bn, Side::A);
  for (const auto& e : pn.edges) {
    const auto oracle = oracles::enumerate_hypergeom(
        12, bn.degree(Side::A, e.i), bn.degree(Side::A, e.j));
    HypergeomParams prm{12, bn.degree(Side::A, e.i), bn.degree(Side::A, e.j)};
    CHECK(pvalue_over(prm, e.cooccurrence) ==
          doctest::Approx(oracle.upper_tail(e.cooccurrence)).epsilon(1e-12));
  }
}

TEST_CASE("planted-block validation equals an independent reimplementation") {
  // oracle route: brute-force projection, enumeration p-values, rank-scan
  // rejection -- none of the library's computation paths
  const BenchmarkSpec spec{3, 5, 6, 0.9, 0.1, 79};  // N_B = 18 <= enum cap
  const BipartiteNetwork bn = generate_benchmark(spec).network;
  const double alpha = 0.1;

  const auto edges = oracles::project_by_intersection(bn, Side::A);
  std::vector<double> pvalues;
  for (const auto& e : edges) {
    const auto oracle = oracles::enumerate_hypergeom(
        18, bn.degree(Side::A, e.i), bn.degree(Side::A, e.j));
    pvalues.push_back(oracle.upper_tail(e.cooccurrence));
  }
  const auto rejected = oracles::fdr_rank_scan(
      pvalues, static_cast<std::int64_t>(pvalues.size()), alpha);
  std::set<std::pair<NodeId, NodeId>> expect;
  for (const std::size_t idx : rejected) {
    expect.insert({edges[idx].i, edges[idx].j});
  }

  const ValidatedNetwork vn =
      validate_one_tail(bn, Side::A, alpha, CorrectionMethod::fdr);
  std::set<std::pair<NodeId, NodeId>> got;
  for (const auto& e : vn.edges) got.insert({e.i, e.j});
  CHECK(got == expect);
  CHECK(!got.empty());
}

TEST_CASE("empty projection yields an empty result") {
  // every B-node has exactly one neighbor: no co-occurrence at all
  const BipartiteNetwork bn = from_links(3, 3, {{0, 0}, {1, 1}, {2, 2}});
  const ValidatedNetwork vn =
      validate_one_tail(bn, Side::A, 0.05, CorrectionMethod::fdr);
  CHECK(vn.n_tests == 0);
  CHECK(vn.edges.empty());
}

TEST_CASE("two-tail validation flags avoided pairs") {
  // two A-nodes splitting set B in half: zero overlap where 25 is expected
  std::vector<std::pair<int, int>> links;
  for (int b = 0; b < 50; ++b) links.emplace_back(0, b);
  for (int b = 50; b < 100; ++b) links.emplace_back(1, b);
  const BipartiteNetwork bn = from_links(2, 100, links);

  const ValidatedNetwork vn = validate_two_tail(
      bn, Side::A, 0.01, CorrectionMethod::bonferroni, FamilyMode::tests);
  CHECK(vn.n_tests == 2);  // one pair, both tails
  REQUIRE(vn.edges.size() == 1);
  CHECK(vn.edges[0].tail == Tail::under);
  CHECK(vn.edges[0].n_ij == 0);
  // under-tail at zero overlap is pmf(0) = C(50,50)... = 1/C(100,50)
  const double expect = std::exp(-log_choose(100, 50));
  CHECK(vn.edges[0].p_value == doctest::Approx(expect).epsilon(1e-9));
  CHECK(expect < 1e-29);
}

TEST_CASE("full-overlap pair is over-validated, never under-validated") {
  std::vector<std::pair<int, int>> links;
  for (int b = 0; b < 5; ++b) {
    links.emplace_back(0, b);
    links.emplace_back(1, b);
  }
  for (int b = 5; b < 200; ++b) links.emplace_back(2, b);
  const BipartiteNetwork bn = from_links(3, 200, links);

  const ValidatedNetwork vn = validate_two_tail(
      bn, Side::A, 0.01, CorrectionMethod::bonferroni, FamilyMode::tests);
  bool pair_over = false;
  bool pair_under = false;
  for (const auto& e : vn.edges) {
    if (e.i == 0 && e.j == 1) {
      if (e.tail == Tail::over) pair_over = true;
      if (e.tail == Tail::under) pair_under = true;
    }
  }
  CHECK(pair_over);
  CHECK(!pair_under);
  // the full CDF at the support maximum can never reject
  HypergeomParams prm{200, 5, 5};
  CHECK(pvalue_under(prm, 5) == 1.0);
}

TEST_CASE("no pair validates on both tails") {
  Rng rng(59);
  for (int it = 0; it < 10; ++it) {
    const BipartiteNetwork bn = random_bipartite(rng, 12, 20, 0.3);
    const ValidatedNetwork vn = validate_two_tail(
        bn, Side::A, 0.4, CorrectionMethod::fdr, FamilyMode::tests);
    std::set<std::pair<NodeId, NodeId>> over, under;
    for (const auto& e : vn.edges) {
      (e.tail == Tail::over ? over : under).insert({e.i, e.j});
    }
    for (const auto& pr : over) CHECK(!under.contains(pr));
  }
}

TEST_CASE("bonferroni-validated edges are a subset of fdr-validated edges") {
  Rng rng(61);
  for (int it = 0; it < 10; ++it) {
    const BipartiteNetwork bn = random_bipartite(rng, 15, 25, 0.3);
    for (const TailsMode tails : {TailsMode::one, TailsMode::two}) {
      const auto run = [&](CorrectionMethod m) {
        return tails == TailsMode::one
                   ? validate_one_tail(bn, Side::A, 0.2, m)
                   : validate_two_tail(bn, Side::A, 0.2, m, FamilyMode::tests);
      };
      const auto b = edge_set(run(CorrectionMethod::bonferroni));
      const auto f = edge_set(run(CorrectionMethod::fdr));
      CHECK(std::includes(f.begin(), f.end(), b.begin(), b.end()));
    }
  }
}

TEST_CASE("one-tail and two-tail families are not conflated") {
  const BenchmarkSpec spec{2, 10, 20, 0.8, 0.05, 71};
  const BipartiteNetwork bn = generate_benchmark(spec).network;

  const ValidatedNetwork one =
      validate_one_tail(bn, Side::A, 0.05, CorrectionMethod::bonferroni);
  const ValidatedNetwork two = validate_two_tail(
      bn, Side::A, 0.05, CorrectionMethod::bonferroni, FamilyMode::tests);

  // family sizes differ by construction
  CHECK(one.n_tests < two.n_tests);
  CHECK(two.n_tests == 2 * (20 * 19) / 2);

  // the two-tail over set is more conservative here, and differs
  std::set<std::pair<NodeId, NodeId>> over_one, over_two;
  for (const auto& e : one.edges) over_one.insert({e.i, e.j});
  for (const auto& e : two.edges) {
    if (e.tail == Tail::over) over_two.insert({e.i, e.j});
  }
  CHECK(std::includes(over_one.begin(), over_one.end(), over_two.begin(),
                      over_two.end()));
  CHECK(over_one.size() > over_two.size());
}

TEST_CASE("pairs family mode uses two-sided p-values") {
  Rng rng(67);
  const BipartiteNetwork bn = random_bipartite(rng, 10, 16, 0.35);
  const ValidatedNetwork vn = validate_two_tail(
      bn, Side::A, 0.3, CorrectionMethod::fdr, FamilyMode::pairs);
  CHECK(vn.n_tests == 10 * 9 / 2);
  for (const auto& e : vn.edges) {
    CHECK(e.p_value <= 1.0);
    CHECK(e.p_value >= 0.0);
  }
}

TEST_CASE("zero-degree nodes are excluded from the two-tail family") {
  // a2 has no links at all
  const BipartiteNetwork bn = from_links(3, 4, {{0, 0}, {0, 1}, {1, 1}, {1, 2}});
  const ValidatedNetwork vn = validate_two_tail(
      bn, Side::A, 0.05, CorrectionMethod::fdr, FamilyMode::tests);
  CHECK(vn.excluded_zero_degree == 1);
  CHECK(vn.n_tests == 2);  // single testable pair, two tails

  CHECK_THROWS_AS((void)validate_two_tail(from_links(1, 2, {{0, 0}}), Side::A,
                                          0.05, CorrectionMethod::fdr),
                  std::invalid_argument);
}

TEST_CASE("side B validation mirrors side A on the transposed network") {
  Rng rng(83);
  std::vector<std::pair<int, int>> links;
  for (int a = 0; a < 14; ++a) {
    for (int b = 0; b < 9; ++b) {
      if (rng.bernoulli(0.35)) links.emplace_back(a, b);
    }
  }
  const BipartiteNetwork bn = from_links(14, 9, links);
  std::vector<std::pair<int, int>> transposed;
  for (const auto& [a, b] : links) transposed.emplace_back(b, a);
  const BipartiteNetwork bt = from_links(9, 14, transposed);

  const ValidatedNetwork vb =
      validate_one_tail(bn, Side::B, 0.2, CorrectionMethod::fdr);
  const ValidatedNetwork va =
      validate_one_tail(bt, Side::A, 0.2, CorrectionMethod::fdr);
  CHECK(vb.n_tests == va.n_tests);
  REQUIRE(vb.edges.size() == va.edges.size());
  for (std::size_t k = 0; k < vb.edges.size(); ++k) {
    CHECK(vb.edges[k].i == va.edges[k].i);
    CHECK(vb.edges[k].j == va.edges[k].j);
    CHECK(vb.edges[k].n_ij == va.edges[k].n_ij);
    CHECK(vb.edges[k].p_value == va.edges[k].p_value);
  }
}

TEST_CASE("validation is deterministic and thread-count independent") {
  Rng rng(73);
  const BipartiteNetwork bn = random_bipartite(rng, 20, 30, 0.25);
  const ValidatedNetwork a =
      validate_two_tail(bn, Side::A, 0.1, CorrectionMethod::fdr, FamilyMode::tests, 1);
  const ValidatedNetwork b =
      validate_two_tail(bn, Side::A, 0.1, CorrectionMethod::fdr, FamilyMode::tests, 7);
  REQUIRE(a.edges.size() == b.edges.size());
  for (std::size_t k = 0; k < a.edges.size(); ++k) {
    CHECK(a.edges[k].i == b.edges[k].i);
    CHECK(a.edges[k].j == b.edges[k].j);
    CHECK(a.edges[k].tail == b.edges[k].tail);
    CHECK(a.edges[k].p_value == b.edges[k].p_value);
  }
}
