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

#include "oracles.hpp"
#include "svnkit/benchmark.hpp"
#include "svnkit/community.hpp"
#include "svnkit/rng.hpp"

using namespace svnkit;

namespace {

std::vector<GraphEdge> two_triangles() {
  return {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0},
          {3, 4, 1.0}, {4, 5, 1.0}, {3, 5, 1.0}};
}

Partition from_labels(const std::vector<int>& labels) {
  Partition p(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] >= 0) p.set(static_cast<NodeId>(v), labels[v]);
  }
  return p;
}

Partition random_partition(Rng& rng, std::size_t n, int max_comms,
                           double coverage = 1.0) {
  Partition p(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (rng.next_double() < coverage) {
      p.set(static_cast<NodeId>(v),
            static_cast<std::int32_t>(rng.next_below(max_comms)));
    }
  }
  return p;
}

}  // namespace

TEST_CASE("modularity fixed points") {
  const auto edges = two_triangles();

  // everything in one community
  CHECK(modularity(edges, from_labels({0, 0, 0, 0, 0, 0})) ==
        doctest::Approx(0.0).epsilon(1e-14));

  // all singletons: strictly negative
  CHECK(modularity(edges, from_labels({0, 1, 2, 3, 4, 5})) < 0.0);

  // one community per triangle
  const double q2 = modularity(edges, from_labels({0, 0, 0, 1, 1, 1}));
  CHECK(q2 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(q2 == doctest::Approx(oracles::modularity_direct(edges, {0, 0, 0, 1, 1, 1}))
                  .epsilon(1e-14));

  CHECK_THROWS_AS((void)modularity(edges, from_labels({0, 0, 0, 1, 1, -1})),
                  std::invalid_argument);
}

TEST_CASE("louvain separates two triangles, matching exhaustive search") {
  const auto edges = two_triangles();

  // exhaustive oracle: the 2-community split maximizes modularity
  double best_q = -2.0;
  std::vector<int> best;
  for (const auto& labels : oracles::all_set_partitions(6)) {
    const double q = oracles::modularity_direct(edges, labels);
    if (q > best_q) {
      best_q = q;
      best = labels;
    }
  }
  CHECK(best_q == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(best == std::vector<int>{0, 0, 0, 1, 1, 1});

  const Partition part = louvain(6, edges, 1);
  CHECK(part.community_count() == 2);
  CHECK(part.at(0) == part.at(1));
  CHECK(part.at(1) == part.at(2));
  CHECK(part.at(3) == part.at(4));
  CHECK(part.at(4) == part.at(5));
  CHECK(part.at(0) != part.at(3));
  CHECK(modularity(edges, part) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("complete graph stays one community") {
  std::vector<GraphEdge> edges;
  for (NodeId u = 0; u < 5; ++u) {
    for (NodeId v = u + 1; v < 5; ++v) edges.push_back({u, v, 1.0});
  }
  const Partition part = louvain(5, edges, 3);
  CHECK(part.community_count() == 1);
}

TEST_CASE("louvain never loses to the singleton start") {
  Rng rng(79);
  for (int it = 0; it < 15; ++it) {
    std::vector<GraphEdge> edges;
    const std::size_t n = 8 + rng.next_below(20);
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (rng.bernoulli(0.2)) edges.push_back({u, v, 1.0 + rng.next_double()});
      }
    }
    if (edges.empty()) continue;
    const Partition part = louvain(n, edges, it);

    Partition singletons(n);
    for (const auto& e : edges) {
      singletons.set(e.u, static_cast<std::int32_t>(e.u));
      singletons.set(e.v, static_cast<std::int32_t>(e.v));
    }
    singletons.compact();
    CHECK(modularity(edges, part) >= modularity(edges, singletons) - 1e-12);
  }
}

TEST_CASE("louvain is deterministic per seed") {
  Rng rng(83);
  std::vector<GraphEdge> edges;
  for (NodeId u = 0; u < 30; ++u) {
    for (NodeId v = u + 1; v < 30; ++v) {
      if (rng.bernoulli(0.15)) edges.push_back({u, v, 1.0});
    }
  }
  const Partition a = louvain(30, edges, 12345);
  const Partition b = louvain(30, edges, 12345);
  for (NodeId v = 0; v < 30; ++v) CHECK(a.at(v) == b.at(v));
}

TEST_CASE("louvain errors on an empty edge set") {
  CHECK_THROWS_AS((void)louvain(4, std::vector<GraphEdge>{}, 1),
                  std::invalid_argument);
}

TEST_CASE("adjusted rand basics") {
  const Partition p = from_labels({0, 0, 1, 1, 2, 2});
  CHECK(adjusted_rand(p, p) == doctest::Approx(1.0).epsilon(1e-14));

  const Partition singles = from_labels({0, 1, 2, 3, 4, 5});
  const Partition lump = from_labels({0, 0, 0, 0, 0, 0});
  CHECK(adjusted_rand(singles, lump) == doctest::Approx(0.0).epsilon(1e-14));

  CHECK_THROWS_AS((void)adjusted_rand(from_labels({0, -1, -1, -1}),
                                      from_labels({0, 1, 2, 3})),
                  std::invalid_argument);
}

TEST_CASE("adjusted rand matches the pair-enumeration oracle") {
  Rng rng(89);
  for (int it = 0; it < 100; ++it) {
    const std::size_t n = 5 + rng.next_below(26);
    const Partition a = random_partition(rng, n, 2 + rng.next_below(5));
    const Partition b = random_partition(rng, n, 2 + rng.next_below(5));
    const auto [defined, expect] = oracles::adjusted_rand_oracle(a, b);
    const double got = adjusted_rand(a, b);
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    (void)defined;
  }
}

TEST_CASE("adjusted wallace basics") {
  const Partition ref = from_labels({0, 0, 0, 1, 1, 1});
  CHECK(adjusted_wallace(ref, ref) == doctest::Approx(1.0).epsilon(1e-14));

  // strict refinement: every candidate community inside one reference block
  const Partition refinement = from_labels({0, 0, 1, 2, 2, 3});
  CHECK(adjusted_wallace(refinement, ref) == doctest::Approx(1.0).epsilon(1e-14));

  // undefined cases are signaled, not defaulted
  const Partition singles = from_labels({0, 1, 2, 3, 4, 5});
  CHECK_THROWS_AS((void)adjusted_wallace(singles, ref), std::domain_error);
  const Partition lump = from_labels({0, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS((void)adjusted_wallace(ref, lump), std::domain_error);
}

TEST_CASE("adjusted wallace is asymmetric") {
  const Partition ref = from_labels({0, 0, 0, 1, 1, 1});
  const Partition refinement = from_labels({0, 0, 1, 2, 2, 3});
  const double forward = adjusted_wallace(refinement, ref);
  const double backward = adjusted_wallace(ref, refinement);
  CHECK(forward == doctest::Approx(1.0));
  CHECK(backward < forward);
}

TEST_CASE("adjusted wallace matches the pair-enumeration oracle") {
  Rng rng(97);
  int checked = 0;
  for (int it = 0; it < 150; ++it) {
    const std::size_t n = 5 + rng.next_below(26);
    const Partition a = random_partition(rng, n, 2 + rng.next_below(5));
    const Partition b = random_partition(rng, n, 2 + rng.next_below(4));
    const auto [defined, expect] = oracles::adjusted_wallace_oracle(a, b);
    if (!defined) {
      CHECK_THROWS_AS((void)adjusted_wallace(a, b), std::domain_error);
      continue;
    }
    CHECK(adjusted_wallace(a, b) == doctest::Approx(expect).epsilon(1e-12));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("metrics ignore community relabeling and use coverage overlap") {
  Rng rng(101);
  const std::size_t n = 24;
  const Partition a = random_partition(rng, n, 4, 0.8);
  const Partition b = random_partition(rng, n, 3, 0.8);

  // relabel: community c -> 7 - c
  Partition a2(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (a.covers(static_cast<NodeId>(v))) {
      a2.set(static_cast<NodeId>(v), 7 - a.at(static_cast<NodeId>(v)));
    }
  }
  CHECK(adjusted_rand(a, b) == doctest::Approx(adjusted_rand(a2, b)).epsilon(1e-14));
  CHECK(adjusted_rand(a, b) == doctest::Approx(adjusted_rand(b, a)).epsilon(1e-14));
}

TEST_CASE("zero-noise planted benchmark is recovered exactly") {
  const BenchmarkSpec spec{4, 8, 12, 1.0, 0.0, 5};
  const PlantedBenchmark pb = generate_benchmark(spec);
  const ProjectedNetwork pn = project(pb.network, Side::A);
  const Partition found = louvain(pn, 77);
  CHECK(adjusted_rand(found, pb.planted) == doctest::Approx(1.0).epsilon(1e-14));

  const Partition cores = community_cores(pb.network, Side::A, 0.01,
                                          CorrectionMethod::fdr, 77);
  CHECK(cores.coverage_size() > 0);
  CHECK(adjusted_wallace(cores, pb.planted) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cores of a structureless network are near-empty under bonferroni") {
  int nonempty = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const BenchmarkSpec spec{2, 15, 30, 0.2, 0.2, seed};
    const PlantedBenchmark pb = generate_benchmark(spec);
    const Partition cores = community_cores(pb.network, Side::A, 0.05,
                                            CorrectionMethod::bonferroni, 7);
    if (cores.coverage_size() > 0) ++nonempty;
  }
  CHECK(nonempty <= 3);
}

TEST_CASE("bonferroni cores coverage is inside fdr cores coverage") {
  const BenchmarkSpec spec{3, 12, 24, 0.5, 0.05, 11};
  const PlantedBenchmark pb = generate_benchmark(spec);
  const Partition bonf = community_cores(pb.network, Side::A, 0.05,
                                         CorrectionMethod::bonferroni, 3);
  const Partition fdr_cores = community_cores(pb.network, Side::A, 0.05,
                                              CorrectionMethod::fdr, 3);
  for (std::size_t v = 0; v < bonf.universe(); ++v) {
    if (bonf.covers(static_cast<NodeId>(v))) {
      CHECK(fdr_cores.covers(static_cast<NodeId>(v)));
    }
  }
}

TEST_CASE("partition file round-trip and alignment") {
  NodeIndex idx;
  idx.intern("n0");
  idx.intern("n1");
  idx.intern("n2");
  Partition p(3);
  p.set(0, 0);
  p.set(1, 0);
  p.set(2, 1);
  const auto path = std::filesystem::temp_directory_path() / "part_round.tsv";
  save_partition(p, idx, path);

  const LabeledPartition lp = read_partition_file(path);
  REQUIRE(lp.rows.size() == 3);
  const auto [a, b] = align_partitions(lp, lp);
  CHECK(adjusted_rand(a, b) == doctest::Approx(1.0));
  CHECK(adjusted_wallace(a, b) == doctest::Approx(1.0));
}
