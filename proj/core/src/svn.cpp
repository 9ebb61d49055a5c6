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

#include "svnkit/svn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "svnkit/parallel.hpp"

namespace svnkit {

namespace {

std::uint64_t pack_pair(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
}

void sort_edges(std::vector<ValidatedEdge>& edges) {
  std::sort(edges.begin(), edges.end(),
            [](const ValidatedEdge& a, const ValidatedEdge& b) {
              return std::tie(a.i, a.j, a.tail) < std::tie(b.i, b.j, b.tail);
            });
}

// Maps a linear index k in [0, n(n-1)/2) to the pair (i, j), i < j.
std::pair<std::size_t, std::size_t> unrank_pair(std::size_t k, std::size_t n) {
  std::size_t i = static_cast<std::size_t>(
      (2.0 * static_cast<double>(n) - 1.0 -
       std::sqrt((2.0 * static_cast<double>(n) - 1.0) *
                     (2.0 * static_cast<double>(n) - 1.0) -
                 8.0 * static_cast<double>(k))) /
      2.0);
  auto row_start = [n](std::size_t r) { return r * n - r * (r + 1) / 2; };
  while (i > 0 && row_start(i) > k) --i;
  while (row_start(i + 1) <= k) ++i;
  const std::size_t j = i + 1 + (k - row_start(i));
  return {i, j};
}

}  // namespace

ValidatedNetwork validate_one_tail(const BipartiteNetwork& bn, Side side,
                                   double alpha, CorrectionMethod method,
                                   int threads) {
  check_alpha(alpha);

  ValidatedNetwork vn;
  vn.side = side;
  vn.tails = TailsMode::one;
  vn.method = method;
  vn.alpha = alpha;
  vn.side_size = bn.set_size(side);

  const ProjectedNetwork pn = project(bn, side);
  vn.n_tests = static_cast<std::int64_t>(pn.edges.size());
  if (pn.edges.empty()) return vn;

  const auto population = static_cast<std::int64_t>(bn.set_size(opposite(side)));
  TestBattery battery;
  battery.alpha = alpha;
  battery.n_tests = vn.n_tests;
  battery.records.resize(pn.edges.size());

  parallel_for(0, pn.edges.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const auto& e = pn.edges[k];
      HypergeomParams prm{population, bn.degree(side, e.i), bn.degree(side, e.j)};
      PValueRecord rec;
      rec.subject = pack_pair(e.i, e.j);
      rec.tail = Tail::over;
      rec.statistic = static_cast<double>(e.cooccurrence);
      rec.p = pvalue_over(prm, e.cooccurrence);
      battery.records[k] = rec;
    }
  });

  const CorrectionResult result = apply_correction(battery, method);
  vn.edges.reserve(result.rejected.size());
  for (std::size_t idx : result.rejected) {
    const auto& e = pn.edges[idx];
    vn.edges.push_back({e.i, e.j, e.cooccurrence, Tail::over,
                        battery.records[idx].p});
  }
  sort_edges(vn.edges);
  return vn;
}

ValidatedNetwork validate_two_tail(const BipartiteNetwork& bn, Side side,
                                   double alpha, CorrectionMethod method,
                                   FamilyMode family, int threads) {
  check_alpha(alpha);
  if (bn.set_size(side) < 2) {
    throw std::invalid_argument("two-tail validation needs at least 2 nodes on the tested side");
  }

  ValidatedNetwork vn;
  vn.side = side;
  vn.tails = TailsMode::two;
  vn.family = family;
  vn.method = method;
  vn.alpha = alpha;
  vn.side_size = bn.set_size(side);

  // Zero-degree nodes never co-occur and their tests are degenerate
  // (p_under = 1 at degree 0); they are excluded from the family.
  std::vector<NodeId> tested;
  for (std::size_t v = 0; v < bn.set_size(side); ++v) {
    if (bn.degree(side, static_cast<NodeId>(v)) > 0) {
      tested.push_back(static_cast<NodeId>(v));
    }
  }
  vn.excluded_zero_degree = bn.set_size(side) - tested.size();

  const std::size_t n = tested.size();
  const std::size_t n_pairs = n >= 2 ? n * (n - 1) / 2 : 0;
  vn.n_tests = family == FamilyMode::tests
                   ? static_cast<std::int64_t>(2 * n_pairs)
                   : static_cast<std::int64_t>(n_pairs);
  if (n_pairs == 0) return vn;

  // Non-zero co-occurrences from the projection; absent pairs count 0.
  std::unordered_map<std::uint64_t, std::int64_t> cooccurrence;
  {
    const ProjectedNetwork pn = project(bn, side);
    cooccurrence.reserve(pn.edges.size() * 2);
    for (const auto& e : pn.edges) cooccurrence[pack_pair(e.i, e.j)] = e.cooccurrence;
  }

  const auto population = static_cast<std::int64_t>(bn.set_size(opposite(side)));

  // Workers fill battery slots for their pair-index chunk directly; beyond
  // the battery (which the rank procedure needs in full) per-worker state is
  // constant.
  TestBattery battery;
  battery.alpha = alpha;
  battery.n_tests = vn.n_tests;
  battery.records.resize(family == FamilyMode::tests ? 2 * n_pairs : n_pairs);

  parallel_for(0, n_pairs, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const auto [ri, rj] = unrank_pair(k, n);
      const NodeId i = tested[ri];
      const NodeId j = tested[rj];
      auto it = cooccurrence.find(pack_pair(i, j));
      const std::int64_t n_ij = it == cooccurrence.end() ? 0 : it->second;
      HypergeomParams prm{population, bn.degree(side, i), bn.degree(side, j)};
      const HypergeomTails tails = hypergeom_tails(prm, n_ij);

      const std::uint64_t subject = pack_pair(i, j);
      const auto stat = static_cast<double>(n_ij);
      if (family == FamilyMode::tests) {
        battery.records[2 * k] = {subject, Tail::over, tails.over, stat};
        battery.records[2 * k + 1] = {subject, Tail::under, tails.under, stat};
      } else {
        const double two_sided =
            std::min(1.0, 2.0 * std::min(tails.over, tails.under));
        const Tail tail = tails.over <= tails.under ? Tail::over : Tail::under;
        battery.records[k] = {subject, tail, two_sided, stat};
      }
    }
  });

  const CorrectionResult result = apply_correction(battery, method);
  for (std::size_t idx : result.rejected) {
    const auto& rec = battery.records[idx];
    const auto i = static_cast<NodeId>(rec.subject >> 32);
    const auto j = static_cast<NodeId>(rec.subject & 0xffffffffu);
    vn.edges.push_back({i, j, static_cast<std::int64_t>(rec.statistic),
                        rec.tail, rec.p});
  }
  sort_edges(vn.edges);
  return vn;
}

void save_validated(const ValidatedNetwork& vn, const BipartiteNetwork& bn,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  const NodeIndex& idx = bn.index(vn.side);
  for (const auto& e : vn.edges) {
    out << idx.label(e.i) << '\t' << idx.label(e.j) << '\t' << e.n_ij << '\t'
        << tail_name(e.tail) << '\t' << format_double(e.p_value) << '\n';
  }
}

}  // namespace svnkit
