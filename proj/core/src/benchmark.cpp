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

#include "svnkit/benchmark.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "svnkit/parallel.hpp"
#include "svnkit/rng.hpp"

namespace svnkit {

namespace {

std::uint64_t pack_pair(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

void BenchmarkSpec::validate() const {
  if (n_blocks < 1 || a_nodes_per_block < 1 || b_nodes_per_block < 1) {
    throw std::invalid_argument("benchmark blocks must be non-empty");
  }
  if (intra_link_prob < 0.0 || intra_link_prob > 1.0 ||
      inter_link_prob < 0.0 || inter_link_prob > 1.0) {
    throw std::invalid_argument("link probabilities must lie in [0, 1]");
  }
}

PlantedBenchmark generate_benchmark(const BenchmarkSpec& spec) {
  spec.validate();
  const std::size_t n_a =
      static_cast<std::size_t>(spec.n_blocks) * spec.a_nodes_per_block;
  const std::size_t n_b =
      static_cast<std::size_t>(spec.n_blocks) * spec.b_nodes_per_block;

  NodeIndex set_a, set_b;
  for (std::size_t i = 0; i < n_a; ++i) set_a.intern("a" + std::to_string(i));
  for (std::size_t j = 0; j < n_b; ++j) set_b.intern("b" + std::to_string(j));

  Rng rng(spec.seed);
  std::vector<std::pair<NodeId, NodeId>> links;
  for (std::size_t i = 0; i < n_a; ++i) {
    const int block_a = static_cast<int>(i) / spec.a_nodes_per_block;
    for (std::size_t j = 0; j < n_b; ++j) {
      const int block_b = static_cast<int>(j) / spec.b_nodes_per_block;
      const double p =
          block_a == block_b ? spec.intra_link_prob : spec.inter_link_prob;
      if (rng.bernoulli(p)) {
        links.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
      }
    }
  }

  PlantedBenchmark out{
      BipartiteNetwork::build(std::move(set_a), std::move(set_b),
                              std::move(links),
                              DuplicateLinkPolicy::strict),
      Partition(n_a)};
  for (std::size_t i = 0; i < n_a; ++i) {
    out.planted.set(static_cast<NodeId>(i),
                    static_cast<int>(i) / spec.a_nodes_per_block);
  }
  return out;
}

BipartiteNetwork rewire(const BipartiteNetwork& bn, const RewirePlan& plan,
                        RewireStats* stats) {
  if (plan.p_r < 0.0 || plan.p_r > 1.0) {
    throw std::invalid_argument("p_r must lie in [0, 1]");
  }

  std::vector<std::pair<NodeId, NodeId>> links(bn.links().begin(),
                                               bn.links().end());
  std::unordered_set<std::uint64_t> present;
  present.reserve(links.size() * 2);
  for (const auto& [a, b] : links) present.insert(pack_pair(a, b));

  RewireStats st;
  st.swaps_requested = static_cast<std::int64_t>(
      std::llround(plan.p_r * static_cast<double>(links.size()) / 2.0));

  Rng rng(plan.seed);
  const std::int64_t budget = 200 * st.swaps_requested + 200;
  while (st.swaps_done < st.swaps_requested && st.attempts < budget) {
    ++st.attempts;
    const auto k1 = static_cast<std::size_t>(rng.next_below(links.size()));
    const auto k2 = static_cast<std::size_t>(rng.next_below(links.size()));
    if (k1 == k2) continue;
    const auto [a1, b1] = links[k1];
    const auto [a2, b2] = links[k2];

    if (plan.mode == SwapMode::degree_matched) {
      // swapped endpoints alternate between the B side and the A side
      const bool swap_b_side = st.swaps_done % 2 == 0;
      if (swap_b_side) {
        if (bn.degree(Side::B, b1) != bn.degree(Side::B, b2)) continue;
      } else {
        if (bn.degree(Side::A, a1) != bn.degree(Side::A, a2)) continue;
      }
    }

    const std::uint64_t n1 = pack_pair(a1, b2);
    const std::uint64_t n2 = pack_pair(a2, b1);
    if (present.contains(n1) || present.contains(n2)) continue;

    present.erase(pack_pair(a1, b1));
    present.erase(pack_pair(a2, b2));
    present.insert(n1);
    present.insert(n2);
    links[k1] = {a1, b2};
    links[k2] = {a2, b1};
    ++st.swaps_done;
  }
  st.budget_exhausted = st.swaps_done < st.swaps_requested;
  if (stats) *stats = st;

  NodeIndex set_a, set_b;
  for (const auto& label : bn.index(Side::A).labels()) set_a.intern(label);
  for (const auto& label : bn.index(Side::B).labels()) set_b.intern(label);
  return BipartiteNetwork::build(std::move(set_a), std::move(set_b),
                                 std::move(links), DuplicateLinkPolicy::strict);
}

std::vector<ExperimentRow> robustness_experiment(const BipartiteNetwork& bn,
                                                 const ExperimentConfig& cfg) {
  if (cfg.realizations < 1) {
    throw std::invalid_argument("experiment needs at least one realization");
  }
  if (cfg.p_r_values.empty()) {
    throw std::invalid_argument("experiment needs at least one p_r value");
  }

  // One Louvain seed everywhere: only the rewiring noise distinguishes
  // realizations, so the p_r = 0 realization reproduces G0 exactly.
  const std::uint64_t louvain_seed = derive_seed(cfg.seed, 0);
  const Partition g0 = louvain(project(bn, cfg.side), louvain_seed);

  constexpr const char* kKinds[3] = {"full", "fdr", "bonferroni"};
  constexpr const char* kMetrics[2] = {"r_adj", "w_adj"};
  const std::size_t n_pr = cfg.p_r_values.size();
  const auto n_real = static_cast<std::size_t>(cfg.realizations);

  // scores[kind][pi * realizations + r][metric]
  std::vector<std::array<double, 2>> scores[3];
  for (auto& s : scores) {
    s.assign(n_pr * n_real,
             {std::numeric_limits<double>::quiet_NaN(),
              std::numeric_limits<double>::quiet_NaN()});
  }

  parallel_for(0, n_pr * n_real, cfg.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t job = lo; job < hi; ++job) {
      const std::size_t pi = job / n_real;
      RewirePlan plan{cfg.p_r_values[pi], derive_seed(cfg.seed, 1 + job),
                      cfg.swap_mode};
      const BipartiteNetwork noisy = rewire(bn, plan);

      Partition parts[3];
      bool defined[3] = {false, false, false};
      try {
        parts[0] = louvain(project(noisy, cfg.side), louvain_seed);
        defined[0] = true;
      } catch (const std::invalid_argument&) {
      }
      const CorrectionMethod methods[2] = {CorrectionMethod::fdr,
                                           CorrectionMethod::bonferroni};
      for (int m = 0; m < 2; ++m) {
        const ValidatedNetwork vn =
            validate_one_tail(noisy, cfg.side, cfg.alpha, methods[m], 1);
        if (vn.edges.empty()) continue;
        parts[m + 1] = louvain(vn, louvain_seed);
        defined[m + 1] = true;
      }

      for (int kind = 0; kind < 3; ++kind) {
        if (!defined[kind]) continue;
        auto& slot = scores[kind][job];
        try {
          slot[0] = adjusted_rand(parts[kind], g0);
        } catch (const std::exception&) {
        }
        try {
          slot[1] = adjusted_wallace(parts[kind], g0);
        } catch (const std::exception&) {
        }
      }
    }
  });

  std::vector<ExperimentRow> rows;
  for (int kind = 0; kind < 3; ++kind) {
    for (std::size_t pi = 0; pi < n_pr; ++pi) {
      for (int metric = 0; metric < 2; ++metric) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t r = 0; r < n_real; ++r) {
          const double v = scores[kind][pi * n_real + r][metric];
          if (std::isnan(v)) continue;
          sum += v;
          ++count;
        }
        const double mean = count > 0 ? sum / static_cast<double>(count)
                                      : std::numeric_limits<double>::quiet_NaN();
        double var = 0.0;
        for (std::size_t r = 0; r < n_real; ++r) {
          const double v = scores[kind][pi * n_real + r][metric];
          if (std::isnan(v)) continue;
          var += (v - mean) * (v - mean);
        }
        const double stddev =
            count > 1 ? std::sqrt(var / static_cast<double>(count - 1)) : 0.0;
        rows.push_back({kKinds[kind], cfg.p_r_values[pi], kMetrics[metric],
                        mean, stddev, count});
      }
    }
  }
  return rows;
}

void save_experiment(const std::vector<ExperimentRow>& rows,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << "network_kind\tp_r\tmetric\tmean\tstd\n";
  for (const auto& r : rows) {
    out << r.network_kind << '\t' << format_double(r.p_r) << '\t' << r.metric
        << '\t' << format_double(r.mean) << '\t' << format_double(r.stddev)
        << '\n';
  }
}

}  // namespace svnkit
