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
// svnkit: extract statistically validated subnetworks from weighted and
// bipartite networks, detect community cores, and run noise-robustness
// experiments. Every command writes its results plus a JSON manifest into
// --out; reruns with identical parameters produce identical result files.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "svnkit/benchmark.hpp"
#include "svnkit/community.hpp"
#include "svnkit/corrections.hpp"
#include "svnkit/disparity.hpp"
#include "svnkit/graph.hpp"
#include "svnkit/manifest.hpp"
#include "svnkit/rng.hpp"
#include "svnkit/svn.hpp"
#include "svnkit/version.hpp"

namespace fs = std::filesystem;
using namespace svnkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct CommonOpts {
  std::string out_dir;
  std::uint64_t seed = kDefaultSeed;
  int threads = 0;  // 0 = SVNKIT_THREADS env, then hardware count
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seed = true) {
  cmd->add_option("--out", opts.out_dir, "Output directory (created if missing)")
      ->required();
  if (with_seed) {
    cmd->add_option("--seed", opts.seed, "Master seed (default 42)");
  }
  cmd->add_option("--threads", opts.threads,
                  "Worker threads (default: SVNKIT_THREADS or all cores)");
  cmd->add_flag("--quiet", opts.quiet, "Suppress progress messages");
}

fs::path prepare_out_dir(const CommonOpts& opts) {
  fs::path dir(opts.out_dir);
  fs::create_directories(dir);
  return dir;
}

void progress(const CommonOpts& opts, const std::string& msg) {
  if (!opts.quiet) std::cerr << msg << '\n';
}

std::string fmt(double v) { return format_double(v); }

Side parse_side(const std::string& s) {
  if (s == "A" || s == "a") return Side::A;
  if (s == "B" || s == "b") return Side::B;
  throw std::invalid_argument("--side must be A or B");
}

void write_metrics_json(const nlohmann::json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

// ---- backbone ---------------------------------------------------------------

struct BackboneOpts {
  CommonOpts common;
  std::string input;
  bool directed = false;
  double alpha = 0.05;
  std::string correction = "fdr";
  std::string degree_one = "drop";
  std::string symmetrize_mode = "none";
};

void run_backbone(const BackboneOpts& o) {
  const fs::path dir = prepare_out_dir(o.common);
  const WeightedNetwork wn = load_weighted(o.input, o.directed);
  progress(o.common, "loaded " + std::to_string(wn.node_count()) + " nodes");

  const DegreeOnePolicy policy = o.degree_one == "keep" ? DegreeOnePolicy::keep
                                                        : DegreeOnePolicy::drop;
  const Backbone bb =
      disparity_backbone(wn, o.alpha, correction_from_name(o.correction),
                         policy, o.common.threads);
  save_backbone(bb, wn.nodes(), dir / "backbone.tsv");
  save_node_index(wn.nodes(), dir / "nodes.tsv");

  if (o.symmetrize_mode != "none") {
    const SymmetrizeMode mode = o.symmetrize_mode == "union"
                                    ? SymmetrizeMode::set_union
                                    : SymmetrizeMode::set_intersection;
    Backbone sym = bb;
    sym.edges = symmetrize(bb, mode);
    save_backbone(sym, wn.nodes(), dir / "backbone_symmetrized.tsv");
  }

  RunManifest m;
  m.command = "backbone";
  m.master_seed = o.common.seed;
  m.add_param("input", o.input);
  m.add_param("directed", o.directed ? "true" : "false");
  m.add_param("alpha", fmt(o.alpha));
  m.add_param("correction", o.correction);
  m.add_param("degree_one", o.degree_one);
  m.add_param("symmetrize", o.symmetrize_mode);
  m.add_param("n_tests", std::to_string(bb.n_tests));
  m.add_param("edges_retained", std::to_string(bb.edges.size()));
  m.add_input(o.input);
  write_manifest(m, dir / "manifest.json");
  progress(o.common, "backbone: " + std::to_string(bb.edges.size()) +
                         " directed edges retained of " +
                         std::to_string(bb.n_tests) + " tests");
}

// ---- validate ---------------------------------------------------------------

struct ValidateOpts {
  CommonOpts common;
  std::string input;
  std::string side = "A";
  std::string tails = "one";
  double alpha = 0.01;
  std::string method = "fdr";
  std::string family = "tests";
  bool strict_duplicates = false;
};

void run_validate(const ValidateOpts& o) {
  const fs::path dir = prepare_out_dir(o.common);
  std::size_t duplicates = 0;
  const BipartiteNetwork bn =
      load_bipartite(o.input,
                     o.strict_duplicates ? DuplicateLinkPolicy::strict
                                         : DuplicateLinkPolicy::warn_and_ignore,
                     &duplicates);
  if (duplicates > 0) {
    std::cerr << "warning: ignored " << duplicates << " duplicate links\n";
  }

  const Side side = parse_side(o.side);
  const CorrectionMethod method = correction_from_name(o.method);
  if (method == CorrectionMethod::none) {
    throw std::invalid_argument("--method must be bonferroni or fdr");
  }

  ValidatedNetwork vn;
  if (o.tails == "one") {
    vn = validate_one_tail(bn, side, o.alpha, method, o.common.threads);
  } else if (o.tails == "two") {
    const FamilyMode family =
        o.family == "pairs" ? FamilyMode::pairs : FamilyMode::tests;
    vn = validate_two_tail(bn, side, o.alpha, method, family, o.common.threads);
  } else {
    throw std::invalid_argument("--tails must be one or two");
  }

  save_validated(vn, bn, dir / "validated.tsv");
  save_node_index(bn.index(side), dir / "nodes.tsv");

  RunManifest m;
  m.command = "validate";
  m.master_seed = o.common.seed;
  m.add_param("input", o.input);
  m.add_param("side", side_name(side));
  m.add_param("tails", o.tails);
  m.add_param("alpha", fmt(o.alpha));
  m.add_param("method", o.method);
  m.add_param("family", o.family);
  m.add_param("n_tests", std::to_string(vn.n_tests));
  m.add_param("excluded_zero_degree", std::to_string(vn.excluded_zero_degree));
  m.add_param("duplicates_ignored", std::to_string(duplicates));
  m.add_param("edges_validated", std::to_string(vn.edges.size()));
  m.add_input(o.input);
  write_manifest(m, dir / "manifest.json");
  progress(o.common, "validated " + std::to_string(vn.edges.size()) +
                         " links (" + std::to_string(vn.n_tests) + " tests)");
}

// ---- communities ------------------------------------------------------------

struct CommunitiesOpts {
  CommonOpts common;
  std::string input;
  std::string side = "A";
  std::string validation = "fdr";  // none = full projection
  double alpha = 0.01;
  std::string weights = "auto";
};

void run_communities(const CommunitiesOpts& o) {
  const fs::path dir = prepare_out_dir(o.common);
  const BipartiteNetwork bn = load_bipartite(o.input);
  const Side side = parse_side(o.side);

  Partition part;
  double q = 0.0;
  if (o.validation == "none") {
    const EdgeWeightMode mode = o.weights == "binary" ? EdgeWeightMode::binary
                                                      : EdgeWeightMode::cooccurrence;
    const ProjectedNetwork pn = project(bn, side);
    part = louvain(pn, o.common.seed, mode);
    q = modularity(pn, part, mode);
  } else {
    const CorrectionMethod method = correction_from_name(o.validation);
    const ValidatedNetwork vn =
        validate_one_tail(bn, side, o.alpha, method, o.common.threads);
    if (vn.edges.empty()) {
      std::cerr << "warning: validated network is empty; partition covers no node\n";
      part = Partition(bn.set_size(side));
    } else {
      const EdgeWeightMode mode = o.weights == "njj"
                                      ? EdgeWeightMode::cooccurrence
                                      : EdgeWeightMode::binary;
      part = louvain(vn, o.common.seed, mode);
      q = modularity(validated_edges(vn, mode), part);
    }
  }

  save_partition(part, bn.index(side), dir / "partition.tsv");
  nlohmann::json metrics;
  metrics["modularity"] = q;
  metrics["communities"] = part.community_count();
  metrics["coverage"] = part.coverage_size();
  metrics["side_size"] = bn.set_size(side);
  write_metrics_json(metrics, dir / "metrics.json");

  RunManifest m;
  m.command = "communities";
  m.master_seed = o.common.seed;
  m.add_param("input", o.input);
  m.add_param("side", side_name(side));
  m.add_param("validation", o.validation);
  m.add_param("alpha", fmt(o.alpha));
  m.add_param("weights", o.weights);
  m.add_input(o.input);
  write_manifest(m, dir / "manifest.json");
  progress(o.common, std::to_string(part.community_count()) +
                         " communities over " +
                         std::to_string(part.coverage_size()) + " nodes, Q=" +
                         fmt(q));
}

// ---- compare ----------------------------------------------------------------

struct CompareOpts {
  CommonOpts common;
  std::string partition_a;
  std::string partition_b;
};

void run_compare(const CompareOpts& o) {
  const fs::path dir = prepare_out_dir(o.common);
  const auto [pa, pb] = align_partitions(read_partition_file(o.partition_a),
                                         read_partition_file(o.partition_b));
  nlohmann::json metrics;
  metrics["r_adj"] = adjusted_rand(pa, pb);
  // candidate = --partition-a, reference = --partition-b
  metrics["w_adj"] = adjusted_wallace(pa, pb);
  write_metrics_json(metrics, dir / "metrics.json");

  RunManifest m;
  m.command = "compare";
  m.master_seed = o.common.seed;
  m.add_param("partition_a", o.partition_a);
  m.add_param("partition_b", o.partition_b);
  m.add_input(o.partition_a);
  m.add_input(o.partition_b);
  write_manifest(m, dir / "manifest.json");
  progress(o.common, "r_adj=" + fmt(metrics["r_adj"].get<double>()) +
                         " w_adj=" + fmt(metrics["w_adj"].get<double>()));
}

// ---- benchmark --------------------------------------------------------------

struct BenchmarkOpts {
  CommonOpts common;
  int blocks = 4;
  int a_per_block = 50;
  int b_per_block = 100;
  double intra = 0.3;
  double inter = 0.02;
  double rewire_pr = -1.0;  // < 0: no rewired copy
  std::string swap = "degree";
};

SwapMode parse_swap(const std::string& s) {
  if (s == "degree") return SwapMode::degree_matched;
  if (s == "any") return SwapMode::any;
  throw std::invalid_argument("--swap must be degree or any");
}

void run_benchmark(const BenchmarkOpts& o) {
  const fs::path dir = prepare_out_dir(o.common);
  BenchmarkSpec spec{o.blocks, o.a_per_block, o.b_per_block,
                     o.intra, o.inter, o.common.seed};
  const PlantedBenchmark pb = generate_benchmark(spec);
  save_bipartite(pb.network, dir / "bipartite.tsv");
  save_partition(pb.planted, pb.network.index(Side::A), dir / "planted.tsv");
  save_node_index(pb.network.index(Side::A), dir / "nodes_a.tsv");
  save_node_index(pb.network.index(Side::B), dir / "nodes_b.tsv");

  RunManifest m;
  m.command = "benchmark";
  m.master_seed = o.common.seed;
  m.add_param("blocks", std::to_string(o.blocks));
  m.add_param("a_per_block", std::to_string(o.a_per_block));
  m.add_param("b_per_block", std::to_string(o.b_per_block));
  m.add_param("intra", fmt(o.intra));
  m.add_param("inter", fmt(o.inter));
  m.add_param("links", std::to_string(pb.network.link_count()));

  if (o.rewire_pr >= 0.0) {
    RewireStats stats;
    RewirePlan plan{o.rewire_pr, derive_seed(o.common.seed, 1), parse_swap(o.swap)};
    const BipartiteNetwork noisy = rewire(pb.network, plan, &stats);
    save_bipartite(noisy, dir / "rewired.tsv");
    m.add_param("rewire_pr", fmt(o.rewire_pr));
    m.add_param("swap", o.swap);
    m.add_param("swaps_done", std::to_string(stats.swaps_done));
    if (stats.budget_exhausted) {
      std::cerr << "warning: rewiring retry budget exhausted after "
                << stats.swaps_done << "/" << stats.swaps_requested
                << " swaps\n";
      m.add_param("rewire_budget_exhausted", "true");
    }
  }
  write_manifest(m, dir / "manifest.json");
  progress(o.common, "benchmark with " + std::to_string(pb.network.link_count()) +
                         " links written");
}

// ---- experiment -------------------------------------------------------------

struct ExperimentOpts {
  CommonOpts common;
  std::string input;  // empty: generate from benchmark flags
  int blocks = 4;
  int a_per_block = 50;
  int b_per_block = 100;
  double intra = 0.3;
  double inter = 0.02;
  std::vector<double> p_r_values;
  int realizations = 100;
  double alpha = 0.01;
  std::string side = "A";
  std::string swap = "degree";
};

void run_experiment(const ExperimentOpts& o) {
  const fs::path dir = prepare_out_dir(o.common);

  RunManifest m;
  m.command = "experiment";
  m.master_seed = o.common.seed;

  BipartiteNetwork bn;
  if (!o.input.empty()) {
    bn = load_bipartite(o.input);
    m.add_param("input", o.input);
    m.add_input(o.input);
  } else {
    BenchmarkSpec spec{o.blocks, o.a_per_block, o.b_per_block,
                       o.intra, o.inter, derive_seed(o.common.seed, 1 << 20)};
    bn = generate_benchmark(spec).network;
    m.add_param("blocks", std::to_string(o.blocks));
    m.add_param("a_per_block", std::to_string(o.a_per_block));
    m.add_param("b_per_block", std::to_string(o.b_per_block));
    m.add_param("intra", fmt(o.intra));
    m.add_param("inter", fmt(o.inter));
    save_bipartite(bn, dir / "bipartite.tsv");
  }

  ExperimentConfig cfg;
  cfg.p_r_values = o.p_r_values;
  cfg.realizations = o.realizations;
  cfg.alpha = o.alpha;
  cfg.seed = o.common.seed;
  cfg.side = parse_side(o.side);
  cfg.swap_mode = parse_swap(o.swap);
  cfg.threads = o.common.threads;

  progress(o.common, "running " + std::to_string(o.p_r_values.size()) + " x " +
                         std::to_string(o.realizations) + " realizations");
  const std::vector<ExperimentRow> rows = robustness_experiment(bn, cfg);
  save_experiment(rows, dir / "experiment.tsv");

  std::ostringstream pr_list;
  for (std::size_t i = 0; i < o.p_r_values.size(); ++i) {
    if (i) pr_list << ',';
    pr_list << fmt(o.p_r_values[i]);
  }
  m.add_param("p_r", pr_list.str());
  m.add_param("realizations", std::to_string(o.realizations));
  m.add_param("alpha", fmt(o.alpha));
  m.add_param("side", o.side);
  m.add_param("swap", o.swap);
  write_manifest(m, dir / "manifest.json");
  progress(o.common, "experiment table with " + std::to_string(rows.size()) +
                         " rows written");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"statistically validated network toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  BackboneOpts backbone_opts;
  auto* backbone_cmd = app.add_subcommand(
      "backbone", "Extract the disparity-filter backbone of a weighted network");
  backbone_cmd->add_option("--input", backbone_opts.input,
                           "Weighted edge list (source<TAB>target<TAB>weight)")
      ->required();
  backbone_cmd->add_flag("--directed", backbone_opts.directed,
                         "Treat the input as directed");
  backbone_cmd->add_option("--alpha", backbone_opts.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
  backbone_cmd
      ->add_option("--correction", backbone_opts.correction,
                   "Multiple-test correction")
      ->check(CLI::IsMember({"none", "bonferroni", "fdr"}));
  backbone_cmd
      ->add_option("--degree-one", backbone_opts.degree_one,
                   "Policy for degree-1 nodes")
      ->check(CLI::IsMember({"drop", "keep"}));
  backbone_cmd
      ->add_option("--symmetrize", backbone_opts.symmetrize_mode,
                   "Also write an undirected backbone")
      ->check(CLI::IsMember({"none", "union", "intersection"}));
  add_common(backbone_cmd, backbone_opts.common);

  ValidateOpts validate_opts;
  auto* validate_cmd = app.add_subcommand(
      "validate", "Statistically validate a bipartite projection");
  validate_cmd->add_option("--input", validate_opts.input,
                           "Bipartite link list (nodeA<TAB>nodeB)")
      ->required();
  validate_cmd->add_option("--side", validate_opts.side, "Projected side")
      ->check(CLI::IsMember({"A", "B", "a", "b"}));
  validate_cmd->add_option("--tails", validate_opts.tails, "one or two")
      ->check(CLI::IsMember({"one", "two"}));
  validate_cmd->add_option("--alpha", validate_opts.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
  validate_cmd->add_option("--method", validate_opts.method, "Correction method")
      ->check(CLI::IsMember({"bonferroni", "fdr"}));
  validate_cmd
      ->add_option("--family", validate_opts.family,
                   "Two-tail family accounting")
      ->check(CLI::IsMember({"tests", "pairs"}));
  validate_cmd->add_flag("--strict-duplicates", validate_opts.strict_duplicates,
                         "Error on duplicate links instead of ignoring them");
  add_common(validate_cmd, validate_opts.common);

  CommunitiesOpts communities_opts;
  auto* communities_cmd = app.add_subcommand(
      "communities",
      "Louvain partition of a (validated) bipartite projection");
  communities_cmd->add_option("--input", communities_opts.input,
                              "Bipartite link list")
      ->required();
  communities_cmd->add_option("--side", communities_opts.side, "Projected side")
      ->check(CLI::IsMember({"A", "B", "a", "b"}));
  communities_cmd
      ->add_option("--validation", communities_opts.validation,
                   "none = full projection, else correction for the SVN")
      ->check(CLI::IsMember({"none", "bonferroni", "fdr"}));
  communities_cmd->add_option("--alpha", communities_opts.alpha,
                              "Significance level for validation")
      ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
  communities_cmd
      ->add_option("--weights", communities_opts.weights,
                   "Louvain edge weights: auto, binary, njj")
      ->check(CLI::IsMember({"auto", "binary", "njj"}));
  add_common(communities_cmd, communities_opts.common);

  CompareOpts compare_opts;
  auto* compare_cmd = app.add_subcommand(
      "compare", "Adjusted Rand / Wallace indices of two partitions");
  compare_cmd->add_option("--partition-a", compare_opts.partition_a,
                          "Candidate partition (node<TAB>community)")
      ->required();
  compare_cmd->add_option("--partition-b", compare_opts.partition_b,
                          "Reference partition")
      ->required();
  add_common(compare_cmd, compare_opts.common, /*with_seed=*/false);

  BenchmarkOpts benchmark_opts;
  auto* benchmark_cmd = app.add_subcommand(
      "benchmark", "Generate a planted-block bipartite benchmark");
  benchmark_cmd->add_option("--blocks", benchmark_opts.blocks, "Number of blocks")
      ->check(CLI::PositiveNumber);
  benchmark_cmd->add_option("--a-per-block", benchmark_opts.a_per_block,
                            "A-nodes per block")
      ->check(CLI::PositiveNumber);
  benchmark_cmd->add_option("--b-per-block", benchmark_opts.b_per_block,
                            "B-nodes per block")
      ->check(CLI::PositiveNumber);
  benchmark_cmd->add_option("--intra", benchmark_opts.intra,
                            "Intra-block link probability")
      ->check(CLI::Range(0.0, 1.0));
  benchmark_cmd->add_option("--inter", benchmark_opts.inter,
                            "Inter-block link probability")
      ->check(CLI::Range(0.0, 1.0));
  benchmark_cmd->add_option("--rewire-pr", benchmark_opts.rewire_pr,
                            "Also write a rewired copy at this p_r")
      ->check(CLI::Range(0.0, 1.0));
  benchmark_cmd->add_option("--swap", benchmark_opts.swap,
                            "Swap acceptance rule: degree or any")
      ->check(CLI::IsMember({"degree", "any"}));
  add_common(benchmark_cmd, benchmark_opts.common);

  ExperimentOpts experiment_opts;
  auto* experiment_cmd = app.add_subcommand(
      "experiment", "Noise-robustness experiment (plot-ready table)");
  experiment_cmd->add_option("--input", experiment_opts.input,
                             "Bipartite link list (omit to generate a benchmark)");
  experiment_cmd->add_option("--blocks", experiment_opts.blocks, "Number of blocks")
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_option("--a-per-block", experiment_opts.a_per_block,
                             "A-nodes per block")
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_option("--b-per-block", experiment_opts.b_per_block,
                             "B-nodes per block")
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_option("--intra", experiment_opts.intra,
                             "Intra-block link probability")
      ->check(CLI::Range(0.0, 1.0));
  experiment_cmd->add_option("--inter", experiment_opts.inter,
                             "Inter-block link probability")
      ->check(CLI::Range(0.0, 1.0));
  experiment_cmd
      ->add_option("--pr", experiment_opts.p_r_values,
                   "Rewiring fractions p_r (comma separated or repeated)")
      ->required()
      ->delimiter(',');
  experiment_cmd->add_option("--realizations", experiment_opts.realizations,
                             "Realizations per p_r")
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_option("--alpha", experiment_opts.alpha,
                             "Validation significance level")
      ->check(CLI::Range(0.0, 1.0).description("(0, 1)"));
  experiment_cmd->add_option("--side", experiment_opts.side, "Projected side")
      ->check(CLI::IsMember({"A", "B", "a", "b"}));
  experiment_cmd->add_option("--swap", experiment_opts.swap,
                             "Swap acceptance rule: degree or any")
      ->check(CLI::IsMember({"degree", "any"}));
  add_common(experiment_cmd, experiment_opts.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << '\n';
    return kExitUsage;
  }

  try {
    if (backbone_cmd->parsed()) run_backbone(backbone_opts);
    if (validate_cmd->parsed()) run_validate(validate_opts);
    if (communities_cmd->parsed()) run_communities(communities_opts);
    if (compare_cmd->parsed()) run_compare(compare_opts);
    if (benchmark_cmd->parsed()) run_benchmark(benchmark_opts);
    if (experiment_cmd->parsed()) run_experiment(experiment_opts);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
