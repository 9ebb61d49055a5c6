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

#include <benchmark/benchmark.h>

#include "svnkit/benchmark.hpp"
#include "svnkit/community.hpp"
#include "svnkit/svn.hpp"

using namespace svnkit;

namespace {

BipartiteNetwork test_network(int scale) {
  BenchmarkSpec spec{4, 25 * scale, 50 * scale, 0.3, 0.02, 1};
  return generate_benchmark(spec).network;
}

}  // namespace

static void BM_Project(benchmark::State& state) {
  const BipartiteNetwork bn = test_network(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(project(bn, Side::A));
  }
}
BENCHMARK(BM_Project)->Arg(1)->Arg(2)->Arg(4);

static void BM_ValidateOneTail(benchmark::State& state) {
  const BipartiteNetwork bn = test_network(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        validate_one_tail(bn, Side::A, 0.01, CorrectionMethod::fdr, 1));
  }
}
BENCHMARK(BM_ValidateOneTail)->Arg(1)->Arg(2)->Arg(4);

static void BM_ValidateTwoTail(benchmark::State& state) {
  const BipartiteNetwork bn = test_network(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_two_tail(
        bn, Side::A, 0.01, CorrectionMethod::fdr, FamilyMode::tests, 1));
  }
}
BENCHMARK(BM_ValidateTwoTail)->Arg(1)->Arg(2);

static void BM_Louvain(benchmark::State& state) {
  const BipartiteNetwork bn = test_network(static_cast<int>(state.range(0)));
  const ProjectedNetwork pn = project(bn, Side::A);
  for (auto _ : state) {
    benchmark::DoNotOptimize(louvain(pn, 42));
  }
}
BENCHMARK(BM_Louvain)->Arg(1)->Arg(2);

static void BM_Rewire(benchmark::State& state) {
  const BipartiteNetwork bn = test_network(2);
  const double pr = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rewire(bn, {pr, 3, SwapMode::degree_matched}));
  }
}
BENCHMARK(BM_Rewire)->Arg(1)->Arg(3);
