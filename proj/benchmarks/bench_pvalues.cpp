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

#include "svnkit/pvalues.hpp"

using namespace svnkit;

static void BM_HypergeomTails(benchmark::State& state) {
  const std::int64_t population = state.range(0);
  const std::int64_t degree = population / 10;
  HypergeomParams prm{population, degree, degree};
  const std::int64_t n = degree * degree / population + degree / 20;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hypergeom_tails(prm, n));
  }
}
BENCHMARK(BM_HypergeomTails)->Arg(100)->Arg(10000)->Arg(1000000);

static void BM_PvalueDisparity(benchmark::State& state) {
  const std::int64_t k = state.range(0);
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-9;
    benchmark::DoNotOptimize(pvalue_disparity(k, 0.3 + x));
  }
}
BENCHMARK(BM_PvalueDisparity)->Arg(2)->Arg(50)->Arg(200);

static void BM_BinomTail(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(binom_tail_at_least(10, 8, 0.5));
    benchmark::DoNotOptimize(fwer_at_least_one(0.0546875, 100));
  }
}
BENCHMARK(BM_BinomTail);

static void BM_LogChoose(benchmark::State& state) {
  std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_choose(n, n / 3));
  }
}
BENCHMARK(BM_LogChoose)->Arg(100)->Arg(100000)->Arg(10000000);
