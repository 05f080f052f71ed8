//------------------------------------------------------------------------------
//
//   Copyright 2026 The tracespl Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "tracespl/analysis_kernels.hpp"

#include "../tests/support/random_model.hpp"

#include <benchmark/benchmark.h>

#include <map>

namespace {

using namespace tracespl;

kernels::CompiledModel const &fixture(std::size_t features)
{
  static std::map<std::size_t, kernels::CompiledModel> cache;
  auto it = cache.find(features);
  if (it == cache.end())
  {
    std::mt19937_64             rng(features * 7919);
    testing::RandomModelOptions opt;
    opt.min_features = opt.max_features = features;
    opt.max_constraints                 = 6;
    it = cache.emplace(features, kernels::compile(testing::random_model(rng, opt))).first;
  }
  return it->second;
}

void BM_CountSerial(benchmark::State &state)
{
  auto const &m = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kernels::count_serial(m));
  }
}

void BM_CountParallel(benchmark::State &state)
{
  auto const &m = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kernels::count_parallel(m));
  }
}

void BM_EnumerateSerial(benchmark::State &state)
{
  auto const &m = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kernels::enumerate_serial(m));
  }
}

void BM_EnumerateParallel(benchmark::State &state)
{
  auto const &m = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(kernels::enumerate_parallel(m));
  }
}

}  // namespace

BENCHMARK(BM_CountSerial)->Arg(16)->Arg(20)->Arg(22)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CountParallel)->Arg(16)->Arg(20)->Arg(22)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnumerateSerial)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnumerateParallel)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
