// Copyright 2026 The depp-sim Authors
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

// Serial reference kernels against the OpenMP kernels on the same grids.

#include <benchmark/benchmark.h>

#include <numbers>

#include "depp/sweep.hpp"

namespace {

using depp::Execution;
using depp::Grid;

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_Eq9(benchmark::State& state) {
  const Grid e{0.0, 1.0, 0.01};
  for (auto _ : state) benchmark::DoNotOptimize(depp::sweep_eq9(e, mode(state)));
}

void BM_Eq10(benchmark::State& state) {
  const Grid p{0.01, 0.2, 0.01};
  const Grid m{0.0, 0.95, 0.05};
  for (auto _ : state)
    benchmark::DoNotOptimize(depp::sweep_eq10(p, m, 0.1, 1.0, 0.0, mode(state)));
}

void BM_Simplex(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(depp::sweep_simplex(20, 0.7, mode(state)));
}

void BM_Drift(benchmark::State& state) {
  const Grid phi{0.0, 2 * std::numbers::pi, std::numbers::pi / 64};
  const depp::BellMixtureParams noise{0.4, 0.3, 0.2, 0.1};
  for (auto _ : state)
    benchmark::DoNotOptimize(depp::sweep_drift(phi, noise, mode(state)));
}

// Arg 0: serial, arg 1: parallel.
BENCHMARK(BM_Eq9)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Eq10)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Simplex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Drift)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
