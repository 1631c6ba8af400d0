// Copyright 2026 The dplp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <utility>

#include "dplp/experiments.hpp"
#include "dplp/privacy.hpp"
#include "dplp/privatizer.hpp"
#include "dplp/rng.hpp"
#include "dplp/solver.hpp"

namespace {

using dplp::CounterRng;
using dplp::PrivacyBudget;

std::pair<dplp::LinearProgramInstance, dplp::SensitivityProfile> ad_case(
    int N, int M) {
  auto [lp, prof] = dplp::gen_ad_instance(N, M, CounterRng::seeded(5));
  prof.delta11_A = 1.0;
  prof.delta1_b = 1.0;
  prof.delta1_c = 1.0;
  return {lp, prof};
}

void BM_SolveAd(benchmark::State& state) {
  const auto [lp, prof] = ad_case(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dplp::solve(lp));
  }
}
BENCHMARK(BM_SolveAd)->Args({10, 5})->Args({20, 50})->Args({20, 100});

void BM_PrivatizeAd(benchmark::State& state) {
  const auto [lp, prof] = ad_case(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)));
  const PrivacyBudget budget{1.0, 0.1, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const CounterRng rng = CounterRng::seeded(7);
  std::uint64_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dplp::privatize(lp, prof, budget, rng.split(t++)));
  }
}
BENCHMARK(BM_PrivatizeAd)->Args({10, 5})->Args({20, 50});

void BM_TruncatedLaplaceDraw(benchmark::State& state) {
  const dplp::TruncatedLaplace d{1.0, 3.0};
  CounterRng rng = CounterRng::seeded(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dplp::sample_trunc_laplace(d, rng));
  }
}
BENCHMARK(BM_TruncatedLaplaceDraw);

void BM_SupportRadius(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(dplp::support_A(1.0, 1.0, 0.1, 20, 100));
  }
}
BENCHMARK(BM_SupportRadius);

}  // namespace

BENCHMARK_MAIN();
