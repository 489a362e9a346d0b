// Copyright 2026 The viproplab Authors
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

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "viproplab/gen.hpp"
#include "viproplab/kernels.hpp"

namespace {

using viproplab::Rational;
namespace kernels = viproplab::kernels;

const kernels::FunctionSequence kSawtooth = [](long k) { return viproplab::gen::sawtooth(k); };

template <auto Sweep>
void BM_PairingSweep(benchmark::State& state) {
  const auto y = viproplab::gen::scaledHat(Rational(16));
  for (auto _ : state) benchmark::DoNotOptimize(Sweep(kSawtooth, y, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Sweep>
void BM_TestIntegralSweep(benchmark::State& state) {
  const auto phi = viproplab::pwcalc::TestFunction::monomial(5);
  for (auto _ : state) benchmark::DoNotOptimize(Sweep(kSawtooth, phi, state.range(0)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Apply>
void BM_GalerkinApply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> x(n), f(n, 1.0 / static_cast<double>(n + 1)), out(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(3.0 * static_cast<double>(i) / static_cast<double>(n));
  for (auto _ : state) {
    Apply(x, f, out);
    benchmark::DoNotOptimize(out.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_PairingSweep<kernels::pairingSweepSerial>)->Name("pairing_sweep/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_PairingSweep<kernels::pairingSweep>)->Name("pairing_sweep/omp")->Arg(64)->Arg(256);
BENCHMARK(BM_TestIntegralSweep<kernels::testIntegralSweepSerial>)->Name("test_integral_sweep/serial")->Arg(256);
BENCHMARK(BM_TestIntegralSweep<kernels::testIntegralSweep>)->Name("test_integral_sweep/omp")->Arg(256);
BENCHMARK(BM_GalerkinApply<kernels::galerkinApplySerial>)
    ->Name("galerkin_apply/serial")
    ->Arg(1 << 10)
    ->Arg(1 << 16)
    ->Arg(1 << 20);
BENCHMARK(BM_GalerkinApply<kernels::galerkinApply>)
    ->Name("galerkin_apply/omp")
    ->Arg(1 << 10)
    ->Arg(1 << 16)
    ->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
