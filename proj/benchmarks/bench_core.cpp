// Copyright 2026 The fpdual Authors
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

#include "fpdual/family.hpp"
#include "fpdual/fixedpoint.hpp"
#include "fpdual/hmatrix.hpp"
#include "fpdual/minimax.hpp"
#include "fpdual/numerics.hpp"
#include "fpdual/ode.hpp"
#include "fpdual/operators.hpp"
#include "fpdual/rng.hpp"

namespace {

using namespace fpdual;

void BM_Expm(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(1);
  const DenseMatrix M = rng.normal_matrix(d, d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expm(M, 1.0));
  }
}
BENCHMARK(BM_Expm)->Arg(8)->Arg(32)->Arg(128);

void BM_FamilySynthesize(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const PVector pv = interpolate_pvector(0.4, N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(pv));
  }
}
BENCHMARK(BM_FamilySynthesize)->Arg(8)->Arg(32)->Arg(128);

void BM_FamilyCertify(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const PVector pv = interpolate_pvector(0.4, N);
  const HMatrix H = synthesize(pv);
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify(H, pv));
  }
}
BENCHMARK(BM_FamilyCertify)->Arg(8)->Arg(32);

void BM_DualOhm(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const MonotoneMap A = make_random_linear_monotone(16, 7, 0.0);
  const NonexpansiveMap T = nonexpansive_from_monotone(A, 1.0);
  Rng rng(2);
  const DenseVector y0 = rng.normal_vector(16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_dual_ohm(T, y0, N));
  }
}
BENCHMARK(BM_DualOhm)->Arg(32)->Arg(128);

void BM_DualFeg(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const SaddleProblem P = make_ouyang_xu(50, 0.0);
  const DenseVector x0 = DenseVector::Zero(P.dim());
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_minimax(MinimaxMethod::kDualFeg, P, x0, 1.0, N));
  }
}
BENCHMARK(BM_DualFeg)->Arg(100)->Arg(1000);

void BM_DualAnchorRk4(benchmark::State& state) {
  const int steps = static_cast<int>(state.range(0));
  const MonotoneMap A = make_random_linear_monotone(8, 3, 0.0);
  Rng rng(4);
  const DenseVector x0 = rng.normal_vector(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_dual_anchor(A, x0, 5.0, steps));
  }
}
BENCHMARK(BM_DualAnchorRk4)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
