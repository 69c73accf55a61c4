// Copyright 2026 The qmargulis Authors
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

#include "qmargulis/circuit_synth.h"
#include "qmargulis/classical_walk.h"
#include "qmargulis/continuous.h"
#include "qmargulis/phase_space.h"
#include "qmargulis/quantum_channel.h"

namespace qmargulis {
namespace {

void BM_WalkStep(benchmark::State& state) {
  const int64_t n = state.range(0);
  GridDist f = GridDist::delta(n, LatticePoint{0, 0, n});
  for (auto _ : state) {
    f = walk_step(f);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_WalkStep)->Arg(7)->Arg(31)->Arg(101);

void BM_ClassicalLambda(benchmark::State& state) {
  const int64_t n = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_report(walk_matrix(n), n));
}
BENCHMARK(BM_ClassicalLambda)->Arg(7)->Arg(15)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_ChannelApply(benchmark::State& state) {
  const PhaseSpaceContext ctx(state.range(0));
  const KrausChannel ch = margulis_channel(ctx);
  Rng rng(1);
  DenseOperator rho = random_density(static_cast<int>(ctx.dim()), rng);
  for (auto _ : state) {
    rho = apply_channel(ch, rho);
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_ChannelApply)->Arg(7)->Arg(27)->Arg(81);

// 49x49 at N=7; the default cap stops at N=9.
void BM_QuantumLambda(benchmark::State& state) {
  const PhaseSpaceContext ctx(state.range(0));
  const KrausChannel ch = margulis_channel(ctx);
  for (auto _ : state) benchmark::DoNotOptimize(expander_lambda(ch));
}
BENCHMARK(BM_QuantumLambda)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_AffineCircuit(benchmark::State& state) {
  const int qudits = static_cast<int>(state.range(0));
  const int64_t n = qudit_dimension(3, qudits);
  const AffineMap t = margulis_generator(n, "T2");
  for (auto _ : state) {
    const GateList list = affine_circuit(3, qudits, t);
    benchmark::DoNotOptimize(evaluate(list));
  }
}
BENCHMARK(BM_AffineCircuit)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_Contraction(benchmark::State& state) {
  const SampledField field = discretize(TestFunction::kGaussians, 0.25, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(contraction_check(field));
}
BENCHMARK(BM_Contraction)->Arg(8)->Arg(32);

}  // namespace
}  // namespace qmargulis

BENCHMARK_MAIN();
