// Copyright 2026 The chi2tomo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "chi2tomo/central.hpp"
#include "chi2tomo/classical.hpp"
#include "chi2tomo/divergences.hpp"
#include "chi2tomo/frobenius.hpp"
#include "chi2tomo/linalg.hpp"
#include "chi2tomo/mi_testing.hpp"
#include "chi2tomo/qubit.hpp"

namespace {

using namespace chi2tomo;

void BM_EigHermitian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Matrix rho = random_state(d, d, 1).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(rho));
}
BENCHMARK(BM_EigHermitian)->Arg(4)->Arg(16)->Arg(64);

void BM_Fidelity(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Matrix rho = random_state(d, d, 1).matrix();
  Matrix sigma = random_state(d, d, 2).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(fidelity(rho, sigma));
}
BENCHMARK(BM_Fidelity)->Arg(8)->Arg(32);

void BM_BuresChi2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Matrix rho = random_state(d, d, 1).matrix();
  Matrix sigma = random_state(d, d, 2).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(bures_chi2(rho, sigma));
}
BENCHMARK(BM_BuresChi2)->Arg(8)->Arg(32);

void BM_SampleMultinomial(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  RealVector p = RealVector::Constant(d, 1.0 / d);
  Rng rng = derive_rng(3, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_multinomial(p, 1000000, rng));
}
BENCHMARK(BM_SampleMultinomial)->Arg(8)->Arg(64);

void BM_SimpleFrobenius(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Matrix rho = random_state(d, d, 1).matrix();
  Rng rng = derive_rng(4, 0);
  for (auto _ : state) {
    StateAccess access(rho, 1000 * simple_frobenius_settings(d), fork(rng));
    benchmark::DoNotOptimize(simple_frobenius(access, 1000));
  }
}
BENCHMARK(BM_SimpleFrobenius)->Arg(4)->Arg(8)->Arg(16);

void BM_CentralOracle(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int r = 2;
  const CentralParams params = CentralParams::for_chi2_target(d, r, d, 0.2);
  const FrobeniusLearner base(EstimatorSpec::parse("oracle:f=d"), d, r);
  Matrix rho = random_state(d, r, 1).matrix();
  Rng rng = derive_rng(5, 0);
  for (auto _ : state) {
    StateAccess access(rho, params.total, fork(rng));
    benchmark::DoNotOptimize(central_estimate(base, access, params));
  }
}
BENCHMARK(BM_CentralOracle)->Arg(8)->Arg(16);

void BM_QubitTomography(benchmark::State& state) {
  Matrix rho = random_state(2, 2, 1).matrix();
  Rng rng = derive_rng(6, 0);
  for (auto _ : state) {
    StateAccess access(rho, qubit_copies(0.05, 0.05), fork(rng));
    benchmark::DoNotOptimize(qubit_tomography(access, 0.05, 0.05));
  }
}
BENCHMARK(BM_QubitTomography);

void BM_IdentityTester(benchmark::State& state) {
  const int bins = static_cast<int>(state.range(0));
  RealVector q = RealVector::Constant(bins, 1.0 / bins);
  Rng rng = derive_rng(7, 0);
  SampleCounts counts = sample_multinomial(q, 10000, rng);
  for (auto _ : state) benchmark::DoNotOptimize(identity_tester_classical(q, counts, 0.1, rng, 1000));
}
BENCHMARK(BM_IdentityTester)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
