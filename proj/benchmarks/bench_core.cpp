// Copyright 2026 The QAS Simulator Authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "qas/evolvers.hpp"
#include "qas/hamiltonians.hpp"
#include "qas/moment_basis.hpp"
#include "qas/overlaps.hpp"
#include "qas/state.hpp"

namespace {

using namespace qas;

PauliString random_string(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> op(0, 3);
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set_op(q, static_cast<Pauli>(op(rng)));
  return p;
}

PauliSum ising(std::size_t n) {
  ModelSpec s;
  s.family = ModelFamily::Ising;
  s.num_qubits = n;
  return build_model(s);
}

void BM_PauliMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  const PauliString a = random_string(rng, n), b = random_string(rng, n);
  PauliString out;
  for (auto _ : state) {
    multiply_into(out, a, b);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_PauliMul)->RangeMultiplier(4)->Range(16, 4096);

void BM_ExpectationStatevector(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  const StateVector psi = build_hardware_efficient_state(CircuitSpec::random(n, 4, 3));
  const PauliString p = random_string(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(expectation_pauli(psi, p));
}
BENCHMARK(BM_ExpectationStatevector)->DenseRange(8, 16, 4);

void BM_ExpectationProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  // generic qubits so no factor vanishes and the loop runs over the full weight
  std::vector<ProductState::Qubit> qubits(n, {Complex(0.8, 0.0), Complex(0.36, 0.48)});
  const ProductState psi(std::move(qubits));
  const PauliString p = random_string(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(expectation_product(psi, p));
}
BENCHMARK(BM_ExpectationProduct)->RangeMultiplier(10)->Range(10, 10000);

void BM_MomentBasis(benchmark::State& state) {
  const PauliSum h = ising(10);
  const auto order = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(MomentBasis::generate(h.strings(), order).size());
}
BENCHMARK(BM_MomentBasis)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_AssembleIsing(benchmark::State& state) {
  const PauliSum h = ising(10);
  const MomentBasis b = MomentBasis::generate(h.strings(), static_cast<std::size_t>(state.range(0)));
  const StateVector psi = build_hardware_efficient_state(CircuitSpec::random(10, 20, 5));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(b, h, psi, EstimatorMeta::exact()).distinct_strings);
  state.counters["basis"] = static_cast<double>(b.size());
}
BENCHMARK(BM_AssembleIsing)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

void BM_EvolveIsing(benchmark::State& state) {
  const PauliSum h = ising(8);
  const MomentBasis b = MomentBasis::generate(h.strings(), 2);
  const OverlapMatrices m = assemble(b, h, build_hardware_efficient_state(CircuitSpec::random(8, 20, 5)),
                                     EstimatorMeta::exact());
  IntegratorConfig cfg;
  cfg.t_final = 1.0;
  cfg.record_every = 100;
  cfg.engine = state.range(0) == 0 ? IntegratorConfig::Engine::Direct : IntegratorConfig::Engine::Spectral;
  CVector a0 = CVector::Zero(static_cast<Eigen::Index>(b.size()));
  a0[0] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(m, a0, cfg, EvolutionMode::Real).size());
  state.SetLabel(state.range(0) == 0 ? "direct" : "spectral");
}
BENCHMARK(BM_EvolveIsing)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
