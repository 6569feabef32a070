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
#include <sstream>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qas/errors.hpp"
#include "qas/hamiltonians.hpp"
#include "qas/overlaps.hpp"

namespace qas {
namespace {

PauliString P(const char* ops, Phase ph = Phase::one()) { return PauliString::from_ops(ops, ph); }

struct DenseOverlaps {
  Eigen::MatrixXcd E, D, F;
};

// Phi has columns L_i |psi>; E = Phi^+ Phi, D = Phi^+ H Phi, F = Phi^+ H^+ H Phi.
DenseOverlaps dense_overlaps(const MomentBasis& b, const PauliSum& h, const CVector& psi) {
  Eigen::MatrixXcd phi(psi.size(), static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    phi.col(static_cast<Eigen::Index>(i)) = testing::dense_matrix(b.labels()[i]) * psi;
  }
  const Eigen::MatrixXcd hm = testing::dense_matrix(h);
  return {phi.adjoint() * phi, phi.adjoint() * hm * phi, phi.adjoint() * hm.adjoint() * hm * phi};
}

PauliSum random_hamiltonian(std::mt19937_64& rng, std::size_t n, std::size_t terms, bool hermitian) {
  std::normal_distribution<double> g;
  std::vector<PauliTerm> t;
  for (std::size_t k = 0; k < terms; ++k) {
    const Complex c = hermitian ? Complex(g(rng)) : Complex(g(rng), g(rng));
    t.push_back({c, testing::random_string(rng, n, false)});
  }
  return PauliSum(n, t);
}

TEST(Reduce, Examples) {
  EXPECT_EQ(reduce_to_single_string(P("X"), P("Z"), P("I")), P("Y", Phase::minus_i()));
  EXPECT_EQ(reduce_to_single_string(P("I"), P("Z"), P("Z")), P("I"));
  // bra phases are conjugated
  EXPECT_EQ(reduce_to_single_string(P("I", Phase::i()), P("I"), P("I")), P("I", Phase::minus_i()));
}

TEST(Assemble, SingleZPlusExample) {
  const PauliSum h = parse_pauli_sum("1 0 Z");
  const MomentBasis b = MomentBasis::generate(h.strings(), 1);
  const OverlapMatrices m = assemble(b, h, StateVector::plus(1), EstimatorMeta::exact(), {.with_F = true});
  EXPECT_TRUE(m.E.isApprox(CMatrix::Identity(2, 2), 1e-15));
  CMatrix d(2, 2);
  d << 0, 1, 1, 0;
  EXPECT_TRUE(m.D.isApprox(d, 1e-15));
  EXPECT_TRUE(m.F->isApprox(CMatrix::Identity(2, 2), 1e-15));
  EXPECT_EQ(m.dim, 2u);
}

TEST(Assemble, MatchesDenseOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const bool hermitian = trial % 4 != 0;
    const PauliSum h = random_hamiltonian(rng, n, 1 + trial % 4, hermitian);
    const MomentBasis b = MomentBasis::generate(h.strings(), 1 + trial % 3);
    const CVector psi = testing::random_state(rng, n);
    const OverlapMatrices m = assemble(b, h, StateVector(n, psi), EstimatorMeta::exact(), {.with_F = true});
    const DenseOverlaps ref = dense_overlaps(b, h, psi);
    ASSERT_LE((m.E - ref.E).cwiseAbs().maxCoeff(), 1e-9);
    ASSERT_LE((m.D - ref.D).cwiseAbs().maxCoeff(), 1e-9);
    ASSERT_LE((*m.F - ref.F).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Assemble, ProductBackendMatchesStatevector) {
  ModelSpec spec;
  spec.family = ModelFamily::Ising;
  spec.num_qubits = 6;
  const PauliSum h = build_model(spec);
  const MomentBasis b = MomentBasis::generate(h.strings(), 2);
  const OverlapMatrices a = assemble(b, h, ProductState::plus(6), EstimatorMeta::exact());
  const OverlapMatrices s = assemble(b, h, StateVector::plus(6), EstimatorMeta::exact());
  EXPECT_LE((a.E - s.E).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((a.D - s.D).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Assemble, CacheDoesNotChangeResults) {
  std::mt19937_64 rng(4);
  const PauliSum h = random_hamiltonian(rng, 4, 3, true);
  const MomentBasis b = MomentBasis::generate(h.strings(), 2);
  const StateVector psi(4, testing::random_state(rng, 4));
  const OverlapMatrices cached = assemble(b, h, psi, EstimatorMeta::exact(), {.with_F = true, .use_cache = true});
  const OverlapMatrices direct = assemble(b, h, psi, EstimatorMeta::exact(), {.with_F = true, .use_cache = false});
  EXPECT_EQ(cached.E, direct.E);
  EXPECT_EQ(cached.D, direct.D);
  EXPECT_EQ(*cached.F, *direct.F);
  EXPECT_GT(cached.distinct_strings, 0u);
}

TEST(AssembleProperties, GramIsHermitianPsdWithUnitDiagonal) {
  std::mt19937_64 rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const PauliSum h = random_hamiltonian(rng, n, 1 + trial % 5, true);
    const MomentBasis b = MomentBasis::generate(h.strings(), 1 + trial % 2);
    const OverlapMatrices m =
        assemble(b, h, StateVector(n, testing::random_state(rng, n)), EstimatorMeta::exact());
    ASSERT_LE((m.E - m.E.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_LE((m.D - m.D.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_LE((m.E.diagonal().array() - 1.0).abs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m.E);
    ASSERT_GE(es.eigenvalues().minCoeff(), -1e-10);
  }
}

TEST(AssembleOperator, NonHermitianOperatorFillsFullMatrix) {
  std::mt19937_64 rng(12);
  const PauliSum op = random_hamiltonian(rng, 3, 3, false);
  const PauliSum h = random_hamiltonian(rng, 3, 2, true);
  const MomentBasis b = MomentBasis::generate(h.strings(), 2);
  const CVector psi = testing::random_state(rng, 3);
  const CMatrix got = assemble_operator(b, op, StateVector(3, psi), EstimatorMeta::exact());
  EXPECT_LE((got - dense_overlaps(b, op, psi).D).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(assemble_operator(b, parse_pauli_sum("1 0 ZZ"), StateVector(3, psi), EstimatorMeta::exact()),
               DimensionError);
}

TEST(HamiltonianExpectation, Examples) {
  const PauliSum h = parse_pauli_sum("1 0 Z");
  const MomentBasis b = MomentBasis::generate(h.strings(), 1);
  const OverlapMatrices m = assemble(b, h, StateVector::plus(1), EstimatorMeta::exact());
  EXPECT_NEAR(expectation_of_hamiltonian(CVector::Unit(2, 0), m), 0.0, 1e-15);
  CVector up(2), down(2);
  // (I + Z)|+> / sqrt 2 = |0>
  up << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  down << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  EXPECT_NEAR(expectation_of_hamiltonian(up, m), 1.0, 1e-15);
  EXPECT_NEAR(expectation_of_hamiltonian(down, m), -1.0, 1e-15);
  EXPECT_THROW(expectation_of_hamiltonian(CVector::Zero(2), m), ArgumentError);
}

TEST(Sampled, ConvergesToExactAndIsDeterministic) {
  ModelSpec spec;
  spec.family = ModelFamily::Ising;
  spec.num_qubits = 3;
  const PauliSum h = build_model(spec);
  const MomentBasis b = MomentBasis::generate(h.strings(), 1);
  const StateVector psi = build_hardware_efficient_state(CircuitSpec::random(3, 3, 9));
  const OverlapMatrices exact = assemble(b, h, psi, EstimatorMeta::exact());
  double prev = 1e9;
  for (std::uint64_t shots : {100u, 10000u, 1000000u}) {
    const OverlapMatrices s = assemble(b, h, psi, EstimatorMeta::sampled(shots, 77));
    const double err = (s.E - exact.E).cwiseAbs().maxCoeff();
    EXPECT_LT(err, prev);
    // 5 sigma on the worst of a few dozen strings
    EXPECT_LT(err, 5.0 / std::sqrt(static_cast<double>(shots)));
    prev = err;
    const OverlapMatrices again = assemble(b, h, psi, EstimatorMeta::sampled(shots, 77));
    EXPECT_EQ(again.E, s.E);
    EXPECT_EQ(again.D, s.D);
  }
  EXPECT_THROW(assemble(b, h, psi, EstimatorMeta::sampled(0, 1)), ArgumentError);
}

TEST(MatrixIo, RoundTripIsExact) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  CMatrix m(3, 4);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = {g(rng), g(rng)};
  std::stringstream ss;
  write_matrix(ss, m);
  EXPECT_EQ(read_matrix(ss), m);
  std::istringstream bad("2 2\n1 0 0 0\n1 0");
  EXPECT_THROW(read_matrix(bad), ParseError);
}

}  // namespace
}  // namespace qas
