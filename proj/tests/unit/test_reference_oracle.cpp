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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qas/errors.hpp"
#include "qas/hamiltonians.hpp"
#include "qas/reference_oracle.hpp"

namespace qas {
namespace {

ModelSpec ising(std::size_t n, double J, double h) {
  ModelSpec s;
  s.family = ModelFamily::Ising;
  s.num_qubits = n;
  s.J = J;
  s.h = h;
  return s;
}

TEST(DenseOperator, SingleQubitExamples) {
  const DenseOperator z = dense_from_pauli_sum(parse_pauli_sum("1 0 Z"));
  CMatrix zm = CMatrix::Zero(2, 2);
  zm.diagonal() << 1, -1;
  EXPECT_EQ(z.matrix, zm);
  EXPECT_TRUE(z.hermitian);
  const DenseOperator x = dense_from_pauli_sum(parse_pauli_sum("1 0 X"));
  CMatrix xm(2, 2);
  xm << 0, 1, 1, 0;
  EXPECT_EQ(x.matrix, xm);
  EXPECT_FALSE(dense_from_pauli_sum(parse_pauli_sum("0 1 X")).hermitian);
}

TEST(DenseOperator, IsingTwoQubitsByHand) {
  const DenseOperator h = dense_from_pauli_sum(build_model(ising(2, 1, 1)));
  // 0.5 XX + 0.5 ZI + 0.5 IZ in the |00>,|01>,|10>,|11> basis
  CMatrix expected(4, 4);
  expected << 1.0, 0, 0, 0.5,
              0, 0, 0.5, 0,
              0, 0.5, 0, 0,
              0.5, 0, 0, -1.0;
  EXPECT_LT((h.matrix - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DenseOperator, MatchesKroneckerOracle) {
  std::mt19937_64 rng(44);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 5;
    std::vector<PauliTerm> terms;
    for (int k = 0; k < 5; ++k) terms.push_back({Complex(g(rng), g(rng)), testing::random_string(rng, n, false)});
    const PauliSum h(n, terms);
    ASSERT_LT((dense_from_pauli_sum(h).matrix - testing::dense_matrix(h)).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(DenseOperator, SizeGuard) {
  ModelSpec s;
  s.family = ModelFamily::ZZPair;
  s.num_qubits = kMaxDenseOperatorQubits + 1;
  EXPECT_THROW(dense_from_pauli_sum(build_model(s)), ResourceError);
}

TEST(ExactEvolve, SingleQubitCosine) {
  const DenseOperator h = dense_from_pauli_sum(parse_pauli_sum("1 0 Z"));
  const StateVector plus = StateVector::plus(1);
  const std::vector<double> times{0.0, 0.3, 1.0, 2.5};
  const auto states = exact_evolve(h, plus, times);
  EXPECT_LT((states[0].amplitudes() - plus.amplitudes()).norm(), 1e-15);
  for (std::size_t k = 0; k < times.size(); ++k) {
    EXPECT_NEAR(expectation_pauli(states[k], PauliString::from_ops("X")).real(), std::cos(2 * times[k]), 1e-12);
  }
  EXPECT_THROW(exact_evolve(dense_from_pauli_sum(parse_pauli_sum("0 1 X")), plus, times), DataError);
}

TEST(ExactEvolveProperties, UnitaryAndComposable) {
  std::mt19937_64 rng(8);
  const DenseOperator h = dense_from_pauli_sum(build_model(ising(6, 0.7, -1.3)));
  const StateVector psi0(6, testing::random_state(rng, 6));
  const ExactPropagator u(h, psi0);
  const StateVector at_t1 = u.at(0.8);
  const StateVector composed = ExactPropagator(h, at_t1).at(1.7);
  EXPECT_LT((composed.amplitudes() - u.at(2.5).amplitudes()).norm(), 1e-9);
  for (double t : {0.0, 1.0, 10.0, 100.0}) EXPECT_NEAR(u.at(t).amplitudes().norm(), 1.0, 1e-10);
  // against a truncated Taylor series of the Kronecker oracle, 100 steps of 0.01
  const Eigen::MatrixXcd hm = testing::dense_matrix(build_model(ising(6, 0.7, -1.3)));
  CVector v = psi0.amplitudes();
  for (int k = 0; k < 100; ++k) {
    CVector term = v;
    for (int p = 1; p <= 12; ++p) {
      term = (Complex(0.0, -0.01) / static_cast<double>(p)) * (hm * term);
      v += term;
    }
  }
  EXPECT_LT((u.at(1.0).amplitudes() - v).norm(), 1e-10);
}

TEST(GroundState, Examples) {
  const auto [ez, sz] = ground_state(dense_from_pauli_sum(parse_pauli_sum("1 0 Z")));
  EXPECT_NEAR(ez, -1.0, 1e-15);
  EXPECT_NEAR(std::abs(sz.amplitudes()[1]), 1.0, 1e-15);
  const auto [ex, sx] = ground_state(dense_from_pauli_sum(parse_pauli_sum("1 0 X")));
  EXPECT_NEAR(ex, -1.0, 1e-15);
  CVector minus(2);
  minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(minus.dot(sx.amplitudes())), 1.0, 1e-12);
  EXPECT_THROW(ground_state(dense_from_pauli_sum(parse_pauli_sum("0 1 X"))), DataError);
}

TEST(GroundState, IsingEightQubitsMatchesSecondSolver) {
  const PauliSum h = build_model(ising(8, 1.0, 0.5));
  const auto [energy, state] = ground_state(dense_from_pauli_sum(h));
  // second path: complex Hermitian solver on the Kronecker oracle matrix
  const Eigen::MatrixXcd hm = testing::dense_matrix(h);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(hm);
  double lowest = 1e300;
  for (Eigen::Index k = 0; k < ces.eigenvalues().size(); ++k) lowest = std::min(lowest, ces.eigenvalues()[k].real());
  EXPECT_NEAR(energy, lowest, 1e-10);
  EXPECT_NEAR(state.amplitudes().dot(hm * state.amplitudes()).real(), energy, 1e-10);
}

TEST(GroundState, VariationalBound) {
  std::mt19937_64 rng(90);
  const PauliSum h = build_model(ising(5, 1.0, 0.8));
  const double e0 = ground_state(dense_from_pauli_sum(h)).first;
  const Eigen::MatrixXcd hm = testing::dense_matrix(h);
  for (int k = 0; k < 100; ++k) {
    const CVector v = testing::random_state(rng, 5);
    ASSERT_LE(e0, v.dot(hm * v).real() + 1e-12);
  }
}

TEST(GroundState, DegenerateTieBreakIsDeterministic) {
  // ZZ has a doubly degenerate ground space
  const DenseOperator h = dense_from_pauli_sum(parse_pauli_sum("1 0 ZZ"));
  const StateVector a = ground_state(h).second;
  const StateVector b = ground_state(h).second;
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
}

TEST(Fidelity, Examples) {
  const MomentBasis b = MomentBasis::generate({PauliString::from_ops("Z")}, 1);
  const StateVector plus = StateVector::plus(1);
  EXPECT_NEAR(fidelity(plus, b, plus, CVector::Unit(2, 0)), 1.0, 1e-15);
  CVector minus(2);
  minus << 1 / std::sqrt(2.0), -1 / std::sqrt(2.0);
  // span of {|+>, Z|+>} is everything, so pick the single-label basis {I}
  const MomentBasis only_identity = MomentBasis::generate({PauliString::from_ops("Z")}, 0);
  EXPECT_NEAR(fidelity(StateVector(1, minus), only_identity, plus, CVector::Unit(1, 0)), 0.0, 1e-15);
  EXPECT_THROW(fidelity(plus, b, plus, CVector::Ones(2)), ArgumentError);
}

}  // namespace
}  // namespace qas
