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
#include "qas/state.hpp"

namespace qas {
namespace {

PauliString P(const char* ops, Phase ph = Phase::one()) { return PauliString::from_ops(ops, ph); }

Complex dense_expectation(const CVector& psi, const PauliString& p) {
  return psi.dot(testing::dense_matrix(p) * psi);
}

TEST(Expectation, PlusAndZeroExamples) {
  const StateVector plus = StateVector::plus(1);
  EXPECT_NEAR(expectation_pauli(plus, P("X")).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(expectation_pauli(plus, P("Z"))), 0.0, 1e-15);
  const StateVector zero = StateVector::zero(2);
  EXPECT_NEAR(expectation_pauli(zero, P("ZZ")).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(expectation_pauli(zero, P("XI"))), 0.0, 1e-15);
  // the phase travels with the string
  EXPECT_NEAR(std::abs(expectation_pauli(zero, P("ZI", Phase::i())) - Complex(0, 1)), 0.0, 1e-15);
}

TEST(Expectation, QubitZeroIsMostSignificant) {
  // |10> has amplitude index 2
  CVector a = CVector::Zero(4);
  a[2] = 1.0;
  const StateVector s(2, a);
  EXPECT_NEAR(expectation_pauli(s, P("ZI")).real(), -1.0, 1e-15);
  EXPECT_NEAR(expectation_pauli(s, P("IZ")).real(), 1.0, 1e-15);
}

TEST(Expectation, StatevectorMatchesDenseMatrices) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const CVector psi = testing::random_state(rng, n);
    const PauliString p = testing::random_string(rng, n);
    ASSERT_LT(std::abs(expectation_pauli(StateVector(n, psi), p) - dense_expectation(psi, p)), 1e-12);
  }
}

TEST(Expectation, BackendsAgreeOnProductStates) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<ProductState::Qubit> qubits(n);
    for (auto& q : qubits) {
      q = {Complex(g(rng), g(rng)), Complex(g(rng), g(rng))};
      const double s = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
      q[0] /= s;
      q[1] /= s;
    }
    const ProductState prod(qubits);
    const StateVector sv = prod.to_statevector();
    for (int k = 0; k < 20; ++k) {
      const PauliString p = testing::random_string(rng, n);
      ASSERT_LT(std::abs(expectation_product(prod, p) - expectation_pauli(sv, p)), 1e-12) << p.to_string();
    }
  }
}

TEST(State, NormalizationIsChecked) {
  EXPECT_THROW(StateVector(1, CVector::Ones(2)), DataError);
  EXPECT_THROW(StateVector(2, CVector::Ones(2) / std::sqrt(2.0)), DimensionError);
  EXPECT_THROW(ProductState({{Complex(1.0), Complex(1.0)}}), DataError);
  EXPECT_THROW(expectation_pauli(StateVector::zero(2), P("Z")), DimensionError);
}

TEST(ApplyPauli, TwiceIsIdentityForHermitianStrings) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const StateVector psi(n, testing::random_state(rng, n));
    const PauliString p = testing::random_string(rng, n, false);
    const StateVector twice = apply_pauli(apply_pauli(psi, p), p);
    ASSERT_LT((twice.amplitudes() - psi.amplitudes()).norm(), 1e-13);
  }
}

TEST(ApplyPauli, MatchesDenseMatrix) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const CVector psi = testing::random_state(rng, n);
    const PauliString p = testing::random_string(rng, n);
    ASSERT_LT((apply_pauli(psi, n, p) - testing::dense_matrix(p) * psi).norm(), 1e-13);
  }
}

TEST(Sampler, ExactZeroConcentratesNearZero) {
  const ReferenceState zero = StateVector::zero(1);
  const double est = sample_expectation(zero, P("X"), 10000, 1);
  EXPECT_LE(std::abs(est), 0.05);
  EXPECT_DOUBLE_EQ(sample_expectation(zero, P("Z"), 100, 1), 1.0);
  EXPECT_DOUBLE_EQ(sample_expectation(zero, P("Z", Phase::minus_one()), 100, 1), -1.0);
}

TEST(Sampler, RejectsBadArguments) {
  const ReferenceState zero = StateVector::zero(1);
  EXPECT_THROW(sample_expectation(zero, P("Z"), 0, 1), ArgumentError);
  EXPECT_THROW(sample_expectation(zero, P("Z", Phase::i()), 10, 1), ArgumentError);
}

TEST(Sampler, DeterministicForSeed) {
  const ReferenceState s = ProductState::plus(3);
  EXPECT_EQ(sample_expectation(s, P("ZXZ"), 1000, 42), sample_expectation(s, P("ZXZ"), 1000, 42));
}

// RMS error scales like shots^-1/2: quadrupling the shot count halves it.
TEST(Sampler, RmsErrorHalvesWhenShotsQuadruple) {
  CVector a(2);
  a << std::cos(0.4), std::sin(0.4);
  const ReferenceState s = StateVector(1, a);
  const PauliString z = P("Z");
  const double exact = std::cos(0.8);
  const int reps = 2000;
  auto rms = [&](std::uint64_t shots, std::uint64_t base) {
    double acc = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double e = sample_expectation(s, z, shots, base + r) - exact;
      acc += e * e;
    }
    return std::sqrt(acc / reps);
  };
  const double r1 = rms(100, 1000);
  const double r4 = rms(400, 900000);
  const double expected1 = std::sqrt((1 - exact * exact) / 100.0);
  EXPECT_NEAR(r1, expected1, 3 * expected1 / std::sqrt(2.0 * reps));
  // ratio of two RMS estimates, each with relative sd ~ 1/sqrt(2 reps)
  EXPECT_NEAR(r1 / r4, 2.0, 2.0 * 3.0 * std::sqrt(2.0 / (2.0 * reps)));
}

TEST(HardwareEfficient, DepthZeroIsAllZeros) {
  const StateVector s = build_hardware_efficient_state(CircuitSpec::random(1, 0, 7));
  EXPECT_LT((s.amplitudes() - StateVector::zero(1).amplitudes()).norm(), 1e-15);
}

TEST(HardwareEfficient, DeterministicAndNormalized) {
  const auto spec = CircuitSpec::random(12, 200, 2021);
  const StateVector a = build_hardware_efficient_state(spec);
  const StateVector b = build_hardware_efficient_state(CircuitSpec::random(12, 200, 2021));
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NEAR(a.amplitudes().norm(), 1.0, 1e-10);
  const StateVector c = build_hardware_efficient_state(CircuitSpec::random(12, 200, 2022));
  EXPECT_GT((a.amplitudes() - c.amplitudes()).norm(), 1e-3);
}

// Single layer against explicit gate matrices.
TEST(HardwareEfficient, OneLayerMatchesDenseGates) {
  const auto spec = CircuitSpec::random(3, 1, 11, EntanglerTopology::Ring);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1, 1);
  for (std::size_t q = 0; q < 3; ++q) {
    const char axis = "XYZ"[static_cast<int>(spec.axis(0, q))];
    const double th = spec.angle(0, q);
    const Eigen::Matrix2cd r = std::cos(th / 2) * Eigen::Matrix2cd::Identity() -
                               Complex(0, std::sin(th / 2)) * testing::pauli_matrix(axis);
    u = testing::kron(u, r);
  }
  CVector psi = u.col(0);
  auto cz = [&](std::size_t a, std::size_t b) {
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      if (((i >> (2 - a)) & 1) && ((i >> (2 - b)) & 1)) psi[i] = -psi[i];
    }
  };
  cz(0, 1);
  cz(1, 2);
  cz(2, 0);
  const StateVector s = build_hardware_efficient_state(spec);
  EXPECT_LT((s.amplitudes() - psi).norm(), 1e-13);
}

TEST(HardwareEfficient, ValidatesSpec) {
  CircuitSpec bad = CircuitSpec::random(2, 2, 1);
  bad.angles.pop_back();
  EXPECT_THROW(bad.validate(), DimensionError);
  EXPECT_THROW(build_hardware_efficient_state(CircuitSpec::random(kMaxStatevectorQubits + 1, 1, 1)), ResourceError);
}

}  // namespace
}  // namespace qas
