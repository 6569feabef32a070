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
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "dense_oracle.hpp"
#include "qas/errors.hpp"
#include "qas/hamiltonians.hpp"
#include "qas/moment_basis.hpp"

namespace qas {
namespace {

PauliString P(const char* ops) { return PauliString::from_ops(ops); }

std::vector<std::string> label_strings(const MomentBasis& b) {
  std::vector<std::string> out;
  for (const auto& l : b.labels()) out.push_back(l.ops_string());
  return out;
}

// Enumerate every word of length <= order over the generators and strip phases
// by reading the operator pattern off the dense matrix support.
std::set<std::string> brute_force_span(const std::vector<PauliString>& gens, std::size_t order) {
  const std::size_t n = gens.front().num_qubits();
  std::set<std::string> out;
  std::vector<std::size_t> word;
  auto visit = [&](auto&& self, std::size_t depth) -> void {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (std::size_t k : word) m = testing::dense_matrix(gens[k]) * m;
    // identify the string by trace overlap with every candidate
    std::string found;
    const std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total && found.empty(); ++code) {
      std::string ops(n, 'I');
      for (std::size_t q = 0; q < n; ++q) ops[q] = "IXYZ"[(code >> (2 * q)) & 3];
      const Eigen::MatrixXcd c = testing::dense_matrix(PauliString::from_ops(ops));
      if (std::abs((c.adjoint() * m).trace()) > 0.5) found = ops;
    }
    out.insert(found);
    if (depth == order) return;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      word.push_back(k);
      self(self, depth + 1);
      word.pop_back();
    }
  };
  visit(visit, 0);
  return out;
}

TEST(MomentBasis, SingleZExample) {
  const MomentBasis b = MomentBasis::generate({P("Z")}, 1);
  EXPECT_EQ(label_strings(b), (std::vector<std::string>{"I", "Z"}));
  ASSERT_TRUE(b.closed_at().has_value());
  EXPECT_EQ(*b.closed_at(), 1u);
  const MomentBasis b5 = MomentBasis::generate({P("Z")}, 5);
  EXPECT_EQ(label_strings(b5), label_strings(b));
  EXPECT_EQ(*b5.closed_at(), 1u);
}

TEST(MomentBasis, OrderZeroIsIdentityOnly) {
  const MomentBasis b = MomentBasis::generate({P("XX"), P("ZI")}, 0);
  EXPECT_EQ(label_strings(b), (std::vector<std::string>{"II"}));
  EXPECT_FALSE(b.closed_at().has_value());
}

TEST(MomentBasis, NineRandomStringsStayWithinGroupSize) {
  std::mt19937_64 rng(123);
  std::vector<PauliString> gens;
  for (int k = 0; k < 9; ++k) gens.push_back(testing::random_string(rng, 10, false));
  const MomentBasis b = MomentBasis::generate(gens, 9);
  EXPECT_LE(b.size(), 512u);
  ASSERT_TRUE(b.closed_at().has_value());
  EXPECT_LE(*b.closed_at(), 9u);
}

TEST(MomentBasis, InputErrors) {
  EXPECT_THROW(MomentBasis::generate({}, 1), ArgumentError);
  EXPECT_THROW(MomentBasis::generate({P("X"), P("XX")}, 1), DimensionError);
}

TEST(MomentBasis, MatchesBruteForceEnumeration) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t order = trial % 3;
    std::vector<PauliString> gens;
    for (int k = 0; k < 1 + trial % 3; ++k) gens.push_back(testing::random_string(rng, n));
    const MomentBasis b = MomentBasis::generate(gens, order);
    const auto labels = label_strings(b);
    const std::set<std::string> got(labels.begin(), labels.end());
    ASSERT_EQ(got.size(), labels.size()) << "duplicate labels";
    ASSERT_EQ(got, brute_force_span(gens, order));
  }
}

TEST(MomentBasis, LowerOrderIsPrefixAndClosureIsSound) {
  ModelSpec spec;
  spec.family = ModelFamily::Ising;
  spec.num_qubits = 4;
  const auto gens = build_model(spec).strings();
  std::vector<std::string> prev;
  std::optional<std::size_t> closed;
  for (std::size_t k = 0; k <= 6; ++k) {
    const MomentBasis b = MomentBasis::generate(gens, k);
    const auto labels = label_strings(b);
    ASSERT_GE(labels.size(), prev.size());
    ASSERT_TRUE(std::equal(prev.begin(), prev.end(), labels.begin()));
    for (std::size_t level = 0; level <= k; ++level) ASSERT_LE(b.level_start(level), b.size());
    if (b.closed_at()) {
      if (closed) EXPECT_EQ(*closed, *b.closed_at());
      closed = b.closed_at();
      // closed: every product with a generator is already a label
      std::set<std::string> all(labels.begin(), labels.end());
      for (const auto& l : b.labels()) {
        for (const auto& g : gens) ASSERT_TRUE(all.count(pauli_mul(g, l).ops_string()));
      }
    }
    prev = labels;
  }
}

TEST(TaylorResidual, SingleZPlusStateIsCaptured) {
  const PauliSum h = parse_pauli_sum("1 0 Z");
  const MomentBasis b = MomentBasis::generate(h.strings(), 1);
  EXPECT_LE(taylor_span_residual(h, StateVector::plus(1), b, 0.5, 1), 1e-12);
  EXPECT_THROW(taylor_span_residual(h, StateVector::plus(1), b, 0.5, 2), ArgumentError);
}

// The order-K Taylor polynomial of the propagator lies in the order-K span.
TEST(TaylorResidual, IsingPolynomialLiesInSpan) {
  ModelSpec spec;
  spec.family = ModelFamily::Ising;
  spec.num_qubits = 4;
  const PauliSum h = build_model(spec);
  const StateVector psi = StateVector::plus(4);
  const MomentBasis b0 = MomentBasis::generate(h.strings(), 0);
  EXPECT_LE(taylor_span_residual(h, psi, b0, 0.5, 0), 1e-12);
  const MomentBasis b1 = MomentBasis::generate(h.strings(), 1);
  EXPECT_LE(taylor_span_residual(h, psi, b1, 0.5, 1), 1e-12);
  // second order Taylor needs level 2 states
  const MomentBasis b2 = MomentBasis::generate(h.strings(), 2);
  EXPECT_LE(taylor_span_residual(h, psi, b2, 0.5, 2), 1e-12);
  const MomentBasis b3 = MomentBasis::generate(h.strings(), 3);
  EXPECT_LE(taylor_span_residual(h, psi, b3, 2.0, 3), 1e-12);
}

TEST(Realize, StatesAreLabelsAppliedToReference) {
  const MomentBasis b = MomentBasis::generate({P("XZ"), P("YY")}, 2);
  const StateVector psi = StateVector::plus(2);
  const auto states = realize_states(b, psi);
  ASSERT_EQ(states.size(), b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    const CVector expected = testing::dense_matrix(b.labels()[i]) * psi.amplitudes();
    EXPECT_LT((states[i].amplitudes() - expected).norm(), 1e-14);
  }
  EXPECT_EQ(dump_basis(b).substr(0, 3), "II\n");
}

}  // namespace
}  // namespace qas
