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

/**
 * @file
 * Dense ground truth for small systems: Hamiltonian matrices, exact time
 * evolution by eigendecomposition, ground states and ansatz fidelities.
 */

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qas/linalg.hpp"
#include "qas/moment_basis.hpp"
#include "qas/pauli.hpp"
#include "qas/state.hpp"

namespace qas {

inline constexpr std::size_t kMaxDenseOperatorQubits = 14;

struct DenseOperator {
  std::size_t num_qubits = 0;
  CMatrix matrix;
  bool hermitian = false;

  std::size_t dim() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Throws ResourceError above kMaxDenseOperatorQubits.
DenseOperator dense_from_pauli_sum(const PauliSum& h);

/// Ascending eigenpairs of a Hermitian operator.
struct Spectrum {
  RVector values;
  CMatrix vectors;
};
/// Throws DataError for non-Hermitian input.
Spectrum hermitian_spectrum(const DenseOperator& h);

/// exp(-iHt)|psi0> for many t from a single eigendecomposition.
class ExactPropagator {
 public:
  ExactPropagator(const DenseOperator& h, const StateVector& psi0);
  StateVector at(double t) const;

 private:
  std::size_t n_;
  Spectrum spectrum_;
  CVector coords_;  // V^dagger psi0
};

std::vector<StateVector> exact_evolve(const DenseOperator& h, const StateVector& psi0, const std::vector<double>& times);

/// Lowest eigenpair; ties resolve to the first eigenvector returned by the
/// solver and the global phase is fixed so the largest component is real positive.
std::pair<double, StateVector> ground_state(const DenseOperator& h);

/// sum_i alpha_i label_i |psi>, unnormalized.
CVector reconstruct_state(const MomentBasis& basis, const StateVector& psi, const CVector& alpha);

/// |<exact|phi(alpha)>|^2. Throws ArgumentError if phi is not normalized within 1e-6.
double fidelity(const StateVector& exact, const MomentBasis& basis, const StateVector& psi, const CVector& alpha);

}  // namespace qas
