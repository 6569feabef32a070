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
 * Overlap matrices E (Gram), D (Hamiltonian) and optional F (Hamiltonian
 * squared) in a moment basis. Every element is reduced to a single Pauli
 * string expectation on the reference state.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>

#include "qas/linalg.hpp"
#include "qas/moment_basis.hpp"
#include "qas/pauli.hpp"
#include "qas/state.hpp"

namespace qas {

struct EstimatorMeta {
  enum class Mode { Exact, Sampled };
  Mode mode = Mode::Exact;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  static EstimatorMeta exact() { return {}; }
  static EstimatorMeta sampled(std::uint64_t shots, std::uint64_t seed) { return {Mode::Sampled, shots, seed}; }
};

struct OverlapMatrices {
  std::size_t dim = 0;
  CMatrix E;
  CMatrix D;
  std::optional<CMatrix> F;
  EstimatorMeta estimator;
  /// Number of distinct Pauli expectations evaluated during assembly.
  std::size_t distinct_strings = 0;
};

/// bra^dagger * op * ket as one string with an exact phase.
PauliString reduce_to_single_string(const PauliString& bra, const PauliString& op, const PauliString& ket);

struct AssemblyOptions {
  bool with_F = false;
  /// Reuse one evaluation per distinct reduced string. Disabling only exists
  /// to check that caching does not change the result.
  bool use_cache = true;
};

OverlapMatrices assemble(const MomentBasis& basis, const PauliSum& h, const ReferenceState& psi,
                         const EstimatorMeta& estimator, const AssemblyOptions& options = {});

/// M_ij = <psi_i| op |psi_j> for an arbitrary Pauli sum, e.g. an observable.
CMatrix assemble_operator(const MomentBasis& basis, const PauliSum& op, const ReferenceState& psi,
                          const EstimatorMeta& estimator);

/// (alpha^dagger D alpha) / (alpha^dagger E alpha), real part.
double expectation_of_hamiltonian(const CVector& alpha, const OverlapMatrices& m);

/// Quadratic-form expectation (alpha^dagger M alpha) / (alpha^dagger E alpha).
Complex quadratic_expectation(const CVector& alpha, const CMatrix& M, const CMatrix& E);

/// Textual dump: "rows cols" header, then one row per line of "re im" pairs.
void write_matrix(std::ostream& out, const CMatrix& m);
CMatrix read_matrix(std::istream& in);

}  // namespace qas
