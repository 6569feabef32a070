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
 * Reference states and their Pauli expectations: dense statevectors for small
 * N, factorized product states for large N, and a shot-noise sampler.
 *
 * Basis ordering: qubit 0 is the most significant bit of the amplitude index,
 * so dense operators are Kronecker products in qubit order.
 */

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "qas/linalg.hpp"
#include "qas/pauli.hpp"

namespace qas {

/// Largest qubit count for which a dense statevector may be allocated.
inline constexpr std::size_t kMaxStatevectorQubits = 26;

class StateVector {
 public:
  StateVector() = default;
  /// Takes ownership of `amplitudes` (length 2^N); throws if not normalized within 1e-10.
  StateVector(std::size_t num_qubits, CVector amplitudes);

  static StateVector zero(std::size_t num_qubits);
  static StateVector plus(std::size_t num_qubits);
  /// Normalizes `amplitudes` first; throws DataError for a zero vector.
  static StateVector normalized(std::size_t num_qubits, CVector amplitudes);

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }

 private:
  std::size_t n_ = 0;
  CVector amps_;
};

class ProductState {
 public:
  using Qubit = std::array<Complex, 2>;

  ProductState() = default;
  /// Each qubit vector must have unit norm within 1e-12.
  explicit ProductState(std::vector<Qubit> qubits);

  static ProductState zero(std::size_t num_qubits);
  static ProductState plus(std::size_t num_qubits);

  std::size_t num_qubits() const { return qubits_.size(); }
  const std::vector<Qubit>& qubits() const { return qubits_; }
  /// <q|sigma|q> for sigma in {X, Y, Z} on qubit q.
  double single_expectation(std::size_t qubit, Pauli p) const;

  /// Dense embedding; throws ResourceError above kMaxStatevectorQubits.
  StateVector to_statevector() const;

 private:
  std::vector<Qubit> qubits_;
  std::vector<std::array<double, 3>> expect_;  // <X>, <Y>, <Z> per qubit
};

using ReferenceState = std::variant<StateVector, ProductState>;

std::size_t num_qubits(const ReferenceState& state);

enum class RotationAxis : std::uint8_t { X = 0, Y = 1, Z = 2 };
enum class EntanglerTopology : std::uint8_t { Chain, Ring };

/// Layered hardware-efficient circuit: per layer one rotation per qubit, then
/// CZ on neighbouring pairs.
struct CircuitSpec {
  std::size_t num_qubits = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  EntanglerTopology topology = EntanglerTopology::Chain;
  std::vector<double> angles;       // depth x num_qubits, row-major
  std::vector<RotationAxis> axes;   // depth x num_qubits, row-major

  /// Angles uniform in [0, 2pi) and axes uniform over {x, y, z}, drawn from a
  /// counter-based generator keyed on (seed, layer, qubit).
  static CircuitSpec random(std::size_t num_qubits, std::size_t depth, std::uint64_t seed,
                            EntanglerTopology topology = EntanglerTopology::Chain);

  double angle(std::size_t layer, std::size_t qubit) const { return angles[layer * num_qubits + qubit]; }
  RotationAxis axis(std::size_t layer, std::size_t qubit) const { return axes[layer * num_qubits + qubit]; }
  void validate() const;
};

/// Runs the circuit on |0...0>. Throws ResourceError for N > kMaxStatevectorQubits.
StateVector build_hardware_efficient_state(const CircuitSpec& spec);

/// Exact <psi|P|psi>, phase of P included.
Complex expectation_pauli(const StateVector& state, const PauliString& p);
/// Product over qubits of single-qubit expectations times P's phase. O(N).
Complex expectation_product(const ProductState& state, const PauliString& p);
Complex expectation(const ReferenceState& state, const PauliString& p);

/// Sample mean of `shots` +-1 outcomes of measuring the Hermitian string `p`.
/// Deterministic in `seed`. Throws ArgumentError for shots == 0 or a non-real phase.
double sample_expectation(const ReferenceState& state, const PauliString& p, std::uint64_t shots,
                          std::uint64_t seed);

/// P|psi> for an arbitrary (not necessarily normalized) amplitude vector.
CVector apply_pauli(const CVector& amplitudes, std::size_t num_qubits, const PauliString& p);
StateVector apply_pauli(const StateVector& state, const PauliString& p);

/// Stateless 64-bit mixer used for reproducible counter-keyed randomness.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);

}  // namespace qas
