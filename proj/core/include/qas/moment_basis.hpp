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
 * Cumulative K-moment basis: all distinct (phase-stripped) products of up to
 * K generator strings, generated breadth-first relative to a reference state.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qas/pauli.hpp"
#include "qas/state.hpp"

namespace qas {

class MomentBasis {
 public:
  /// Breadth-first expansion to order K. Label 0 is the identity; each later
  /// level multiplies every previous-level label by every generator and keeps
  /// strings not seen before, in first-seen order.
  static MomentBasis generate(std::vector<PauliString> generators, std::size_t order);

  const std::vector<PauliString>& generators() const { return generators_; }
  std::size_t order() const { return order_; }
  const std::vector<PauliString>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }
  std::size_t num_qubits() const { return labels_.front().num_qubits(); }
  /// Smallest K* with CS_{K*+1} == CS_{K*}, if it is <= order().
  std::optional<std::size_t> closed_at() const { return closed_at_; }
  /// Index of the first label introduced at moment level j (0 <= j <= order()).
  /// Levels past closure are empty, so their start equals size().
  std::size_t level_start(std::size_t level) const;

 private:
  std::vector<PauliString> generators_;
  std::size_t order_ = 0;
  std::vector<PauliString> labels_;
  std::vector<std::size_t> level_starts_;
  std::optional<std::size_t> closed_at_;
};

/// label_i |psi> for every label.
std::vector<StateVector> realize_states(const MomentBasis& basis, const StateVector& psi);

/// 1 - ||P gamma_K||^2, where gamma_K is the normalized order-K truncated Taylor
/// expansion of exp(-iHt)|psi> and P projects onto span{label_i |psi>}.
double taylor_span_residual(const PauliSum& h, const StateVector& psi, const MomentBasis& basis, double t,
                            std::size_t order);

/// One label per line in the I/X/Y/Z alphabet.
std::string dump_basis(const MomentBasis& basis);

}  // namespace qas
