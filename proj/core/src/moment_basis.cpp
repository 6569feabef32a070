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

#include "qas/moment_basis.hpp"

#include <cmath>
#include <unordered_set>

#include "qas/errors.hpp"

namespace qas {

MomentBasis MomentBasis::generate(std::vector<PauliString> generators, std::size_t order) {
  if (generators.empty()) throw ArgumentError("moment basis needs at least one generator");
  const std::size_t n = generators.front().num_qubits();
  for (auto& g : generators) {
    if (g.num_qubits() != n) throw DimensionError("generators act on different qubit counts");
    g = g.stripped();
  }

  MomentBasis basis;
  basis.generators_ = std::move(generators);
  basis.order_ = order;
  basis.labels_.emplace_back(n);
  basis.level_starts_.push_back(0);

  std::unordered_set<PauliString, OpsHash, OpsEqual> seen;
  seen.insert(basis.labels_.front());

  std::size_t frontier_begin = 0;
  PauliString product;
  // One level past `order` is expanded only to detect closure.
  for (std::size_t level = 1; level <= order + 1; ++level) {
    const std::size_t frontier_end = basis.labels_.size();
    std::vector<PauliString> fresh;
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& g : basis.generators_) {
        multiply_into(product, g, basis.labels_[i]);
        product.set_phase(Phase::one());
        if (seen.insert(product).second) fresh.push_back(product);
      }
    }
    if (fresh.empty()) {
      basis.closed_at_ = level - 1;
      break;
    }
    if (level > order) break;
    basis.level_starts_.push_back(frontier_end);
    for (auto& s : fresh) basis.labels_.push_back(std::move(s));
    frontier_begin = frontier_end;
  }
  return basis;
}

std::size_t MomentBasis::level_start(std::size_t level) const {
  if (level > order_) throw ArgumentError("moment level exceeds basis order");
  return level < level_starts_.size() ? level_starts_[level] : labels_.size();
}

std::vector<StateVector> realize_states(const MomentBasis& basis, const StateVector& psi) {
  if (basis.num_qubits() != psi.num_qubits()) throw DimensionError("basis and state qubit counts differ");
  std::vector<StateVector> out;
  out.reserve(basis.size());
  for (const auto& label : basis.labels()) out.push_back(apply_pauli(psi, label));
  return out;
}

double taylor_span_residual(const PauliSum& h, const StateVector& psi, const MomentBasis& basis, double t,
                            std::size_t order) {
  if (order > basis.order()) throw ArgumentError("Taylor order exceeds the basis order");
  if (!std::isfinite(t)) throw ArgumentError("time must be finite");
  if (h.num_qubits() != psi.num_qubits() || basis.num_qubits() != psi.num_qubits()) {
    throw DimensionError("Hamiltonian, basis and state qubit counts differ");
  }
  const std::size_t n = psi.num_qubits();

  // gamma = sum_p (-iHt)^p / p! |psi>
  CVector term = psi.amplitudes();
  CVector gamma = term;
  for (std::size_t p = 1; p <= order; ++p) {
    CVector h_term = CVector::Zero(term.size());
    for (const auto& [beta, string] : h.terms()) h_term += beta * apply_pauli(term, n, string);
    term = (Complex(0.0, -t) / static_cast<double>(p)) * h_term;
    gamma += term;
  }
  gamma.normalize();

  CMatrix states(static_cast<Eigen::Index>(psi.dim()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    states.col(static_cast<Eigen::Index>(i)) = apply_pauli(psi.amplitudes(), n, basis.labels()[i]);
  }
  Eigen::ColPivHouseholderQR<CMatrix> qr(states);
  qr.setThreshold(1e-10);
  const Eigen::Index rank = qr.rank();
  const CMatrix q = CMatrix(qr.householderQ()).leftCols(rank);
  const double captured = (q.adjoint() * gamma).squaredNorm();
  return std::max(0.0, 1.0 - captured);
}

std::string dump_basis(const MomentBasis& basis) {
  std::string out;
  for (const auto& label : basis.labels()) {
    out += label.ops_string();
    out += '\n';
  }
  return out;
}

}  // namespace qas
