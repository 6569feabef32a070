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

#include "qas/reference_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qas/errors.hpp"

namespace qas {

namespace {

constexpr double kOracleHermitianTolerance = 1e-10;
constexpr double kFidelityNormTolerance = 1e-6;

void require_hermitian(const DenseOperator& h) {
  if (!h.hermitian) throw DataError("operator is not Hermitian");
}

}  // namespace

DenseOperator dense_from_pauli_sum(const PauliSum& h) {
  const std::size_t n = h.num_qubits();
  if (n == 0) throw ArgumentError("operator needs at least one qubit");
  if (n > kMaxDenseOperatorQubits) {
    throw ResourceError("dense operator on " + std::to_string(n) + " qubits exceeds the limit of " +
                        std::to_string(kMaxDenseOperatorQubits));
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  DenseOperator out;
  out.num_qubits = n;
  out.matrix = CMatrix::Zero(dim, dim);
  CVector column = CVector::Zero(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    column.setZero();
    column[b] = 1.0;
    for (const auto& [beta, string] : h.terms()) {
      out.matrix.col(b) += beta * apply_pauli(column, n, string);
    }
  }
  out.hermitian = (out.matrix - out.matrix.adjoint()).cwiseAbs().maxCoeff() <= kOracleHermitianTolerance;
  return out;
}

Spectrum hermitian_spectrum(const DenseOperator& h) {
  require_hermitian(h);
  const CMatrix& a = h.matrix;
  const Eigen::Index dim = a.rows();
  Spectrum s;

  const CVector diag = a.diagonal();
  const bool diagonal = (a - CMatrix(diag.asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  if (diagonal) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return diag[x].real() < diag[y].real(); });
    s.values.resize(dim);
    s.vectors = CMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      s.values[k] = diag[order[static_cast<std::size_t>(k)]].real();
      s.vectors(order[static_cast<std::size_t>(k)], k) = 1.0;
    }
    return s;
  }

  if (a.imag().cwiseAbs().maxCoeff() == 0.0) {
    const RMatrix real_part = a.real();
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(real_part);
    if (eig.info() != Eigen::Success) throw DataError("eigendecomposition failed");
    s.values = eig.eigenvalues();
    s.vectors = eig.eigenvectors().cast<Complex>();
    return s;
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(a);
  if (eig.info() != Eigen::Success) throw DataError("eigendecomposition failed");
  s.values = eig.eigenvalues();
  s.vectors = eig.eigenvectors();
  return s;
}

ExactPropagator::ExactPropagator(const DenseOperator& h, const StateVector& psi0)
    : n_(psi0.num_qubits()), spectrum_(hermitian_spectrum(h)) {
  if (h.dim() != psi0.dim()) throw DimensionError("operator and state dimensions differ");
  coords_ = spectrum_.vectors.adjoint() * psi0.amplitudes();
}

StateVector ExactPropagator::at(double t) const {
  CVector phased(coords_.size());
  for (Eigen::Index k = 0; k < coords_.size(); ++k) {
    phased[k] = std::polar(1.0, -spectrum_.values[k] * t) * coords_[k];
  }
  return StateVector::normalized(n_, spectrum_.vectors * phased);
}

std::vector<StateVector> exact_evolve(const DenseOperator& h, const StateVector& psi0, const std::vector<double>& times) {
  const ExactPropagator prop(h, psi0);
  std::vector<StateVector> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(prop.at(t));
  return out;
}

std::pair<double, StateVector> ground_state(const DenseOperator& h) {
  const Spectrum s = hermitian_spectrum(h);
  CVector v = s.vectors.col(0);
  Eigen::Index pivot = 0;
  v.cwiseAbs().maxCoeff(&pivot);
  v *= std::polar(1.0, -std::arg(v[pivot]));
  return {s.values[0], StateVector::normalized(h.num_qubits, std::move(v))};
}

CVector reconstruct_state(const MomentBasis& basis, const StateVector& psi, const CVector& alpha) {
  if (basis.num_qubits() != psi.num_qubits()) throw DimensionError("basis and state qubit counts differ");
  if (static_cast<std::size_t>(alpha.size()) != basis.size()) throw DimensionError("coefficient vector size differs from basis size");
  CVector phi = CVector::Zero(static_cast<Eigen::Index>(psi.dim()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Complex a = alpha[static_cast<Eigen::Index>(i)];
    if (a == Complex(0.0)) continue;
    phi += a * apply_pauli(psi.amplitudes(), psi.num_qubits(), basis.labels()[i]);
  }
  return phi;
}

double fidelity(const StateVector& exact, const MomentBasis& basis, const StateVector& psi, const CVector& alpha) {
  if (exact.num_qubits() != psi.num_qubits()) throw DimensionError("exact and reference state qubit counts differ");
  const CVector phi = reconstruct_state(basis, psi, alpha);
  const double norm = phi.squaredNorm();
  if (std::abs(norm - 1.0) > kFidelityNormTolerance) {
    throw ArgumentError("ansatz state is not normalized (norm^2 = " + std::to_string(norm) + ")");
  }
  return std::clamp(std::norm(exact.amplitudes().dot(phi)), 0.0, 1.0);
}

}  // namespace qas
