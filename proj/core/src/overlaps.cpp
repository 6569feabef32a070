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

#include "qas/overlaps.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

#include "qas/errors.hpp"

namespace qas {

namespace {

constexpr double kExactImagTolerance = 1e-8;

// Expectation values of phase-stripped strings on the reference state.
class ExpectationSource {
 public:
  ExpectationSource(const ReferenceState& psi, const EstimatorMeta& estimator, bool use_cache)
      : psi_(psi), estimator_(estimator), use_cache_(use_cache) {}

  /// <psi| s |psi> including the phase carried by `s`.
  Complex operator()(const PauliString& s) {
    return s.phase().value() * stripped_value(s);
  }

  std::size_t distinct() const { return cache_.size(); }

 private:
  double stripped_value(const PauliString& s) {
    if (!use_cache_) return evaluate(s.stripped());
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    PauliString key = s.stripped();
    const double v = evaluate(key);
    cache_.emplace(std::move(key), v);
    return v;
  }

  double evaluate(const PauliString& stripped) const {
    if (stripped.is_identity()) return 1.0;
    if (estimator_.mode == EstimatorMeta::Mode::Exact) {
      // Hermitian string: the imaginary part is roundoff.
      return expectation(psi_, stripped).real();
    }
    // Seeded by content so estimates do not depend on traversal order.
    const std::uint64_t seed = counter_hash(estimator_.seed, stripped.ops_hash(), 0x5eed);
    return sample_expectation(psi_, stripped, estimator_.shots, seed);
  }

  const ReferenceState& psi_;
  EstimatorMeta estimator_;
  bool use_cache_;
  std::unordered_map<PauliString, double, OpsHash, OpsEqual> cache_;
};

void check_inputs(const MomentBasis& basis, const PauliSum& op, const ReferenceState& psi,
                  const EstimatorMeta& estimator) {
  const std::size_t n = num_qubits(psi);
  if (basis.num_qubits() != n || op.num_qubits() != n) {
    throw DimensionError("basis, operator and reference state qubit counts differ");
  }
  if (estimator.mode == EstimatorMeta::Mode::Sampled && estimator.shots == 0) {
    throw ArgumentError("sampled estimator needs shots > 0");
  }
}

// M_ij = sum_k c_k <psi| label_i P_k label_j |psi>. Hermitian operators fill
// the upper triangle and mirror it.
CMatrix assemble_with(const MomentBasis& basis, const PauliSum& op, ExpectationSource& source) {
  const auto& labels = basis.labels();
  const auto m = static_cast<Eigen::Index>(labels.size());
  const bool hermitian = op.is_hermitian();
  CMatrix out = CMatrix::Zero(m, m);

  // label_i * P_k for the current row
  std::vector<PauliString> left(op.size());
  PauliString reduced;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < op.size(); ++k) {
      multiply_into(left[k], labels[static_cast<std::size_t>(i)], op.terms()[k].string);
    }
    for (Eigen::Index j = hermitian ? i : 0; j < m; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < op.size(); ++k) {
        multiply_into(reduced, left[k], labels[static_cast<std::size_t>(j)]);
        acc += op.terms()[k].coefficient * source(reduced);
      }
      out(i, j) = acc;
      if (hermitian && j != i) out(j, i) = std::conj(acc);
    }
    if (hermitian) out(i, i) = out(i, i).real();
  }
  return out;
}

PauliSum square(const PauliSum& h) {
  std::vector<PauliTerm> terms;
  terms.reserve(h.size() * h.size());
  for (const auto& a : h.terms()) {
    for (const auto& b : h.terms()) {
      terms.push_back({std::conj(a.coefficient) * b.coefficient, pauli_mul(a.string, b.string)});
    }
  }
  return PauliSum(h.num_qubits(), std::move(terms));
}

PauliSum identity_sum(std::size_t n) { return PauliSum(n, {{Complex(1.0), PauliString(n)}}); }

}  // namespace

PauliString reduce_to_single_string(const PauliString& bra, const PauliString& op, const PauliString& ket) {
  PauliString tmp = pauli_mul(bra.dagger(), op);
  return pauli_mul(tmp, ket);
}

OverlapMatrices assemble(const MomentBasis& basis, const PauliSum& h, const ReferenceState& psi,
                         const EstimatorMeta& estimator, const AssemblyOptions& options) {
  check_inputs(basis, h, psi, estimator);
  ExpectationSource source(psi, estimator, options.use_cache);
  OverlapMatrices out;
  out.dim = basis.size();
  out.estimator = estimator;
  out.E = assemble_with(basis, identity_sum(h.num_qubits()), source);
  out.D = assemble_with(basis, h, source);
  if (options.with_F) {
    // H^dagger H; for Hermitian H this is H^2.
    out.F = assemble_with(basis, square(h), source);
  }
  out.distinct_strings = source.distinct();
  return out;
}

CMatrix assemble_operator(const MomentBasis& basis, const PauliSum& op, const ReferenceState& psi,
                          const EstimatorMeta& estimator) {
  check_inputs(basis, op, psi, estimator);
  ExpectationSource source(psi, estimator, true);
  return assemble_with(basis, op, source);
}

Complex quadratic_expectation(const CVector& alpha, const CMatrix& M, const CMatrix& E) {
  if (alpha.size() != E.rows() || M.rows() != E.rows()) throw DimensionError("coefficient and matrix sizes differ");
  const Complex norm = alpha.dot(E * alpha);
  if (!(norm.real() > 0.0)) throw ArgumentError("coefficient vector has zero norm in the basis");
  return alpha.dot(M * alpha) / norm.real();
}

double expectation_of_hamiltonian(const CVector& alpha, const OverlapMatrices& m) {
  const Complex value = quadratic_expectation(alpha, m.D, m.E);
  if (m.estimator.mode == EstimatorMeta::Mode::Exact &&
      std::abs(value.imag()) > kExactImagTolerance * std::max(1.0, std::abs(value))) {
    throw DataError("energy has a non-negligible imaginary part");
  }
  return value.real();
}

void write_matrix(std::ostream& out, const CMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  char buf[80];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%s%.17g %.17g", j ? " " : "", m(i, j).real(), m(i, j).imag());
      out << buf;
    }
    out << '\n';
  }
}

CMatrix read_matrix(std::istream& in) {
  Eigen::Index rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw ParseError(1, "expected matrix dimensions");
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = 0, im = 0;
      if (!(in >> re >> im)) throw ParseError(static_cast<std::size_t>(i) + 2, "truncated matrix row");
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace qas
