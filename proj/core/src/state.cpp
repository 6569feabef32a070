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

#include "qas/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "qas/errors.hpp"

namespace qas {

namespace {

constexpr double kStateNormTolerance = 1e-10;
constexpr double kQubitNormTolerance = 1e-12;

void require_statevector_size(std::size_t n) {
  if (n == 0) throw ArgumentError("state needs at least one qubit");
  if (n > kMaxStatevectorQubits) {
    throw ResourceError("dense state on " + std::to_string(n) + " qubits exceeds the limit of " +
                        std::to_string(kMaxStatevectorQubits));
  }
}

struct DenseMasks {
  std::uint64_t x = 0;
  std::uint64_t z = 0;
  Complex prefactor;  // phase * i^{#Y}
};

// P = phase * prod_q i^{x_q z_q} X^{x_q} Z^{z_q}, since Y = i X Z.
DenseMasks dense_masks(const PauliString& p) {
  const std::size_t n = p.num_qubits();
  DenseMasks m;
  int y_count = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const Pauli op = p.op(q);
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    if (op == Pauli::X || op == Pauli::Y) m.x |= bit;
    if (op == Pauli::Z || op == Pauli::Y) m.z |= bit;
    if (op == Pauli::Y) ++y_count;
  }
  m.prefactor = (p.phase() * Phase(y_count)).value();
  return m;
}

double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return splitmix64(h ^ c);
}

StateVector::StateVector(std::size_t num_qubits, CVector amplitudes)
    : n_(num_qubits), amps_(std::move(amplitudes)) {
  require_statevector_size(n_);
  if (static_cast<std::size_t>(amps_.size()) != (std::size_t{1} << n_)) {
    throw DimensionError("statevector length " + std::to_string(amps_.size()) + " is not 2^" +
                         std::to_string(n_));
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kStateNormTolerance) {
    throw DataError("statevector is not normalized");
  }
}

StateVector StateVector::zero(std::size_t num_qubits) {
  require_statevector_size(num_qubits);
  CVector a = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << num_qubits));
  a[0] = 1.0;
  return StateVector(num_qubits, std::move(a));
}

StateVector StateVector::plus(std::size_t num_qubits) {
  require_statevector_size(num_qubits);
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  CVector a = CVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  return StateVector(num_qubits, std::move(a));
}

StateVector StateVector::normalized(std::size_t num_qubits, CVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DataError("cannot normalize a zero or non-finite vector");
  amplitudes /= norm;
  return StateVector(num_qubits, std::move(amplitudes));
}

ProductState::ProductState(std::vector<Qubit> qubits) : qubits_(std::move(qubits)) {
  if (qubits_.empty()) throw ArgumentError("product state needs at least one qubit");
  expect_.reserve(qubits_.size());
  for (std::size_t q = 0; q < qubits_.size(); ++q) {
    const auto& [a, b] = qubits_[q];
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > kQubitNormTolerance) {
      throw DataError("qubit " + std::to_string(q) + " of product state is not normalized");
    }
    const Complex ab = std::conj(a) * b;
    expect_.push_back({2.0 * ab.real(), 2.0 * ab.imag(), std::norm(a) - std::norm(b)});
  }
}

ProductState ProductState::zero(std::size_t num_qubits) {
  return ProductState(std::vector<Qubit>(num_qubits, Qubit{Complex(1.0), Complex(0.0)}));
}

ProductState ProductState::plus(std::size_t num_qubits) {
  const double s = 1.0 / std::sqrt(2.0);
  return ProductState(std::vector<Qubit>(num_qubits, Qubit{Complex(s), Complex(s)}));
}

double ProductState::single_expectation(std::size_t qubit, Pauli p) const {
  if (p == Pauli::I) return 1.0;
  return expect_[qubit][static_cast<int>(p) - 1];
}

StateVector ProductState::to_statevector() const {
  const std::size_t n = qubits_.size();
  require_statevector_size(n);
  CVector a = CVector::Ones(1);
  for (std::size_t q = 0; q < n; ++q) {
    CVector next(a.size() * 2);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      next[2 * i] = a[i] * qubits_[q][0];
      next[2 * i + 1] = a[i] * qubits_[q][1];
    }
    a = std::move(next);
  }
  return StateVector::normalized(n, std::move(a));
}

std::size_t num_qubits(const ReferenceState& state) {
  return std::visit([](const auto& s) { return s.num_qubits(); }, state);
}

CircuitSpec CircuitSpec::random(std::size_t num_qubits, std::size_t depth, std::uint64_t seed,
                                EntanglerTopology topology) {
  CircuitSpec spec;
  spec.num_qubits = num_qubits;
  spec.depth = depth;
  spec.seed = seed;
  spec.topology = topology;
  spec.angles.resize(depth * num_qubits);
  spec.axes.resize(depth * num_qubits);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t layer = 0; layer < depth; ++layer) {
    for (std::size_t q = 0; q < num_qubits; ++q) {
      const std::uint64_t angle_bits = counter_hash(seed, layer, q, 0);
      const std::uint64_t axis_bits = counter_hash(seed, layer, q, 1);
      // 53 high bits -> [0, 1)
      const double u = static_cast<double>(angle_bits >> 11) * 0x1.0p-53;
      spec.angles[layer * num_qubits + q] = kTwoPi * u;
      spec.axes[layer * num_qubits + q] = static_cast<RotationAxis>(axis_bits % 3);
    }
  }
  return spec;
}

void CircuitSpec::validate() const {
  if (num_qubits == 0) throw ArgumentError("circuit needs at least one qubit");
  if (angles.size() != depth * num_qubits || axes.size() != depth * num_qubits) {
    throw DimensionError("circuit angle/axis tables do not match depth x num_qubits");
  }
  for (double a : angles) {
    if (!std::isfinite(a)) throw ArgumentError("circuit angle is not finite");
  }
  for (auto ax : axes) {
    if (static_cast<int>(ax) > 2) throw ArgumentError("invalid rotation axis");
  }
}

StateVector build_hardware_efficient_state(const CircuitSpec& spec) {
  require_statevector_size(spec.num_qubits);
  spec.validate();
  const std::size_t n = spec.num_qubits;
  const std::size_t dim = std::size_t{1} << n;
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(dim));
  psi[0] = 1.0;

  for (std::size_t layer = 0; layer < spec.depth; ++layer) {
    for (std::size_t q = 0; q < n; ++q) {
      const double half = 0.5 * spec.angle(layer, q);
      const double c = std::cos(half), s = std::sin(half);
      // exp(-i theta sigma / 2)
      Complex u00, u01, u10, u11;
      switch (spec.axis(layer, q)) {
        case RotationAxis::X: u00 = c; u01 = Complex(0, -s); u10 = Complex(0, -s); u11 = c; break;
        case RotationAxis::Y: u00 = c; u01 = -s; u10 = s; u11 = c; break;
        case RotationAxis::Z: u00 = Complex(c, -s); u01 = 0; u10 = 0; u11 = Complex(c, s); break;
      }
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const Complex a0 = psi[static_cast<Eigen::Index>(i)];
        const Complex a1 = psi[static_cast<Eigen::Index>(i | bit)];
        psi[static_cast<Eigen::Index>(i)] = u00 * a0 + u01 * a1;
        psi[static_cast<Eigen::Index>(i | bit)] = u10 * a0 + u11 * a1;
      }
    }
    std::uint64_t pair_masks_count = (spec.topology == EntanglerTopology::Ring && n > 2) ? n : n - 1;
    for (std::size_t k = 0; k < pair_masks_count; ++k) {
      const std::size_t a = k, b = (k + 1) % n;
      const std::size_t mask = (std::size_t{1} << (n - 1 - a)) | (std::size_t{1} << (n - 1 - b));
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & mask) == mask) psi[static_cast<Eigen::Index>(i)] = -psi[static_cast<Eigen::Index>(i)];
      }
    }
  }
  return StateVector::normalized(n, std::move(psi));
}

Complex expectation_pauli(const StateVector& state, const PauliString& p) {
  if (p.num_qubits() != state.num_qubits()) {
    throw DimensionError("Pauli string and state qubit counts differ");
  }
  const DenseMasks m = dense_masks(p);
  const CVector& psi = state.amplitudes();
  const std::uint64_t dim = state.dim();
  Complex acc = 0.0;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const Complex term = std::conj(psi[static_cast<Eigen::Index>(b ^ m.x)]) * psi[static_cast<Eigen::Index>(b)];
    acc += parity_sign(m.z & b) * term;
  }
  return m.prefactor * acc;
}

Complex expectation_product(const ProductState& state, const PauliString& p) {
  if (p.num_qubits() != state.num_qubits()) {
    throw DimensionError("Pauli string and state qubit counts differ");
  }
  double value = 1.0;
  const auto xw = p.x_words();
  const auto zw = p.z_words();
  for (std::size_t w = 0; w < xw.size() && value != 0.0; ++w) {
    std::uint64_t support = xw[w] | zw[w];
    while (support != 0) {
      const int bit = std::countr_zero(support);
      support &= support - 1;
      const std::size_t q = w * 64 + static_cast<std::size_t>(bit);
      value *= state.single_expectation(q, p.op(q));
      if (value == 0.0) break;
    }
  }
  return p.phase().value() * value;
}

Complex expectation(const ReferenceState& state, const PauliString& p) {
  if (const auto* sv = std::get_if<StateVector>(&state)) return expectation_pauli(*sv, p);
  return expectation_product(std::get<ProductState>(state), p);
}

double sample_expectation(const ReferenceState& state, const PauliString& p, std::uint64_t shots,
                          std::uint64_t seed) {
  if (shots == 0) throw ArgumentError("sample_expectation needs at least one shot");
  if (p.phase() != Phase::one() && p.phase() != Phase::minus_one()) {
    throw ArgumentError("sampled Pauli observable must be Hermitian (phase +1 or -1)");
  }
  const double exact = expectation(state, p.stripped()).real();
  const double p_plus = std::clamp(0.5 * (1.0 + exact), 0.0, 1.0);
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::uint64_t> draws(shots, p_plus);
  const std::uint64_t plus_count = draws(rng);
  const double mean = (2.0 * static_cast<double>(plus_count) - static_cast<double>(shots)) /
                      static_cast<double>(shots);
  return p.phase() == Phase::one() ? mean : -mean;
}

CVector apply_pauli(const CVector& amplitudes, std::size_t num_qubits, const PauliString& p) {
  if (p.num_qubits() != num_qubits || static_cast<std::size_t>(amplitudes.size()) != (std::size_t{1} << num_qubits)) {
    throw DimensionError("Pauli string and amplitude vector dimensions differ");
  }
  const DenseMasks m = dense_masks(p);
  CVector out(amplitudes.size());
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(amplitudes.size()); ++b) {
    out[static_cast<Eigen::Index>(b ^ m.x)] = m.prefactor * parity_sign(m.z & b) * amplitudes[static_cast<Eigen::Index>(b)];
  }
  return out;
}

StateVector apply_pauli(const StateVector& state, const PauliString& p) {
  if (p.num_qubits() != state.num_qubits()) throw DimensionError("Pauli string and state qubit counts differ");
  return StateVector(state.num_qubits(), apply_pauli(state.amplitudes(), state.num_qubits(), p));
}

}  // namespace qas
