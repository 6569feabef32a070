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
 * Phase-exact algebra of N-qubit Pauli strings and weighted Pauli sums.
 *
 * A string is stored in symplectic form: one x bit and one z bit per qubit,
 * packed into 64-bit words, with (x, z) = (0,0) I, (1,0) X, (1,1) Y, (0,1) Z.
 * The global prefactor is an exact power of i.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qas/linalg.hpp"

namespace qas {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/// Exact fourth root of unity, i^exponent.
class Phase {
 public:
  constexpr Phase() = default;
  constexpr explicit Phase(int exponent) : k_(static_cast<std::uint8_t>(((exponent % 4) + 4) % 4)) {}

  static constexpr Phase one() { return Phase(0); }
  static constexpr Phase i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  constexpr int exponent() const { return k_; }
  constexpr Phase conj() const { return Phase(4 - k_); }
  Complex value() const;

  friend constexpr Phase operator*(Phase a, Phase b) { return Phase(a.k_ + b.k_); }
  friend constexpr bool operator==(Phase a, Phase b) = default;

 private:
  std::uint8_t k_ = 0;
};

class PauliString {
 public:
  PauliString() = default;
  /// Identity on `num_qubits` qubits with phase +1.
  explicit PauliString(std::size_t num_qubits);

  /// Parses an ops string over {I,X,Y,Z}; character q acts on qubit q.
  static PauliString from_ops(std::string_view ops, Phase phase = Phase::one());
  /// Single-qubit operator `p` on `qubit`, identity elsewhere.
  static PauliString single(std::size_t num_qubits, std::size_t qubit, Pauli p);

  std::size_t num_qubits() const { return n_; }
  Phase phase() const { return phase_; }
  Pauli op(std::size_t qubit) const;
  void set_op(std::size_t qubit, Pauli p);
  void set_phase(Phase p) { phase_ = p; }

  PauliString with_phase(Phase p) const;
  /// Same operators, phase +1.
  PauliString stripped() const { return with_phase(Phase::one()); }
  /// Hermitian conjugate: operators unchanged, phase conjugated.
  PauliString dagger() const { return with_phase(phase_.conj()); }

  bool is_identity() const;  // ignores phase
  std::size_t weight() const;
  std::string ops_string() const;
  /// Ops string with a leading phase token, e.g. "-i*XZ".
  std::string to_string() const;

  bool span_equivalent(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
  }
  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.span_equivalent(b) && a.phase_ == b.phase_;
  }

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }

  /// Hash of the operator content only (phase ignored).
  std::size_t ops_hash() const;

  /// out = a * b without reallocating when out already has the right size.
  friend void multiply_into(PauliString& out, const PauliString& a, const PauliString& b);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  Phase phase_;
};

/// Exact product a * b. Throws DimensionError on qubit-count mismatch.
PauliString pauli_mul(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return pauli_mul(a, b); }

/// Left-to-right product of a non-empty chain.
PauliString multiply_chain(std::span<const PauliString> strings);

/// Hashes and compares on operator content only, for span-equivalence keyed maps.
struct OpsHash {
  std::size_t operator()(const PauliString& p) const { return p.ops_hash(); }
};
struct OpsEqual {
  bool operator()(const PauliString& a, const PauliString& b) const { return a.span_equivalent(b); }
};

/// Coefficients whose magnitude falls below this after merging are dropped.
inline constexpr double kCoefficientDropTolerance = 1e-12;

struct PauliTerm {
  Complex coefficient;
  PauliString string;  // phase +1
};

/// Weighted sum of phase-stripped Pauli strings with span-distinct terms.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t num_qubits) : n_(num_qubits) {}
  /// Merges span-equivalent strings (first-seen order), folds phases into
  /// coefficients and drops negligible terms.
  PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms);

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  bool is_hermitian() const;
  /// The phase-+1 strings of all terms, in order.
  std::vector<PauliString> strings() const;

 private:
  std::size_t n_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Reads one `<re> <im> <ops>` term per line; `#` comments and blank lines skipped.
PauliSum parse_pauli_sum(std::string_view text);
std::string serialize_pauli_sum(const PauliSum& h);

}  // namespace qas
