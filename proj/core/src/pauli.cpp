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

#include "qas/pauli.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "qas/errors.hpp"

namespace qas {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

Pauli pauli_from_char(char c, bool& ok) {
  ok = true;
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: ok = false; return Pauli::I;
  }
}

void require_same_size(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("Pauli strings act on " + std::to_string(a.num_qubits()) + " and " +
                         std::to_string(b.num_qubits()) + " qubits");
  }
}

}  // namespace

char to_char(Pauli p) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

Complex Phase::value() const {
  static const Complex kValues[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kValues[k_];
}

PauliString::PauliString(std::size_t num_qubits)
    : n_(num_qubits), x_(word_count(num_qubits), 0), z_(word_count(num_qubits), 0) {}

PauliString PauliString::from_ops(std::string_view ops, Phase phase) {
  if (ops.empty()) throw ArgumentError("empty Pauli ops string");
  PauliString p(ops.size());
  for (std::size_t q = 0; q < ops.size(); ++q) {
    bool ok = false;
    Pauli op = pauli_from_char(ops[q], ok);
    if (!ok) throw ArgumentError(std::string("invalid Pauli character '") + ops[q] + "'");
    p.set_op(q, op);
  }
  p.phase_ = phase;
  return p;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, Pauli op) {
  if (qubit >= num_qubits) throw ArgumentError("qubit index out of range");
  PauliString p(num_qubits);
  p.set_op(qubit, op);
  return p;
}

Pauli PauliString::op(std::size_t qubit) const {
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  const bool x = x_[qubit / kWordBits] & bit;
  const bool z = z_[qubit / kWordBits] & bit;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliString::set_op(std::size_t qubit, Pauli p) {
  if (qubit >= n_) throw ArgumentError("qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (qubit % kWordBits);
  auto& xw = x_[qubit / kWordBits];
  auto& zw = z_[qubit / kWordBits];
  xw &= ~bit;
  zw &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) xw |= bit;
  if (p == Pauli::Z || p == Pauli::Y) zw |= bit;
}

PauliString PauliString::with_phase(Phase p) const {
  PauliString out = *this;
  out.phase_ = p;
  return out;
}

bool PauliString::is_identity() const {
  for (std::size_t w = 0; w < x_.size(); ++w) {
    if (x_[w] | z_[w]) return false;
  }
  return true;
}

std::size_t PauliString::weight() const {
  std::size_t count = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) count += std::popcount(x_[w] | z_[w]);
  return count;
}

std::string PauliString::ops_string() const {
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = to_char(op(q));
  return s;
}

std::string PauliString::to_string() const {
  static constexpr const char* kPrefix[] = {"+", "+i*", "-", "-i*"};
  return kPrefix[phase_.exponent()] + ops_string();
}

std::size_t PauliString::ops_hash() const {
  // splitmix64-style mixing of each word
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
  };
  for (std::size_t w = 0; w < x_.size(); ++w) {
    mix(x_[w]);
    mix(z_[w]);
  }
  return static_cast<std::size_t>(h);
}

void multiply_into(PauliString& out, const PauliString& a, const PauliString& b) {
  require_same_size(a, b);
  const std::size_t words = a.x_.size();
  out.n_ = a.n_;
  out.x_.resize(words);
  out.z_.resize(words);
  int exponent = a.phase_.exponent() + b.phase_.exponent();
  for (std::size_t w = 0; w < words; ++w) {
    const std::uint64_t x1 = a.x_[w], z1 = a.z_[w], x2 = b.x_[w], z2 = b.z_[w];
    // sigma^i sigma^j = i eps_ijk sigma^k for i != j
    const std::uint64_t plus = (x1 & ~z1 & x2 & z2)      // X Y = +i Z
                               | (x1 & z1 & ~x2 & z2)    // Y Z = +i X
                               | (~x1 & z1 & x2 & ~z2);  // Z X = +i Y
    const std::uint64_t minus = (x1 & z1 & x2 & ~z2)     // Y X = -i Z
                                | (~x1 & z1 & x2 & z2)   // Z Y = -i X
                                | (x1 & ~z1 & ~x2 & z2);  // X Z = -i Y
    exponent += std::popcount(plus) - std::popcount(minus);
    out.x_[w] = x1 ^ x2;
    out.z_[w] = z1 ^ z2;
  }
  out.phase_ = Phase(exponent);
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  PauliString out;
  multiply_into(out, a, b);
  return out;
}

PauliString multiply_chain(std::span<const PauliString> strings) {
  if (strings.empty()) throw ArgumentError("multiply_chain needs at least one string");
  PauliString acc = strings.front();
  PauliString scratch;
  for (std::size_t i = 1; i < strings.size(); ++i) {
    multiply_into(scratch, acc, strings[i]);
    std::swap(acc, scratch);
  }
  return acc;
}

PauliSum::PauliSum(std::size_t num_qubits, std::vector<PauliTerm> terms) : n_(num_qubits) {
  std::unordered_map<PauliString, std::size_t, OpsHash, OpsEqual> index;
  std::vector<PauliTerm> merged;
  for (auto& term : terms) {
    if (term.string.num_qubits() != n_) {
      throw DimensionError("Pauli sum term acts on " + std::to_string(term.string.num_qubits()) +
                           " qubits, expected " + std::to_string(n_));
    }
    const Complex c = term.coefficient * term.string.phase().value();
    PauliString key = term.string.stripped();
    auto [it, inserted] = index.try_emplace(key, merged.size());
    if (inserted) {
      merged.push_back({c, std::move(key)});
    } else {
      merged[it->second].coefficient += c;
    }
  }
  for (auto& term : merged) {
    if (std::abs(term.coefficient) >= kCoefficientDropTolerance) terms_.push_back(std::move(term));
  }
}

bool PauliSum::is_hermitian() const {
  for (const auto& t : terms_) {
    if (std::abs(t.coefficient.imag()) > kCoefficientDropTolerance) return false;
  }
  return true;
}

std::vector<PauliString> PauliSum::strings() const {
  std::vector<PauliString> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.string);
  return out;
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::vector<PauliTerm> terms;
  std::size_t num_qubits = 0;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    std::string re_tok, im_tok, ops, extra;
    if (!(fields >> re_tok >> im_tok >> ops)) {
      throw ParseError(line_no, "expected '<re> <im> <ops>'");
    }
    if (fields >> extra) throw ParseError(line_no, "unexpected trailing token '" + extra + "'");

    auto parse_real = [line_no](const std::string& tok) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw ParseError(line_no, "malformed coefficient '" + tok + "'");
      }
      return v;
    };
    const double re = parse_real(re_tok);
    const double im = parse_real(im_tok);

    for (char c : ops) {
      bool ok = false;
      pauli_from_char(c, ok);
      if (!ok) throw ParseError(line_no, std::string("invalid Pauli character '") + c + "'");
    }
    if (num_qubits == 0) {
      num_qubits = ops.size();
    } else if (ops.size() != num_qubits) {
      throw ParseError(line_no, "ops length " + std::to_string(ops.size()) +
                                    " differs from earlier length " + std::to_string(num_qubits));
    }
    terms.push_back({Complex(re, im), PauliString::from_ops(ops)});
  }
  if (terms.empty()) throw ParseError(line_no, "no terms found");
  return PauliSum(num_qubits, std::move(terms));
}

std::string serialize_pauli_sum(const PauliSum& h) {
  std::string out;
  char buf[96];
  for (const auto& t : h.terms()) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g ", t.coefficient.real(), t.coefficient.imag());
    out += buf;
    out += t.string.ops_string();
    out += '\n';
  }
  return out;
}

}  // namespace qas
