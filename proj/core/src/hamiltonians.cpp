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

#include "qas/hamiltonians.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qas/errors.hpp"
#include "qas/state.hpp"

namespace qas {

namespace {

struct FamilyName {
  ModelFamily family;
  std::string_view name;
};

constexpr FamilyName kFamilyNames[] = {
    {ModelFamily::SingleZ, "single-z"},         {ModelFamily::Ising, "ising"},
    {ModelFamily::XXZ, "xxz"},                  {ModelFamily::FermionTunnel, "fermion-tunnel"},
    {ModelFamily::RandomStrings, "random-strings"}, {ModelFamily::ZZPair, "zz-pair"},
    {ModelFamily::File, "file"},
};

std::vector<std::pair<std::size_t, std::size_t>> chain_bonds(std::size_t n, Boundary boundary) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  const std::size_t count = boundary == Boundary::Periodic ? n : n - 1;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = (i + 1) % n;
    if (i == j) continue;
    const auto key = std::minmax(i, j);
    if (seen.insert(key).second) bonds.emplace_back(i, j);
  }
  return bonds;
}

PauliString two_site(std::size_t n, std::size_t a, Pauli pa, std::size_t b, Pauli pb) {
  PauliString s(n);
  s.set_op(a, pa);
  s.set_op(b, pb);
  return s;
}

PauliSum random_strings(const ModelSpec& spec) {
  const std::size_t n = spec.num_qubits;
  std::unordered_set<PauliString, OpsHash, OpsEqual> seen;
  std::vector<PauliTerm> terms;
  std::uint64_t draw = 0;
  while (terms.size() < spec.r) {
    PauliString s(n);
    for (std::size_t q = 0; q < n; ++q) {
      s.set_op(q, static_cast<Pauli>(counter_hash(spec.seed, draw, q, 0x7a) & 3));
    }
    ++draw;
    if (s.is_identity() || !seen.insert(s).second) continue;
    terms.push_back({Complex(1.0), std::move(s)});
  }
  return PauliSum(n, std::move(terms));
}

}  // namespace

std::string_view to_string(ModelFamily f) {
  for (const auto& [family, name] : kFamilyNames) {
    if (family == f) return name;
  }
  return "unknown";
}

ModelFamily model_family_from_string(std::string_view name) {
  for (const auto& [family, fname] : kFamilyNames) {
    if (fname == name) return family;
  }
  throw ConfigError("unknown model family '" + std::string(name) + "'");
}

void ModelSpec::validate() const {
  if (num_qubits == 0) throw ConfigError("model.N must be >= 1");
  if (!std::isfinite(J) || !std::isfinite(h) || !std::isfinite(delta)) {
    throw ConfigError("model parameters must be finite");
  }
  switch (family) {
    case ModelFamily::ZZPair:
    case ModelFamily::FermionTunnel:
      if (num_qubits < 2) throw ConfigError("model.N must be >= 2 for " + std::string(to_string(family)));
      break;
    case ModelFamily::RandomStrings: {
      if (r == 0) throw ConfigError("model.r must be >= 1 for random-strings");
      // 4^N - 1 non-identity strings exist
      if (num_qubits < 32 && static_cast<double>(r) > std::pow(4.0, static_cast<double>(num_qubits)) - 1.0) {
        throw ConfigError("model.r exceeds the number of non-identity strings");
      }
      break;
    }
    case ModelFamily::File:
      if (path.empty()) throw ConfigError("model.path is required for the file family");
      break;
    default:
      break;
  }
}

PauliSum build_model(const ModelSpec& spec) {
  spec.validate();
  const std::size_t n = spec.num_qubits;
  std::vector<PauliTerm> terms;
  switch (spec.family) {
    case ModelFamily::SingleZ:
      terms.push_back({Complex(1.0), PauliString::single(n, 0, Pauli::Z)});
      break;
    case ModelFamily::ZZPair:
      terms.push_back({Complex(1.0), two_site(n, 0, Pauli::Z, 1, Pauli::Z)});
      break;
    case ModelFamily::Ising:
      for (const auto& [a, b] : chain_bonds(n, spec.boundary)) {
        terms.push_back({Complex(0.5 * spec.J), two_site(n, a, Pauli::X, b, Pauli::X)});
      }
      for (std::size_t q = 0; q < n; ++q) {
        terms.push_back({Complex(0.5 * spec.h), PauliString::single(n, q, Pauli::Z)});
      }
      break;
    case ModelFamily::XXZ:
      for (const auto& [a, b] : chain_bonds(n, spec.boundary)) {
        terms.push_back({Complex(0.5), two_site(n, a, Pauli::X, b, Pauli::X)});
        terms.push_back({Complex(0.5), two_site(n, a, Pauli::Y, b, Pauli::Y)});
        terms.push_back({Complex(0.5 * spec.delta), two_site(n, a, Pauli::Z, b, Pauli::Z)});
      }
      break;
    case ModelFamily::FermionTunnel: {
      for (Pauli end : {Pauli::X, Pauli::Y}) {
        PauliString s(n);
        s.set_op(0, end);
        for (std::size_t q = 1; q + 1 < n; ++q) s.set_op(q, Pauli::Z);
        s.set_op(n - 1, end);
        terms.push_back({Complex(0.5), std::move(s)});
      }
      break;
    }
    case ModelFamily::RandomStrings:
      return random_strings(spec);
    case ModelFamily::File: {
      std::ifstream in(spec.path);
      if (!in) throw ConfigError("cannot open Hamiltonian file '" + spec.path + "'");
      std::stringstream buffer;
      buffer << in.rdbuf();
      PauliSum loaded = parse_pauli_sum(buffer.str());
      if (loaded.num_qubits() != spec.num_qubits) {
        throw ConfigError("Hamiltonian file acts on " + std::to_string(loaded.num_qubits()) +
                          " qubits but model.N is " + std::to_string(spec.num_qubits));
      }
      return loaded;
    }
  }
  return PauliSum(n, std::move(terms));
}

}  // namespace qas
