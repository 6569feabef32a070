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

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "qas/pauli.hpp"

namespace qas {

enum class ModelFamily { SingleZ, Ising, XXZ, FermionTunnel, RandomStrings, ZZPair, File };
enum class Boundary { Open, Periodic };

std::string_view to_string(ModelFamily f);
/// Accepts the hyphenated names used in config files ("single-z", "ising", ...).
ModelFamily model_family_from_string(std::string_view name);

struct ModelSpec {
  ModelFamily family = ModelFamily::SingleZ;
  std::size_t num_qubits = 1;
  double J = 1.0;
  /// Transverse field enters as +h/2 sum Z; pass a negative h for the -h/2 convention.
  double h = 1.0;
  double delta = 1.0;
  Boundary boundary = Boundary::Periodic;
  std::uint64_t seed = 0;
  std::size_t r = 0;
  std::string path;

  /// Throws ConfigError when a family's requirements are not met.
  void validate() const;
};

/// Builds the Pauli-sum Hamiltonian for `spec`.
///
///   single-z        Z on qubit 0
///   zz-pair         Z_0 Z_1
///   ising           J/2 sum X_i X_{i+1} + h/2 sum Z_i
///   xxz             1/2 sum (X_i X_{i+1} + Y_i Y_{i+1} + delta Z_i Z_{i+1})
///   fermion-tunnel  1/2 (X Z...Z X + Y Z...Z Y)
///   random-strings  sum of r distinct random non-identity strings, unit weight
///   file            parsed from spec.path
///
/// Periodic chains use the distinct bonds {i, i+1 mod N}, so N = 2 has a
/// single bond.
PauliSum build_model(const ModelSpec& spec);

}  // namespace qas
