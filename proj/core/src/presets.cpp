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

#include <string>
#include <vector>

#include "qas/errors.hpp"
#include "qas/harness.hpp"

namespace qas {

namespace {

std::vector<Preset> make_presets() {
  return {
      {"single-qubit", "single qubit, H = Z, |+>, K = 1; <X(t)> against cos 2t",
       R"({
  "name": "single-qubit",
  "model": {"family": "single-z", "N": 1},
  "initial_state": {"kind": "plus-product"},
  "backend": "statevector",
  "K": [1],
  "integrator": {"method": "rk4", "dt": 1e-3, "t_final": 8.0, "record_every": 1},
  "observables": [{"name": "sx", "site": 0, "op": "X"}],
  "oracle": true,
  "error_monitor": true,
  "output": {"prefix": "single_qubit"}
})"},
      {"barren-plateau", "N = 12 depth-200 hardware-efficient state, H = Z1 Z2, K = 1; <X1(t)>",
       R"({
  "name": "barren-plateau",
  "model": {"family": "zz-pair", "N": 12},
  "initial_state": {"kind": "hardware-efficient", "depth": 200, "seed": 2021},
  "K": [1],
  "integrator": {"method": "rk4", "dt": 1e-3, "t_final": 8.0, "record_every": 20},
  "observables": [{"name": "sx_1", "site": 0, "op": "X"}],
  "oracle": true,
  "output": {"prefix": "barren_plateau"}
})"},
      {"fermion-tunnel", "N = 10 deep circuit under first-last fermion tunnelling, K = 1..3; fidelity",
       R"({
  "name": "fermion-tunnel",
  "model": {"family": "fermion-tunnel", "N": 10},
  "initial_state": {"kind": "hardware-efficient", "depth": 200, "seed": 2021},
  "K": [1, 2, 3],
  "integrator": {"method": "rk4", "dt": 1e-3, "t_final": 8.0, "record_every": 50},
  "oracle": true,
  "output": {"prefix": "fermion_tunnel"}
})"},
      {"ising-real-time", "N = 10 deep circuit under the transverse Ising chain (J = h = 1), K = 1..3; fidelity",
       R"({
  "name": "ising-real-time",
  "model": {"family": "ising", "N": 10, "J": 1.0, "h": 1.0},
  "initial_state": {"kind": "hardware-efficient", "depth": 200, "seed": 2021},
  "K": [1, 2, 3],
  "integrator": {"method": "rk4", "dt": 1e-3, "t_final": 4.0, "record_every": 25},
  "oracle": true,
  "output": {"prefix": "ising"}
})"},
      {"random-strings-large-n", "N = 1000, r = 9 random strings from |0...0>, K = 9 on the product backend",
       R"({
  "name": "random-strings-large-n",
  "model": {"family": "random-strings", "N": 1000, "r": 9, "seed": 5},
  "initial_state": {"kind": "zero-product"},
  "backend": "product",
  "K": [9],
  "integrator": {"method": "rk4", "dt": 1e-3, "t_final": 4.0, "record_every": 20},
  "observables": [{"name": "z_1", "site": 0, "op": "Z"}, {"name": "x_1", "site": 0, "op": "X"}],
  "output": {"prefix": "random_strings"}
})"},
      {"imaginary-ising", "imaginary-time Ising chain (N = 10, J = h = 1) from a deep circuit, K = 1..3; energy",
       R"({
  "name": "imaginary-ising",
  "model": {"family": "ising", "N": 10, "J": 1.0, "h": 1.0},
  "initial_state": {"kind": "hardware-efficient", "depth": 200, "seed": 2021},
  "mode": "imaginary",
  "K": [1, 2, 3],
  "integrator": {"method": "rk4", "dt": 1e-3, "t_final": 60.0, "record_every": 100},
  "oracle": true,
  "output": {"prefix": "imaginary_ising"}
})"},
      {"quench-ising", "ground state of Ising (J = 1, h = 0.5) quenched to h = 2, N = 8, K = 1..4; fidelity",
       R"({
  "name": "quench-ising",
  "model": {"family": "ising", "N": 8, "J": 1.0, "h": 2.0},
  "initial_state": {"kind": "ground-state-of", "model": {"family": "ising", "N": 8, "J": 1.0, "h": 0.5}},
  "K": [1, 2, 3, 4],
  "integrator": {"method": "rk4", "dt": 1e-3, "t_final": 8.0, "record_every": 50},
  "oracle": true,
  "output": {"prefix": "quench_ising"}
})"},
      {"quench-xxz", "ground state of XXZ (delta = 0.5) quenched to delta = 2, N = 8, K = 1..3; fidelity",
       R"({
  "name": "quench-xxz",
  "model": {"family": "xxz", "N": 8, "delta": 2.0},
  "initial_state": {"kind": "ground-state-of", "model": {"family": "xxz", "N": 8, "delta": 0.5}},
  "K": [1, 2, 3],
  "integrator": {"method": "rk4", "dt": 1e-3, "t_final": 8.0, "record_every": 50},
  "oracle": true,
  "output": {"prefix": "quench_xxz"}
})"},
  };
}

}  // namespace

const std::vector<Preset>& list_presets() {
  static const std::vector<Preset> presets = make_presets();
  return presets;
}

const Preset& find_preset(std::string_view name) {
  for (const auto& p : list_presets()) {
    if (p.name == name) return p;
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace qas
