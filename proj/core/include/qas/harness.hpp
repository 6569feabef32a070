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
 * Configuration-driven experiment pipeline: model and reference state,
 * moment basis, overlap assembly, then integration. Assembly always finishes
 * before integration starts; there is no feedback between the two.
 *
 * Configs are JSON documents; see README.md for the key reference.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qas/evolvers.hpp"
#include "qas/hamiltonians.hpp"
#include "qas/moment_basis.hpp"
#include "qas/overlaps.hpp"
#include "qas/state.hpp"

namespace qas {

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "QAS_OUTPUT_DIR";

struct InitialStateSpec {
  enum class Kind { PlusProduct, ZeroProduct, HardwareEfficient, GroundStateOf, File };
  Kind kind = Kind::ZeroProduct;
  std::size_t depth = 0;                                   // hardware-efficient
  std::uint64_t seed = 0;                                  // hardware-efficient
  EntanglerTopology topology = EntanglerTopology::Chain;   // hardware-efficient
  std::optional<ModelSpec> model;                          // ground-state-of
  std::string path;                                        // file: "re im" per line
};

enum class Backend { Auto, Statevector, Product };

struct NamedOperator {
  std::string name;
  PauliSum op;
};

struct OutputSpec {
  std::string dir;  // empty: $QAS_OUTPUT_DIR, then "qas_output"
  std::string prefix = "trajectory";
  bool write_alphas = false;
};

struct ExperimentConfig {
  std::string name = "experiment";
  ModelSpec model;
  InitialStateSpec initial_state;
  std::vector<std::size_t> orders{1};  // one run per moment order K
  EvolutionMode mode = EvolutionMode::Real;
  IntegratorConfig integrator;
  EstimatorMeta estimator;
  std::vector<NamedOperator> observables;
  Backend backend = Backend::Auto;
  /// Compare against dense exact evolution (fidelity, exact observables).
  bool oracle = false;
  /// Assemble F and record epsilon_t.
  bool error_monitor = false;
  OutputSpec output;

  /// Throws ConfigError with the offending field path.
  void validate() const;
};

/// Parses a JSON config. `overrides` are "dotted.key=value" strings applied
/// before parsing; values are read as JSON when possible, else as strings.
ExperimentConfig parse_config(std::string_view json_text, const std::vector<std::string>& overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});

struct OrderResult {
  std::size_t order = 0;
  std::size_t basis_size = 0;
  std::optional<std::size_t> closed_at;
  std::size_t distinct_strings = 0;
  Trajectory trajectory;
  std::optional<double> ground_energy;  // imaginary mode with oracle
  std::filesystem::path csv_path;
};

struct RunResult {
  std::vector<OrderResult> orders;
};

struct RunOptions {
  bool write_files = true;
  std::ostream* log = nullptr;  // one summary line per order
};

/// Runs every moment order in `config.orders`; writes <prefix>_K<k>.csv and a
/// JSON sidecar per order into the output directory.
RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

/// run() for a config whose initial state is the ground state of another model.
RunResult quench(const ExperimentConfig& config, const RunOptions& options = {});

/// Builds the reference state described by the config (model size sets N).
ReferenceState prepare_reference_state(const ExperimentConfig& config);

struct Preset {
  std::string name;
  std::string description;
  std::string json;
};

const std::vector<Preset>& list_presets();
/// Throws ConfigError for an unknown name.
const Preset& find_preset(std::string_view name);

}  // namespace qas
