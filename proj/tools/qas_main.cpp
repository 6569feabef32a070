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

// qas: run moment-basis simulations from JSON configs or built-in presets.
//
//   qas run <config.json> [--out DIR] [--set key=value ...]
//   qas preset <name> [--out DIR] [--set key=value ...] [--print-config]
//   qas list-presets
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qas/errors.hpp"
#include "qas/harness.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int execute(qas::ExperimentConfig config) {
  qas::RunOptions options;
  options.log = &std::cout;
  qas::run(config, options);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-basis quantum dynamics simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string preset_name;
  std::string out_dir;
  std::vector<std::string> overrides;
  bool print_config = false;

  auto* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON config file");
  run_cmd->add_option("config", config_path, "Config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  run_cmd->add_option("--set", overrides, "Override a config key, e.g. --set integrator.dt=1e-4");

  auto* preset_cmd = app.add_subcommand("preset", "Run a built-in preset");
  preset_cmd->add_option("name", preset_name, "Preset name (see list-presets)")->required();
  preset_cmd->add_option("--out", out_dir, "Output directory (overrides output.dir)");
  preset_cmd->add_option("--set", overrides, "Override a config key");
  preset_cmd->add_flag("--print-config", print_config, "Print the preset JSON and exit");

  auto* list_cmd = app.add_subcommand("list-presets", "List built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*list_cmd) {
      for (const auto& p : qas::list_presets()) std::cout << p.name << "\t" << p.description << '\n';
      return 0;
    }
    if (!out_dir.empty()) overrides.push_back("output.dir=\"" + out_dir + "\"");
    if (*run_cmd) return execute(qas::load_config(config_path, overrides));
    const qas::Preset& preset = qas::find_preset(preset_name);
    if (print_config) {
      std::cout << preset.json << '\n';
      return 0;
    }
    return execute(qas::parse_config(preset.json, overrides));
  } catch (const qas::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qas::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
