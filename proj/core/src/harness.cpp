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

#include "qas/harness.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qas/errors.hpp"
#include "qas/reference_oracle.hpp"

namespace qas {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// JSON reading with field paths in every error message.

class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where() + "expected an object");
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  bool has(const std::string& key) const { return obj_.contains(key); }
  const json& raw(const std::string& key) const { return obj_.at(key); }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [key, _] : obj_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) throw ConfigError(field(key) + ": unknown key");
    }
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    return v.get<double>();
  }

  std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    throw ConfigError(field(key) + ": expected a non-negative integer");
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_boolean()) throw ConfigError(field(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
    return v.get<std::string>();
  }

  template <class Enum>
  Enum choice(const std::string& key, Enum fallback, std::initializer_list<std::pair<const char*, Enum>> options) const {
    if (!has(key)) return fallback;
    const std::string value = string(key, "");
    std::string allowed;
    for (const auto& [name, e] : options) {
      if (value == name) return e;
      allowed += allowed.empty() ? name : std::string(", ") + name;
    }
    throw ConfigError(field(key) + ": '" + value + "' is not one of " + allowed);
  }

 private:
  std::string where() const { return path_.empty() ? "" : path_ + ": "; }
  const json& obj_;
  std::string path_;
};

ModelSpec read_model(const json& obj, const std::string& path) {
  Reader r(obj, path);
  r.allow_only({"family", "N", "J", "h", "delta", "boundary", "seed", "r", "path"});
  ModelSpec spec;
  if (!r.has("family")) throw ConfigError(r.field("family") + ": required");
  try {
    spec.family = model_family_from_string(r.string("family", ""));
  } catch (const ConfigError& e) {
    throw ConfigError(r.field("family") + ": " + e.what());
  }
  if (!r.has("N")) throw ConfigError(r.field("N") + ": required");
  spec.num_qubits = r.unsigned_int("N", 0);
  spec.J = r.number("J", spec.J);
  spec.h = r.number("h", spec.h);
  spec.delta = r.number("delta", spec.delta);
  spec.boundary = r.choice("boundary", Boundary::Periodic, {{"periodic", Boundary::Periodic}, {"open", Boundary::Open}});
  spec.seed = r.unsigned_int("seed", 0);
  spec.r = r.unsigned_int("r", 0);
  spec.path = r.string("path", "");
  return spec;
}

json model_to_json(const ModelSpec& m) {
  json j{{"family", std::string(to_string(m.family))}, {"N", m.num_qubits}, {"J", m.J}, {"h", m.h},
         {"delta", m.delta}, {"boundary", m.boundary == Boundary::Periodic ? "periodic" : "open"}};
  if (m.family == ModelFamily::RandomStrings) {
    j["seed"] = m.seed;
    j["r"] = m.r;
  }
  if (m.family == ModelFamily::File) j["path"] = m.path;
  return j;
}

NamedOperator read_observable(const json& obj, const std::string& path, std::size_t n) {
  Reader r(obj, path);
  r.allow_only({"name", "pauli", "sum", "site", "op", "coefficient"});
  NamedOperator out;
  out.name = r.string("name", "");
  if (out.name.empty()) throw ConfigError(r.field("name") + ": required");
  if (out.name.find_first_of(",\n\"") != std::string::npos) {
    throw ConfigError(r.field("name") + ": must not contain commas, quotes or newlines");
  }
  const int forms = int(r.has("pauli")) + int(r.has("sum")) + int(r.has("site") || r.has("op"));
  if (forms != 1) throw ConfigError(path + ": give exactly one of 'pauli', 'sum' or 'site'+'op'");
  const double coefficient = r.number("coefficient", 1.0);
  try {
    if (r.has("pauli")) {
      const std::string ops = r.string("pauli", "");
      out.op = PauliSum(n, {{Complex(coefficient), PauliString::from_ops(ops)}});
    } else if (r.has("sum")) {
      out.op = parse_pauli_sum(r.string("sum", ""));
    } else {
      const std::size_t site = r.unsigned_int("site", 0);
      const std::string op = r.string("op", "");
      if (op.size() != 1 || std::string("IXYZ").find(op[0]) == std::string::npos) {
        throw ConfigError(r.field("op") + ": expected one of I, X, Y, Z");
      }
      if (site >= n) throw ConfigError(r.field("site") + ": exceeds model.N");
      PauliString s(n);
      s.set_op(site, static_cast<Pauli>(std::string("IXYZ").find(op[0])));
      out.op = PauliSum(n, {{Complex(coefficient), s}});
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const DimensionError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (out.op.num_qubits() != n) throw ConfigError(path + ": observable acts on a different number of qubits than the model");
  return out;
}

const char* kind_name(InitialStateSpec::Kind k) {
  switch (k) {
    case InitialStateSpec::Kind::PlusProduct: return "plus-product";
    case InitialStateSpec::Kind::ZeroProduct: return "zero-product";
    case InitialStateSpec::Kind::HardwareEfficient: return "hardware-efficient";
    case InitialStateSpec::Kind::GroundStateOf: return "ground-state-of";
    case InitialStateSpec::Kind::File: return "file";
  }
  return "unknown";
}

InitialStateSpec read_initial_state(const json& obj, const ModelSpec& model) {
  Reader r(obj, "initial_state");
  r.allow_only({"kind", "depth", "seed", "topology", "model", "path"});
  InitialStateSpec s;
  using Kind = InitialStateSpec::Kind;
  if (!r.has("kind")) throw ConfigError("initial_state.kind: required");
  s.kind = r.choice("kind", Kind::ZeroProduct,
                    {{"plus-product", Kind::PlusProduct},
                     {"zero-product", Kind::ZeroProduct},
                     {"hardware-efficient", Kind::HardwareEfficient},
                     {"ground-state-of", Kind::GroundStateOf},
                     {"file", Kind::File}});
  s.depth = r.unsigned_int("depth", 0);
  s.seed = r.unsigned_int("seed", 0);
  s.topology = r.choice("topology", EntanglerTopology::Chain,
                        {{"chain", EntanglerTopology::Chain}, {"ring", EntanglerTopology::Ring}});
  s.path = r.string("path", "");
  if (r.has("model")) {
    json sub = r.raw("model");
    if (sub.is_object() && !sub.contains("N")) sub["N"] = model.num_qubits;
    s.model = read_model(sub, "initial_state.model");
  }
  return s;
}

json initial_state_to_json(const InitialStateSpec& s) {
  json j{{"kind", kind_name(s.kind)}};
  switch (s.kind) {
    case InitialStateSpec::Kind::HardwareEfficient:
      j["depth"] = s.depth;
      j["seed"] = s.seed;
      j["topology"] = s.topology == EntanglerTopology::Chain ? "chain" : "ring";
      break;
    case InitialStateSpec::Kind::GroundStateOf:
      if (s.model) j["model"] = model_to_json(*s.model);
      break;
    case InitialStateSpec::Kind::File:
      j["path"] = s.path;
      break;
    default:
      break;
  }
  return j;
}

IntegratorConfig read_integrator(const json& obj) {
  Reader r(obj, "integrator");
  r.allow_only({"method", "dt", "t_final", "regularization_cutoff", "renormalize_each_step", "use_realified_solver",
                "record_every", "engine"});
  IntegratorConfig c;
  using Method = IntegratorConfig::Method;
  using Engine = IntegratorConfig::Engine;
  c.method = r.choice("method", Method::RK4, {{"rk4", Method::RK4}, {"explicit-euler", Method::ExplicitEuler}});
  c.dt = r.number("dt", c.dt);
  c.t_final = r.number("t_final", c.t_final);
  c.regularization_cutoff = r.number("regularization_cutoff", c.regularization_cutoff);
  if (r.has("renormalize_each_step")) c.renormalize_each_step = r.boolean("renormalize_each_step", false);
  c.use_realified_solver = r.boolean("use_realified_solver", false);
  c.record_every = r.unsigned_int("record_every", 1);
  c.engine = r.choice("engine", Engine::Auto,
                      {{"auto", Engine::Auto}, {"direct", Engine::Direct}, {"spectral", Engine::Spectral}});
  return c;
}

json integrator_to_json(const IntegratorConfig& c) {
  json j{{"method", c.method == IntegratorConfig::Method::RK4 ? "rk4" : "explicit-euler"},
         {"dt", c.dt},
         {"t_final", c.t_final},
         {"regularization_cutoff", c.regularization_cutoff},
         {"use_realified_solver", c.use_realified_solver},
         {"record_every", c.record_every}};
  if (c.renormalize_each_step) j["renormalize_each_step"] = *c.renormalize_each_step;
  switch (c.engine) {
    case IntegratorConfig::Engine::Auto: j["engine"] = "auto"; break;
    case IntegratorConfig::Engine::Direct: j["engine"] = "direct"; break;
    case IntegratorConfig::Engine::Spectral: j["engine"] = "spectral"; break;
  }
  return j;
}

EstimatorMeta read_estimator(const json& obj) {
  Reader r(obj, "estimator");
  r.allow_only({"mode", "shots", "seed"});
  EstimatorMeta e;
  e.mode = r.choice("mode", EstimatorMeta::Mode::Exact,
                    {{"exact", EstimatorMeta::Mode::Exact}, {"sampled", EstimatorMeta::Mode::Sampled}});
  e.shots = r.unsigned_int("shots", 0);
  e.seed = r.unsigned_int("seed", 0);
  return e;
}

json estimator_to_json(const EstimatorMeta& e) {
  if (e.mode == EstimatorMeta::Mode::Exact) return json{{"mode", "exact"}};
  return json{{"mode", "sampled"}, {"shots", e.shots}, {"seed", e.seed}};
}

void apply_override(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "': expected key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string value_text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(value_text);
  } catch (const json::parse_error&) {
    value = value_text;
  }
  json* node = &root;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty()) throw ConfigError("override '" + assignment + "': empty key segment");
    if (!node->is_object()) throw ConfigError("override '" + key + "': parent is not an object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

ExperimentConfig config_from_json(const json& root) {
  Reader r(root, "");
  r.allow_only({"name", "description", "model", "initial_state", "K", "mode", "integrator", "estimator", "observables",
                "backend", "oracle", "error_monitor", "output"});
  ExperimentConfig c;
  c.name = r.string("name", c.name);
  if (!r.has("model")) throw ConfigError("model: required");
  c.model = read_model(r.raw("model"), "model");
  // observables are parsed against N, so the model is checked first
  c.model.validate();
  if (!r.has("initial_state")) throw ConfigError("initial_state: required");
  c.initial_state = read_initial_state(r.raw("initial_state"), c.model);

  if (!r.has("K")) throw ConfigError("K: required");
  const json& k = r.raw("K");
  c.orders.clear();
  if (k.is_array()) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (!k[i].is_number_integer() || k[i].get<std::int64_t>() < 0) {
        throw ConfigError("K[" + std::to_string(i) + "]: expected a non-negative integer");
      }
      c.orders.push_back(k[i].get<std::size_t>());
    }
  } else if (k.is_number_integer() && k.get<std::int64_t>() >= 0) {
    c.orders.push_back(k.get<std::size_t>());
  } else {
    throw ConfigError("K: expected a non-negative integer or a list of them");
  }

  c.mode = r.choice("mode", EvolutionMode::Real, {{"real", EvolutionMode::Real}, {"imaginary", EvolutionMode::Imaginary}});
  if (r.has("integrator")) c.integrator = read_integrator(r.raw("integrator"));
  if (r.has("estimator")) c.estimator = read_estimator(r.raw("estimator"));
  if (r.has("observables")) {
    const json& obs = r.raw("observables");
    if (!obs.is_array()) throw ConfigError("observables: expected a list");
    for (std::size_t i = 0; i < obs.size(); ++i) {
      c.observables.push_back(read_observable(obs[i], "observables[" + std::to_string(i) + "]", c.model.num_qubits));
    }
  }
  c.backend = r.choice("backend", Backend::Auto,
                       {{"auto", Backend::Auto}, {"statevector", Backend::Statevector}, {"product", Backend::Product}});
  c.oracle = r.boolean("oracle", false);
  c.error_monitor = r.boolean("error_monitor", false);
  if (r.has("output")) {
    Reader o(r.raw("output"), "output");
    o.allow_only({"dir", "prefix", "write_alphas"});
    c.output.dir = o.string("dir", "");
    c.output.prefix = o.string("prefix", c.output.prefix);
    c.output.write_alphas = o.boolean("write_alphas", false);
  }
  c.validate();
  return c;
}

json config_to_json(const ExperimentConfig& c) {
  json obs = json::array();
  for (const auto& o : c.observables) obs.push_back({{"name", o.name}, {"sum", serialize_pauli_sum(o.op)}});
  const char* backend = c.backend == Backend::Auto ? "auto" : c.backend == Backend::Statevector ? "statevector" : "product";
  return json{{"name", c.name},
              {"model", model_to_json(c.model)},
              {"initial_state", initial_state_to_json(c.initial_state)},
              {"K", c.orders},
              {"mode", c.mode == EvolutionMode::Real ? "real" : "imaginary"},
              {"integrator", integrator_to_json(c.integrator)},
              {"estimator", estimator_to_json(c.estimator)},
              {"observables", obs},
              {"backend", backend},
              {"oracle", c.oracle},
              {"error_monitor", c.error_monitor},
              {"output", {{"dir", c.output.dir}, {"prefix", c.output.prefix}, {"write_alphas", c.output.write_alphas}}}};
}

bool is_product_kind(InitialStateSpec::Kind k) {
  return k == InitialStateSpec::Kind::PlusProduct || k == InitialStateSpec::Kind::ZeroProduct;
}

std::filesystem::path output_dir(const OutputSpec& o) {
  if (!o.dir.empty()) return o.dir;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "qas_output";
}

StateVector read_state_file(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw ConfigError("initial_state.path: cannot open '" + path + "'");
  const std::size_t dim = std::size_t{1} << n;
  CVector amps(static_cast<Eigen::Index>(dim));
  std::string line;
  std::size_t count = 0, line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double re = 0, im = 0;
    if (!(fields >> re >> im)) throw ParseError(line_no, "expected '<re> <im>'");
    if (count >= dim) throw ParseError(line_no, "more than 2^N amplitudes");
    amps[static_cast<Eigen::Index>(count++)] = Complex(re, im);
  }
  if (count != dim) throw ConfigError("initial_state.path: expected " + std::to_string(dim) + " amplitudes, found " + std::to_string(count));
  return StateVector::normalized(n, std::move(amps));
}

StateVector as_statevector(const ReferenceState& psi) {
  if (const auto* sv = std::get_if<StateVector>(&psi)) return *sv;
  return std::get<ProductState>(psi).to_statevector();
}

Complex dense_expectation(const StateVector& s, const PauliSum& op) {
  Complex acc = 0.0;
  for (const auto& [beta, string] : op.terms()) acc += beta * expectation_pauli(s, string);
  return acc;
}

void write_sidecar(const std::filesystem::path& path, const ExperimentConfig& c, const OrderResult& r,
                   const PauliSum& h) {
  json meta{{"name", c.name},
            {"K", r.order},
            {"num_qubits", c.model.num_qubits},
            {"hamiltonian_terms", h.size()},
            {"basis_size", r.basis_size},
            {"closed_at", r.closed_at ? json(*r.closed_at) : json(nullptr)},
            {"distinct_strings", r.distinct_strings},
            {"rows", r.trajectory.size()},
            {"config", config_to_json(c)}};
  if (r.ground_energy) meta["ground_energy"] = *r.ground_energy;
  json columns = json::array({"t"});
  if (c.output.write_alphas) {
    for (std::size_t i = 0; i < r.basis_size; ++i) {
      columns.push_back("alpha_" + std::to_string(i) + "_re");
      columns.push_back("alpha_" + std::to_string(i) + "_im");
    }
  }
  columns.push_back("norm");
  columns.push_back("energy");
  if (r.trajectory.epsilon_t) columns.push_back("epsilon_t");
  for (const auto& s : r.trajectory.observables) columns.push_back(s.name);
  meta["columns"] = columns;
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << meta.dump(2) << '\n';
}

}  // namespace

void ExperimentConfig::validate() const {
  model.validate();
  const std::size_t n = model.num_qubits;
  if (orders.empty()) throw ConfigError("K: at least one moment order is required");
  integrator.validate();
  if (estimator.mode == EstimatorMeta::Mode::Sampled && estimator.shots == 0) {
    throw ConfigError("estimator.shots: must be >= 1 in sampled mode");
  }
  const bool product = is_product_kind(initial_state.kind);
  if (backend == Backend::Product && !product) {
    throw ConfigError("backend: the product backend needs a plus-product or zero-product initial state");
  }
  const bool dense = backend == Backend::Statevector || !product;
  if (dense && n > kMaxStatevectorQubits) {
    throw ConfigError("model.N: " + std::to_string(n) + " qubits exceed the statevector limit of " +
                      std::to_string(kMaxStatevectorQubits));
  }
  switch (initial_state.kind) {
    case InitialStateSpec::Kind::GroundStateOf:
      if (!initial_state.model) throw ConfigError("initial_state.model: required for ground-state-of");
      try {
        initial_state.model->validate();
      } catch (const ConfigError& e) {
        throw ConfigError(std::string("initial_state.") + e.what());
      }
      if (initial_state.model->num_qubits != n) throw ConfigError("initial_state.model.N: must equal model.N");
      if (n > kMaxDenseOperatorQubits) throw ConfigError("initial_state: ground-state preparation is limited to " + std::to_string(kMaxDenseOperatorQubits) + " qubits");
      break;
    case InitialStateSpec::Kind::File:
      if (initial_state.path.empty()) throw ConfigError("initial_state.path: required for file");
      break;
    default:
      break;
  }
  if (oracle && n > kMaxDenseOperatorQubits) {
    throw ConfigError("oracle: exact comparison is limited to " + std::to_string(kMaxDenseOperatorQubits) + " qubits");
  }
  if (error_monitor && mode != EvolutionMode::Real) {
    throw ConfigError("error_monitor: only defined for real-time evolution");
  }
  for (std::size_t i = 0; i < observables.size(); ++i) {
    if (observables[i].op.num_qubits() != n) {
      throw ConfigError("observables[" + std::to_string(i) + "]: acts on a different number of qubits than the model");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (observables[j].name == observables[i].name) {
        throw ConfigError("observables[" + std::to_string(i) + "].name: duplicate name '" + observables[i].name + "'");
      }
    }
  }
}

ExperimentConfig parse_config(std::string_view json_text, const std::vector<std::string>& overrides) {
  json root;
  try {
    root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  for (const auto& o : overrides) apply_override(root, o);
  try {
    return config_from_json(root);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), overrides);
}

ReferenceState prepare_reference_state(const ExperimentConfig& config) {
  const std::size_t n = config.model.num_qubits;
  const auto& init = config.initial_state;
  switch (init.kind) {
    case InitialStateSpec::Kind::PlusProduct:
    case InitialStateSpec::Kind::ZeroProduct: {
      ProductState p = init.kind == InitialStateSpec::Kind::PlusProduct ? ProductState::plus(n) : ProductState::zero(n);
      if (config.backend == Backend::Statevector) return p.to_statevector();
      return p;
    }
    case InitialStateSpec::Kind::HardwareEfficient:
      return build_hardware_efficient_state(CircuitSpec::random(n, init.depth, init.seed, init.topology));
    case InitialStateSpec::Kind::GroundStateOf:
      return ground_state(dense_from_pauli_sum(build_model(*init.model))).second;
    case InitialStateSpec::Kind::File:
      return read_state_file(init.path, n);
  }
  throw ConfigError("initial_state.kind: unsupported");
}

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const PauliSum h = build_model(config.model);
  if (h.empty()) throw ConfigError("model: Hamiltonian has no terms");
  const ReferenceState psi = prepare_reference_state(config);

  std::optional<StateVector> psi_dense;
  std::optional<DenseOperator> h_dense;
  if (config.oracle) {
    psi_dense = as_statevector(psi);
    h_dense = dense_from_pauli_sum(h);
  }

  const std::filesystem::path dir = output_dir(config.output);
  if (options.write_files) std::filesystem::create_directories(dir);

  RunResult result;
  for (const std::size_t order : config.orders) {
    // Step 1: ansatz basis.
    const MomentBasis basis = MomentBasis::generate(h.strings(), order);

    // Step 2: every overlap is measured up front.
    AssemblyOptions assembly;
    assembly.with_F = config.error_monitor;
    const OverlapMatrices matrices = assemble(basis, h, psi, config.estimator, assembly);
    std::vector<Observable> observables;
    for (const auto& o : config.observables) {
      observables.push_back({o.name, assemble_operator(basis, o.op, psi, config.estimator)});
    }

    // Step 3: classical integration from |phi(0)> = |psi>.
    IntegratorConfig integrator = config.integrator;
    integrator.monitor_error = config.error_monitor;
    integrator.record_alphas = config.oracle || config.output.write_alphas;
    CVector alpha0 = CVector::Zero(static_cast<Eigen::Index>(basis.size()));
    alpha0[0] = 1.0;

    OrderResult r;
    r.order = order;
    r.basis_size = basis.size();
    r.closed_at = basis.closed_at();
    r.distinct_strings = matrices.distinct_strings;
    r.trajectory = evolve(matrices, alpha0, integrator, config.mode, observables);
    Trajectory& traj = r.trajectory;

    if (config.oracle) {
      const Spectrum spectrum = hermitian_spectrum(*h_dense);
      const CVector coords = spectrum.vectors.adjoint() * psi_dense->amplitudes();
      if (config.mode == EvolutionMode::Real) {
        Series fid{"fidelity", {}};
        std::vector<Series> exact_obs;
        for (const auto& o : config.observables) exact_obs.push_back({o.name + "_exact", {}});
        for (std::size_t row = 0; row < traj.size(); ++row) {
          CVector phased = coords;
          for (Eigen::Index k = 0; k < phased.size(); ++k) phased[k] *= std::polar(1.0, -spectrum.values[k] * traj.times[row]);
          const StateVector exact = StateVector::normalized(psi_dense->num_qubits(), spectrum.vectors * phased);
          const CVector& alpha = traj.alphas[row];
          // The true norm of the reconstructed state, not alpha^+ E alpha: they differ
          // when E was estimated from samples.
          const double true_norm = reconstruct_state(basis, *psi_dense, alpha).norm();
          fid.values.push_back(fidelity(exact, basis, *psi_dense, alpha / true_norm));
          for (std::size_t i = 0; i < config.observables.size(); ++i) {
            exact_obs[i].values.push_back(dense_expectation(exact, config.observables[i].op).real());
          }
        }
        for (auto& s : exact_obs) traj.observables.push_back(std::move(s));
        traj.observables.push_back(std::move(fid));
      } else {
        r.ground_energy = spectrum.values[0];
        Series exact_energy{"energy_exact", {}};
        for (std::size_t row = 0; row < traj.size(); ++row) {
          // exp(-H tau)|psi>, shifted by the ground energy to avoid overflow
          const RVector weights =
              (-(spectrum.values.array() - spectrum.values[0]) * traj.times[row]).exp().matrix();
          const CVector damped = coords.cwiseProduct(weights.cast<Complex>());
          exact_energy.values.push_back((damped.cwiseAbs2().dot(spectrum.values)) / damped.squaredNorm());
        }
        traj.observables.push_back(std::move(exact_energy));
      }
    }
    if (!config.output.write_alphas && !config.oracle) traj.alphas.clear();

    if (options.write_files) {
      const std::string stem = config.output.prefix + "_K" + std::to_string(order);
      r.csv_path = dir / (stem + ".csv");
      std::ofstream csv(r.csv_path);
      if (!csv) throw Error("cannot write '" + r.csv_path.string() + "'");
      write_trajectory_csv(csv, traj, config.output.write_alphas);
      write_sidecar(dir / (stem + ".json"), config, r, h);
    }

    if (options.log != nullptr) {
      std::ostringstream line;
      line.precision(10);
      line << config.name << " K=" << order << " m=" << r.basis_size << " closed_at=";
      if (r.closed_at) line << *r.closed_at; else line << '-';
      line << " strings=" << r.distinct_strings << " final_norm=" << traj.norm.back()
           << " final_energy=" << traj.energy.back();
      if (const Series* f = traj.find("fidelity")) line << " final_fidelity=" << f->values.back();
      if (r.ground_energy) line << " ground_energy=" << *r.ground_energy;
      *options.log << line.str() << '\n';
    }
    result.orders.push_back(std::move(r));
  }
  return result;
}

RunResult quench(const ExperimentConfig& config, const RunOptions& options) {
  if (config.initial_state.kind != InitialStateSpec::Kind::GroundStateOf) {
    throw ConfigError("initial_state.kind: a quench starts from ground-state-of another model");
  }
  return run(config, options);
}

}  // namespace qas
