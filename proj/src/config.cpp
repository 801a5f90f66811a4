#include "bsq/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bsq/checks.hpp"
#include "bsq/error.hpp"
#include "bsq/gamma.hpp"
#include "bsq/grid.hpp"

namespace bsq {

using nlohmann::json;

namespace {

const std::set<std::string> kCommands = {"simulate", "verify", "sweep", "report"};
const std::set<std::string> kSweepParameters = {"kappa", "nu", "dt", "t_end", "n", "seed"};

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_object(const json& j, const std::string& field, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(field.empty() ? "config" : field, "must be an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) throw ConfigError(join(field, item.key()), "unknown key");
  }
}

double get_number(const json& j, const std::string& key, const std::string& field, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(join(field, key), "must be a number");
  return j[key].get<double>();
}

long long get_integer(const json& j, const std::string& key, const std::string& field, long long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ConfigError(join(field, key), "must be an integer");
  return j[key].get<long long>();
}

bool get_bool(const json& j, const std::string& key, const std::string& field, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean()) throw ConfigError(join(field, key), "must be a boolean");
  return j[key].get<bool>();
}

std::string get_string(const json& j, const std::string& key, const std::string& field, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) throw ConfigError(join(field, key), "must be a string");
  return j[key].get<std::string>();
}

SolverConfig parse_solver(const json& j) {
  const std::string f = "solver";
  check_object(j, f,
               {"kappa", "nu", "dt", "t_end", "integrator", "cfl_limit", "stride", "buoyancy", "frozen_velocity",
                "mean_velocity"});
  SolverConfig s;
  s.kappa = get_number(j, "kappa", f, s.kappa);
  s.nu = get_number(j, "nu", f, s.nu);
  s.dt = get_number(j, "dt", f, s.dt);
  s.t_end = get_number(j, "t_end", f, s.t_end);
  try {
    s.integrator = integrator_from_string(get_string(j, "integrator", f, to_string(s.integrator)));
  } catch (const std::exception& e) {
    throw ConfigError("solver.integrator", e.what());
  }
  s.cfl_limit = get_number(j, "cfl_limit", f, s.cfl_limit);
  s.stride = static_cast<int>(get_integer(j, "stride", f, s.stride));
  s.buoyancy = get_bool(j, "buoyancy", f, s.buoyancy);
  s.frozen_velocity = get_bool(j, "frozen_velocity", f, s.frozen_velocity);
  if (j.contains("mean_velocity")) {
    const auto& m = j["mean_velocity"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_number() || !m[1].is_number()) {
      throw ConfigError("solver.mean_velocity", "must be a pair of numbers");
    }
    s.mean_velocity = {m[0].get<double>(), m[1].get<double>()};
  }
  try {
    s.validate();
  } catch (const ConfigError& e) {
    throw ConfigError("solver." + e.field(), e.what());
  }
  return s;
}

InitialDataSpec parse_initial(const json& j, const std::string& f, std::uint64_t default_seed) {
  check_object(j, f, {"kind", "amplitude", "k", "beta", "kmin", "kmax", "coherent", "seed", "path"});
  InitialDataSpec s;
  if (!j.contains("kind")) throw ConfigError(join(f, "kind"), "is required");
  s.kind = get_string(j, "kind", f, s.kind);
  if (!is_known_initial_kind(s.kind)) throw ConfigError(join(f, "kind"), "unknown initial data kind '" + s.kind + "'");
  s.amplitude = get_number(j, "amplitude", f, s.amplitude);
  if (j.contains("k")) {
    const auto& k = j["k"];
    if (!k.is_array() || k.size() != 2 || !k[0].is_number_integer() || !k[1].is_number_integer()) {
      throw ConfigError(join(f, "k"), "must be a pair of integers");
    }
    s.k1 = k[0].get<int>();
    s.k2 = k[1].get<int>();
  }
  s.random.beta = get_number(j, "beta", f, s.random.beta);
  s.random.kmin = get_number(j, "kmin", f, s.random.kmin);
  s.random.kmax = get_number(j, "kmax", f, s.random.kmax);
  s.random.amplitude = s.amplitude;
  s.random.coherent = get_bool(j, "coherent", f, s.random.coherent);
  const long long seed = get_integer(j, "seed", f, static_cast<long long>(default_seed));
  if (seed < 0) throw ConfigError(join(f, "seed"), "must be >= 0");
  s.random.seed = static_cast<std::uint64_t>(seed);
  s.path = get_string(j, "path", f, s.path);
  if (s.kind == "snapshot" && s.path.empty()) throw ConfigError(join(f, "path"), "is required for snapshot data");
  if (!(s.random.kmin >= 0.0 && s.random.kmax >= s.random.kmin)) {
    throw ConfigError(join(f, "kmax"), "must satisfy 0 <= kmin <= kmax");
  }
  return s;
}

json initial_to_json(const InitialDataSpec& s) {
  json j = {{"kind", s.kind}, {"amplitude", s.amplitude}, {"k", {s.k1, s.k2}}};
  j["beta"] = s.random.beta;
  j["kmin"] = s.random.kmin;
  j["kmax"] = s.random.kmax;
  j["coherent"] = s.random.coherent;
  j["seed"] = s.random.seed;
  if (!s.path.empty()) j["path"] = s.path;
  return j;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  check_object(j, "",
               {"command", "n", "solver", "lp", "gamma", "exponents", "initial_data", "checks", "sweep",
                "uniqueness", "approximation", "output_dir", "calibration", "seed", "snapshot_every"});
  RunConfig c;
  c.command = get_string(j, "command", "", c.command);
  if (!kCommands.count(c.command)) throw ConfigError("command", "must be simulate, verify, sweep or report");

  const long long n = get_integer(j, "n", "", c.n);
  try {
    Grid check(static_cast<int>(n));
  } catch (const std::exception&) {
    throw ConfigError("n", "must be a power of two >= 16");
  }
  c.n = static_cast<int>(n);

  const long long seed = get_integer(j, "seed", "", 0);
  if (seed < 0) throw ConfigError("seed", "must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);

  if (j.contains("solver")) c.solver = parse_solver(j["solver"]);

  if (j.contains("lp")) {
    check_object(j["lp"], "lp", {"plateau"});
    c.lp.plateau = get_number(j["lp"], "plateau", "lp", c.lp.plateau);
    if (!(c.lp.plateau >= 0.5 && c.lp.plateau < 0.6)) throw ConfigError("lp.plateau", "must lie in [0.5, 0.6)");
  }

  c.gamma = get_string(j, "gamma", "", c.gamma);
  if (!is_gamma_catalog_name(c.gamma)) throw ConfigError("gamma", "unknown catalog entry '" + c.gamma + "'");

  if (j.contains("exponents")) {
    check_object(j["exponents"], "exponents", {"p0", "p1"});
    c.p0 = get_number(j["exponents"], "p0", "exponents", c.p0);
    c.p1 = get_number(j["exponents"], "p1", "exponents", c.p1);
  }
  if (!(c.p0 >= 1.0)) throw ConfigError("exponents.p0", "must be >= 1");
  if (!(c.p1 >= c.p0)) throw ConfigError("exponents.p1", "must be >= p0");

  if (c.command != "report") {
    if (!j.contains("initial_data")) throw ConfigError("initial_data", "is required");
    const auto& init = j["initial_data"];
    check_object(init, "initial_data", {"omega", "rho"});
    if (!init.contains("omega")) throw ConfigError("initial_data.omega", "is required");
    if (!init.contains("rho")) throw ConfigError("initial_data.rho", "is required");
    c.omega = parse_initial(init["omega"], "initial_data.omega", 2 * c.seed);
    c.rho = parse_initial(init["rho"], "initial_data.rho", 2 * c.seed + 1);
    for (const auto* spec : {&c.omega, &c.rho}) {
      if (spec->kind == "random" && spec->random.kmax > c.n / 3) {
        throw ConfigError(spec == &c.omega ? "initial_data.omega.kmax" : "initial_data.rho.kmax",
                          "exceeds the dealiasing radius n/3");
      }
    }
  }

  if (j.contains("checks")) {
    if (!j["checks"].is_array()) throw ConfigError("checks", "must be an array of check ids");
    for (const auto& id : j["checks"]) {
      if (!id.is_string() || !is_check_id(id.get<std::string>())) {
        throw ConfigError("checks", "unknown check id " + id.dump());
      }
      c.checks.push_back(id.get<std::string>());
    }
  } else {
    c.checks = check_ids();
  }

  if (j.contains("sweep")) {
    check_object(j["sweep"], "sweep", {"parameter", "values"});
    SweepAxis axis;
    axis.parameter = get_string(j["sweep"], "parameter", "sweep", "");
    if (!kSweepParameters.count(axis.parameter)) throw ConfigError("sweep.parameter", "unsupported sweep parameter");
    const auto& values = j["sweep"].value("values", json::array());
    if (!values.is_array()) throw ConfigError("sweep.values", "must be an array");
    for (const auto& v : values) {
      if (!v.is_number()) throw ConfigError("sweep.values", "must contain numbers");
      axis.values.push_back(v.get<double>());
    }
    c.sweep = axis;
  }
  if (c.command == "sweep" && (!c.sweep || c.sweep->values.empty())) {
    throw ConfigError("sweep", "a sweep needs a non-empty axis");
  }

  if (j.contains("uniqueness")) {
    const auto& u = j["uniqueness"];
    check_object(u, "uniqueness", {"target", "band", "delta", "modulus"});
    UniquenessSpec spec;
    const std::string target = get_string(u, "target", "uniqueness", "omega");
    if (target != "omega" && target != "rho") throw ConfigError("uniqueness.target", "must be omega or rho");
    spec.perturbation.target = target == "omega" ? PerturbTarget::omega : PerturbTarget::rho;
    spec.perturbation.band = static_cast<int>(get_integer(u, "band", "uniqueness", spec.perturbation.band));
    spec.perturbation.delta = get_number(u, "delta", "uniqueness", spec.perturbation.delta);
    if (!(spec.perturbation.delta >= 0.0)) throw ConfigError("uniqueness.delta", "must be >= 0");
    spec.modulus = get_string(u, "modulus", "uniqueness", spec.modulus);
    if (!is_gamma_catalog_name(spec.modulus)) throw ConfigError("uniqueness.modulus", "unknown catalog entry");
    c.uniqueness = spec;
  }

  if (j.contains("approximation")) {
    const auto& a = j["approximation"];
    check_object(a, "approximation", {"m"});
    ApproximationSpec spec;
    if (!a.contains("m") || !a["m"].is_array()) throw ConfigError("approximation.m", "must be an array");
    for (const auto& m : a["m"]) {
      if (!m.is_number_integer()) throw ConfigError("approximation.m", "must contain integers");
      spec.ms.push_back(m.get<int>());
    }
    if (spec.ms.size() < 3) throw ConfigError("approximation.m", "needs at least three values");
    c.approximation = spec;
  }

  c.output_dir = get_string(j, "output_dir", "", c.output_dir);
  c.calibration = get_string(j, "calibration", "", c.calibration);
  const long long every = get_integer(j, "snapshot_every", "", 0);
  if (every < 0) throw ConfigError("snapshot_every", "must be >= 0");
  c.snapshot_every = static_cast<int>(every);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["solver"] = {{"kappa", c.solver.kappa},
                 {"nu", c.solver.nu},
                 {"dt", c.solver.dt},
                 {"t_end", c.solver.t_end},
                 {"integrator", to_string(c.solver.integrator)},
                 {"cfl_limit", c.solver.cfl_limit},
                 {"stride", c.solver.stride},
                 {"buoyancy", c.solver.buoyancy},
                 {"frozen_velocity", c.solver.frozen_velocity},
                 {"mean_velocity", {c.solver.mean_velocity[0], c.solver.mean_velocity[1]}}};
  j["lp"] = {{"plateau", c.lp.plateau}};
  j["gamma"] = c.gamma;
  j["exponents"] = {{"p0", c.p0}, {"p1", c.p1}};
  if (c.command != "report") j["initial_data"] = {{"omega", initial_to_json(c.omega)}, {"rho", initial_to_json(c.rho)}};
  j["checks"] = c.checks;
  if (c.sweep) j["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}};
  if (c.uniqueness) {
    const auto& p = c.uniqueness->perturbation;
    j["uniqueness"] = {{"target", p.target == PerturbTarget::omega ? "omega" : "rho"},
                       {"band", p.band},
                       {"delta", p.delta},
                       {"modulus", c.uniqueness->modulus}};
  }
  if (c.approximation) j["approximation"] = {{"m", c.approximation->ms}};
  j["output_dir"] = c.output_dir;
  if (!c.calibration.empty()) j["calibration"] = c.calibration;
  j["snapshot_every"] = c.snapshot_every;
  return j;
}

std::string serialize_config(const RunConfig& c) { return to_json(c).dump(2); }

std::string config_hash(const RunConfig& c) {
  const std::string text = to_json(c).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig with_parameter(const RunConfig& config, const std::string& parameter, double value) {
  json j = to_json(config);
  if (parameter == "n" || parameter == "seed") {
    if (value != std::floor(value) || value < 0) throw ConfigError("sweep.values", parameter + " needs integers");
    j[parameter] = static_cast<long long>(value);
    if (parameter == "seed") {
      // Derived data seeds follow the run seed.
      j["initial_data"]["omega"]["seed"] = 2 * static_cast<long long>(value);
      j["initial_data"]["rho"]["seed"] = 2 * static_cast<long long>(value) + 1;
    }
  } else if (kSweepParameters.count(parameter)) {
    j["solver"][parameter] = value;
  } else {
    throw ConfigError("sweep.parameter", "unsupported sweep parameter " + parameter);
  }
  j.erase("sweep");
  if (j["command"] == "sweep") j["command"] = "verify";
  return parse_config(j.dump());
}

}  // namespace bsq
