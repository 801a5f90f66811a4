#include "dispatch.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bsq/checks.hpp"
#include "bsq/error.hpp"
#include "bsq/experiments.hpp"
#include "bsq/gamma.hpp"
#include "bsq/initial_data.hpp"
#include "bsq/report_io.hpp"
#include "bsq/snapshot.hpp"
#include "bsq/spectral_ops.hpp"

namespace bsq::cli {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json to_json_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct Inputs {
  Grid grid;
  LPFamily family;
  GammaSpec gamma;
  SpectralField omega0;
  SpectralField rho0;
};

Inputs make_inputs(const RunConfig& c, const fs::path& config_dir) {
  const Grid grid(c.n);
  auto resolved = [&](InitialDataSpec s) {
    if (!s.path.empty()) s.path = resolve(config_dir, s.path).string();
    return s;
  };
  return Inputs{grid, LPFamily(grid, c.lp), gamma_from_catalog(c.gamma), make_initial_field(grid, resolved(c.omega)),
                make_initial_field(grid, resolved(c.rho))};
}

json record_summary(const EstimateRecord& r, const Calibration* cal) {
  json j = {{"empirical_constant", to_json_or_null(r.empirical_constant())},
            {"samples", r.samples.size()},
            {"t_final", r.samples.empty() ? 0.0 : r.samples.back().t}};
  if (!r.extras.empty()) j["extras"] = r.extras;
  const auto thr = cal ? cal->threshold(r.check_id) : std::nullopt;
  if (thr) {
    j["threshold"] = *thr;
    j["pass"] = r.empirical_constant() <= *thr;
  } else {
    j["threshold"] = nullptr;
    j["pass"] = nullptr;
  }
  return j;
}

// Bound on the bands above j_max: C * 2^-N Gamma(N) at N = j_max, C from the abel_tail record.
json truncation_residual(const std::vector<EstimateRecord>& records, const Inputs& in) {
  const int j_max = in.family.j_max();
  const double weight = std::exp2(-j_max) * in.gamma(j_max);
  for (const auto& r : records) {
    if (r.check_id != "abel_tail") continue;
    const double c = r.empirical_constant();
    return {{"n", j_max}, {"constant", to_json_or_null(c)}, {"weight", weight}, {"bound", to_json_or_null(c * weight)}};
  }
  return {{"n", j_max}, {"constant", nullptr}, {"weight", weight}, {"bound", nullptr}};
}

json run_uniqueness(const RunConfig& c, const Inputs& in, bool& ok) {
  const auto pi = gamma_from_catalog(c.uniqueness->modulus);
  const auto r = uniqueness_experiment(in.omega0, in.rho0, c.uniqueness->perturbation, c.solver, in.family, pi);
  ok = ok && r.dominated;
  return {{"perturbation", r.perturbation.describe()},
          {"modulus", c.uniqueness->modulus},
          {"delta_prime", r.delta_prime},
          {"fitted_c", r.fitted_c},
          {"dominated", r.dominated},
          {"pass", r.dominated},
          {"t", r.t},
          {"F", r.f},
          {"eta", r.envelope},
          {"tail", r.tail}};
}

json run_approximation(const RunConfig& c, const Inputs& in, bool& ok) {
  const auto t = approximation_experiment(in.omega0, in.rho0, c.approximation->ms, c.solver, in.family, in.gamma);
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"l", r.l}, {"m", r.m}, {"iota", r.iota}, {"kappa", r.kappa}, {"cauchy_gap", r.cauchy_gap},
                    {"reference", r.reference}});
  }
  const bool pass = t.gaps_monotone && t.slope <= t.reference_slope + 0.3;
  ok = ok && pass;
  return {{"rows", rows},
          {"slope", t.slope},
          {"reference_slope", t.reference_slope},
          {"gaps_monotone", t.gaps_monotone},
          {"pass", pass}};
}

std::optional<fs::path> find_renderer() {
  if (const char* cmd = std::getenv("BSQ_RENDERER"); cmd != nullptr && *cmd != '\0') return fs::path(cmd);
  const char* path = std::getenv("PATH");
  if (path == nullptr) return std::nullopt;
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    const auto candidate = fs::path(dir) / "bsq-render";
    std::error_code ec;
    if (fs::is_regular_file(candidate, ec)) return candidate;
  }
  return std::nullopt;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

}  // namespace

std::optional<double> Calibration::threshold(const std::string& check_id) const {
  const auto it = constants.find(check_id);
  if (it == constants.end()) return std::nullopt;
  return it->second * (1.0 + slack);
}

Calibration load_calibration(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open calibration file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  Calibration cal;
  cal.source = path.string();
  cal.slack = j.value("slack", 1e-2);
  if (!j.contains("constants") || !j["constants"].is_object()) throw InputError(path.string() + ": missing constants");
  for (const auto& [id, v] : j["constants"].items()) {
    if (!is_check_id(id)) throw InputError(path.string() + ": unknown check id " + id);
    cal.constants[id] = v.get<double>();
  }
  return cal;
}

void write_calibration(const fs::path& summary, const fs::path& out) {
  std::ifstream in(summary);
  if (!in) throw InputError("cannot open summary " + summary.string());
  const auto s = json::parse(in);
  json constants = json::object();
  for (const auto& [id, c] : s.at("checks").items()) {
    if (c["empirical_constant"].is_number()) constants[id] = c["empirical_constant"];
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out.string());
  f << json{{"reference_config_hash", s.value("config_hash", "")}, {"slack", 1e-2}, {"constants", constants}}.dump(2)
    << "\n";
}

fs::path output_directory(const RunConfig& config, const DispatchOptions& options) {
  if (options.out) return *options.out;
  const fs::path dir(config.output_dir);
  if (dir.is_absolute()) return dir;
  if (const char* root = std::getenv("BSQ_OUTPUT_ROOT"); root != nullptr && *root != '\0') return fs::path(root) / dir;
  return dir;
}

int run_simulate(const RunConfig& c, const fs::path& dir, const fs::path& config_dir) {
  ensure_dir(dir);
  const auto in = make_inputs(c, config_dir);
  const auto hash = config_hash(c);
  auto solver = c.solver;
  solver.store_states = c.snapshot_every > 0;
  const auto traj = simulate(in.omega0, in.rho0, solver);
  json snaps = json::array();
  auto dump = [&](const SimState& s, std::size_t index) {
    char stem[64];
    std::snprintf(stem, sizeof stem, "%05zu", index);
    write_snapshot(dir / ("omega_" + std::string(stem)), s.omega, "omega", s.t, hash);
    write_snapshot(dir / ("rho_" + std::string(stem)), s.rho, "rho", s.t, hash);
    snaps.push_back({{"index", index}, {"t", s.t}});
  };
  const auto& states = traj.states;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const bool last = i + 1 == states.size();
    if (last || (c.snapshot_every > 0 && i % static_cast<std::size_t>(c.snapshot_every) == 0)) dump(states[i], i);
  }
  const auto& end = states.back();
  json summary = {{"command", "simulate"},
                  {"seed", c.seed},
                  {"grid_n", c.n},
                  {"t_final", end.t},
                  {"snapshots", snaps},
                  {"final", {{"omega_l2", lp_norm(end.omega, LebesgueExponent(2.0))}, {"rho_l2", lp_norm(end.rho, LebesgueExponent(2.0))}}},
                  {"config", to_json(c)}};
  write_summary_json(dir / ("summary-" + hash + ".json"), summary, hash);
  return kOk;
}

int run_verify(const RunConfig& c, const fs::path& dir, const Calibration* cal, const fs::path& config_dir) {
  ensure_dir(dir);
  const auto in = make_inputs(c, config_dir);
  const auto hash = config_hash(c);
  const auto traj = simulate(in.omega0, in.rho0, c.solver);
  const Exponents ex{LebesgueExponent(c.p0), LebesgueExponent(c.p1)};
  auto records = run_inequality_checks(c.checks, traj, in.family, in.gamma, ex);
  for (auto& r : records) r.meta.seed = c.seed;
  const auto csv_name = "records-" + hash + ".csv";
  write_records_csv(dir / csv_name, records);

  bool ok = true;
  json checks = json::object();
  for (const auto& r : records) {
    checks[r.check_id] = record_summary(r, cal);
    if (checks[r.check_id]["pass"].is_boolean() && !checks[r.check_id]["pass"].get<bool>()) ok = false;
  }
  json summary = {{"command", "verify"},
                  {"seed", c.seed},
                  {"grid_n", c.n},
                  {"kappa", c.solver.kappa},
                  {"j_max", in.family.j_max()},
                  {"csv", csv_name},
                  {"calibration", cal ? json(cal->source) : json(nullptr)},
                  {"checks", checks},
                  {"truncation_residual", truncation_residual(records, in)},
                  {"config", to_json(c)}};
  if (c.uniqueness) summary["uniqueness"] = run_uniqueness(c, in, ok);
  if (c.approximation) summary["approximation"] = run_approximation(c, in, ok);
  summary["pass"] = ok;
  write_summary_json(dir / ("summary-" + hash + ".json"), summary, hash);
  return ok ? kOk : kCheckFailure;
}

int run_sweep(const RunConfig& c, const fs::path& dir, const Calibration* cal, int workers,
              const fs::path& config_dir) {
  if (!c.sweep || c.sweep->values.empty()) throw ConfigError("sweep", "sweep axis must be non-empty");
  ensure_dir(dir);
  const auto& axis = *c.sweep;
  std::vector<RunConfig> runs;
  std::vector<fs::path> dirs;
  for (double v : axis.values) {
    runs.push_back(with_parameter(c, axis.parameter, v));
    dirs.push_back(dir / (axis.parameter + "-" + format_value(v)));
  }
  std::vector<int> codes(runs.size(), kOk);
  std::vector<std::exception_ptr> errors(runs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        codes[i] = run_verify(runs[i], dirs[i], cal, config_dir);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto pool_size = static_cast<std::size_t>(std::max(1, workers));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < std::min(pool_size, runs.size()); ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  // Per-check spread of sup ratios across the axis.
  json values = json::array();
  std::map<std::string, std::pair<double, double>> spread;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto hash = config_hash(runs[i]);
    std::ifstream in(dirs[i] / ("summary-" + hash + ".json"));
    const auto s = json::parse(in);
    json sup = json::object();
    for (const auto& [id, ch] : s["checks"].items()) {
      const auto& e = ch["empirical_constant"];
      sup[id] = e;
      if (!e.is_number()) continue;
      const double x = e.get<double>();
      auto [it, fresh] = spread.try_emplace(id, x, x);
      if (!fresh) it->second = {std::min(it->second.first, x), std::max(it->second.second, x)};
    }
    values.push_back({{"value", axis.values[i]},
                      {"directory", fs::relative(dirs[i], dir).string()},
                      {"csv", s["csv"]},
                      {"config_hash", hash},
                      {"exit_code", codes[i]},
                      {"sup_ratio", sup}});
  }
  json variation = json::object();
  for (const auto& [id, mm] : spread) {
    variation[id] = mm.first > 0.0 ? json(mm.second / mm.first) : json(nullptr);
  }
  const auto hash = config_hash(c);
  write_summary_json(dir / ("sweep-" + hash + ".json"),
                     {{"command", "sweep"}, {"parameter", axis.parameter}, {"seed", c.seed}, {"runs", values},
                      {"max_over_min", variation}},
                     hash);
  for (int code : codes) {
    if (code != kOk) return kCheckFailure;
  }
  return kOk;
}

int run_report(const fs::path& input, const std::optional<fs::path>& out) {
  if (!fs::is_directory(input)) throw InputError("report input is not a directory: " + input.string());
  if (const auto renderer = find_renderer()) {
    std::string cmd = shell_quote(renderer->string()) + " render --input " + shell_quote(input.string());
    if (out) cmd += " --out " + shell_quote(out->string());
    const int rc = std::system(cmd.c_str());
    if (rc == 0) return kOk;
    std::cerr << "renderer failed (" << rc << "), falling back to text summary\n";
  }
  const auto text = text_summary(input);
  if (out) {
    ensure_dir(*out);
    std::ofstream f(*out / "summary.txt");
    if (!f) throw std::runtime_error("cannot write " + (*out / "summary.txt").string());
    f << text;
  }
  std::cout << text;
  return kOk;
}

int dispatch(const RunConfig& c, const DispatchOptions& o) {
  std::optional<Calibration> cal;
  if (!c.calibration.empty()) cal = load_calibration(resolve(o.config_dir, c.calibration));
  const Calibration* calp = cal ? &*cal : nullptr;
  const auto dir = output_directory(c, o);
  if (c.command == "simulate") return run_simulate(c, dir, o.config_dir);
  if (c.command == "verify") {
    const int rc = run_verify(c, dir, calp, o.config_dir);
    if (o.emit_calibration) write_calibration(dir / ("summary-" + config_hash(c) + ".json"), *o.emit_calibration);
    return rc;
  }
  if (c.command == "sweep") return run_sweep(c, dir, calp, o.workers, o.config_dir);
  if (c.command == "report") return run_report(dir, o.out);
  throw ConfigError("command", "unknown command " + c.command);
}

}  // namespace bsq::cli
