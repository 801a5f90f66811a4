#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsq/experiments.hpp"
#include "bsq/initial_data.hpp"
#include "bsq/lp_family.hpp"
#include "bsq/solver.hpp"

namespace bsq {

struct SweepAxis {
  std::string parameter;  // kappa, nu, dt, t_end, n, seed
  std::vector<double> values;
};

struct UniquenessSpec {
  Perturbation perturbation;
  std::string modulus = "gamma_log";
};

struct ApproximationSpec {
  std::vector<int> ms;
};

struct RunConfig {
  std::string command = "simulate";  // simulate | verify | sweep | report
  int n = 128;
  SolverConfig solver;
  ProfileParams lp;
  std::string gamma = "gamma_log";
  double p0 = 1.5;
  double p1 = 4.0;
  InitialDataSpec omega;
  InitialDataSpec rho;
  std::vector<std::string> checks;  // defaults to every registered check
  std::optional<SweepAxis> sweep;
  std::optional<UniquenessSpec> uniqueness;
  std::optional<ApproximationSpec> approximation;
  std::string output_dir = "output";
  std::string calibration;  // path to calibrated constants; empty = none
  std::uint64_t seed = 0;
  int snapshot_every = 0;  // simulate: write a snapshot every k stored states (0 = final only)
};

// Strict parse: unknown keys and invalid values raise ConfigError naming the field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& config);
std::string serialize_config(const RunConfig& config);
// FNV-1a over the canonical serialization, as 16 hex digits.
std::string config_hash(const RunConfig& config);
// Copy of the config with one sweep parameter replaced.
RunConfig with_parameter(const RunConfig& config, const std::string& parameter, double value);

}  // namespace bsq
