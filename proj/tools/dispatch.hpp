#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "bsq/config.hpp"

namespace bsq::cli {

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kConfigError = 2, kRuntimeError = 3 };

// Per-check constants fixed from a reference run; threshold = constant * (1 + slack).
struct Calibration {
  std::map<std::string, double> constants;
  double slack = 1e-2;
  std::string source;

  std::optional<double> threshold(const std::string& check_id) const;
};

Calibration load_calibration(const std::filesystem::path& path);
// Constants = sup ratios of a verify summary; the summary's hash is recorded as the reference.
void write_calibration(const std::filesystem::path& summary, const std::filesystem::path& out);

struct DispatchOptions {
  std::filesystem::path config_dir = ".";  // relative paths in the config resolve here
  std::optional<std::filesystem::path> out;  // overrides output_dir
  int workers = 1;
  std::optional<std::filesystem::path> emit_calibration;  // verify only
};

// Output directory: --out, else output_dir under $BSQ_OUTPUT_ROOT when set and relative.
std::filesystem::path output_directory(const RunConfig& config, const DispatchOptions& options);

// Runs one command and returns its exit code. Throws ConfigError / InputError /
// runtime errors; main() maps those to exit codes.
int dispatch(const RunConfig& config, const DispatchOptions& options);

int run_simulate(const RunConfig& config, const std::filesystem::path& dir,
                 const std::filesystem::path& config_dir = ".");
// Writes records-<hash>.csv and summary-<hash>.json into dir.
int run_verify(const RunConfig& config, const std::filesystem::path& dir, const Calibration* calibration,
               const std::filesystem::path& config_dir = ".");
int run_sweep(const RunConfig& config, const std::filesystem::path& dir, const Calibration* calibration, int workers,
              const std::filesystem::path& config_dir = ".");
// Delegates to the Python renderer when importable, else prints text_summary.
int run_report(const std::filesystem::path& input, const std::optional<std::filesystem::path>& out);

}  // namespace bsq::cli
