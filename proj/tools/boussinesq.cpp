#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bsq/config.hpp"
#include "bsq/error.hpp"
#include "dispatch.hpp"

namespace fs = std::filesystem;
using namespace bsq;

int main(int argc, char** argv) {
  CLI::App app{"2D Boussinesq Littlewood-Paley estimate harness"};
  app.require_subcommand(1);
  int workers = 1;
  app.add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);

  std::string config_path, calibration, out, input, emit;
  auto add_run = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out, "output directory (overrides output_dir)");
    sub->add_option("--calibration", calibration, "calibrated constants (overrides the config)");
    sub->add_option("--workers", workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
    return sub;
  };
  add_run("simulate", "advance the system and write snapshots");
  add_run("verify", "run the estimate checks and write records")
      ->add_option("--emit-calibration", emit, "write this run's sup ratios as calibrated constants");
  add_run("sweep", "verify across one parameter axis");
  auto* report = app.add_subcommand("report", "render or summarize an output directory");
  report->add_option("--input", input, "directory with records and summaries")->required();
  report->add_option("--out", out, "directory for rendered output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kConfigError;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    std::optional<fs::path> out_dir;
    if (!out.empty()) out_dir = fs::path(out);
    if (command == "report") return cli::run_report(input, out_dir);

    RunConfig cfg = load_config(config_path);
    cfg.command = command;
    if (!calibration.empty()) {
      cfg.calibration = fs::absolute(calibration).string();
    }
    cli::DispatchOptions opts;
    opts.config_dir = fs::absolute(config_path).parent_path();
    opts.out = out_dir;
    opts.workers = workers;
    if (!emit.empty()) opts.emit_calibration = fs::path(emit);
    const int rc = cli::dispatch(cfg, opts);
    if (rc == cli::kCheckFailure) std::cerr << "one or more calibrated checks failed\n";
    return rc;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kRuntimeError;
  }
}
