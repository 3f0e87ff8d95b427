// Command-line driver: helix --config run.json [--scenario verify] [--out dir]
#include <iostream>

#include <CLI11.hpp>

#include "helix/cli/config.hpp"
#include "helix/cli/scenarios.hpp"
#include "helix/errors.hpp"

int main(int argc, char** argv) {
  using namespace helix::cli;
  CLI::App app{"Helical wave solutions in a uniform magnetic field: evaluate, export, verify"};
  std::string config_path, scenario, out_dir;
  int threads = 0;
  double tolerance_scale = 0.0;
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--scenario", scenario,
                 "trajectory | field | verify | propagate | corrections | spectrum (overrides config)");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tolerance-scale", tolerance_scale, "multiplies every tolerance")
      ->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (!scenario.empty()) cfg.scenario = scenario_from_string(scenario);
    if (!out_dir.empty()) cfg.output = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (tolerance_scale > 0) cfg.tolerance_scale = tolerance_scale;
    return run(cfg, std::cout);
  } catch (const helix::ConfigError& e) {
    std::cerr << "error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ", column " << e.column() << ")";
    std::cerr << "\n";
    return exit_usage;
  } catch (const helix::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_check_failed;
  }
}
