// Command-line driver: `qmin run <experiment>`, `qmin brute`, `qmin ensemble`.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qmin/config.hpp"
#include "qmin/experiments.hpp"
#include "qmin/statevector.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Grover threshold minimum search simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<std::string> out_dir;
  std::optional<std::string> schedule;
  bool emit_distributions = false;

  app.add_option("--config", config_path, "YAML run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "64-bit base seed");
  app.add_option("--runs", runs, "number of independent runs")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory for traces and tables");
  app.add_option("--schedule", schedule, "baritompa | incremental | constant:K | custom:a,b,...");
  app.add_flag("--emit-distributions", emit_distributions, "write per-round probability tables");

  std::string experiment;
  auto* run = app.add_subcommand("run", "run one of the bundled experiments")->fallthrough();
  run->add_option("experiment", experiment, "appendix-demo | gp | lj-trimer | shubert-pivot | lj-grow | brute | ensemble")
      ->required();
  app.add_subcommand("brute", "exhaustive grid minimum of the configured objective")->fallthrough();
  app.add_subcommand("ensemble", "statistics over many seeded threshold searches")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("brute")) experiment = "brute";
  if (app.got_subcommand("ensemble")) experiment = "ensemble";

  qmin::RunConfig config;
  try {
    config = config_path.empty() ? qmin::default_config(experiment) : qmin::load_config(config_path, experiment);
    if (seed) config.seed = *seed;
    if (runs) config.runs = *runs;
    if (out_dir) config.out = *out_dir;
    if (schedule) {
      (void)qmin::Schedule::parse(*schedule);
      config.schedule = *schedule;
    }
    if (emit_distributions) config.emit_distributions = true;
    qmin::validate(config);
  } catch (const std::exception& e) {
    std::cerr << "qmin: invalid configuration: " << e.what() << "\n";
    return 2;
  }

  qmin::ExperimentOutput output;
  try {
    output = qmin::run_experiment(config);
  } catch (const qmin::NumericFailure& e) {
    std::cerr << "qmin: numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "qmin: " << e.what() << "\n";
    return 2;
  }

  try {
    qmin::write_artifacts(output, config.out);
  } catch (const std::exception& e) {
    std::cerr << "qmin: " << e.what() << "\n";
    return 4;
  }

  std::cout << output.report;
  if (output.exit_code != 0) {
    std::cerr << "qmin: " << output.error << "\n";
    return output.exit_code;
  }
  std::cout << output.summary << "\n";
  return 0;
}
