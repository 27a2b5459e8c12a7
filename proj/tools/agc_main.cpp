// agc: run, verify and compare ramp-rate-limited distributed AGC scenarios.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "agc/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Distributed AGC under ramp-rate limits: simulator and verifier"};
  app.require_subcommand(1);

  agc::CliOptions opts;
  std::string out_dir;
  std::uint64_t seed_override = 0;
  double tol = 0.0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_dir, "Output directory (default: $AGC_OUT_DIR or .)");
    cmd->add_option("--seed-override", seed_override,
                    "Derive every scenario seed from this master seed");
    cmd->add_option("--tol", tol, "Gradient-spread termination tolerance ($/MWh)");
    cmd->add_flag("--allow-uncertified-schedule", opts.allow_uncertified_schedule,
                  "Run schedules that fail the uniform-connectivity check");
  };

  std::string config;
  std::string trace;
  std::vector<std::string> configs;
  std::string export_dir;

  auto* run = app.add_subcommand("run", "Simulate a scenario and write trace + summary");
  run->add_option("--config,config", config, "Config file or bundled scenario name")->required();
  add_common(run);

  auto* verify = app.add_subcommand("verify", "Check a trace against its scenario");
  verify->add_option("--trace,trace", trace, "Trace CSV written by `agc run`")->required();
  verify->add_option("--config,config", config, "Config file or bundled scenario name")->required();
  add_common(verify);

  auto* oracle = app.add_subcommand("oracle", "Solve the centralized optimum");
  oracle->add_option("--config,config", config, "Config file or bundled scenario name")->required();
  add_common(oracle);

  auto* compare = app.add_subcommand("compare", "Run several comparable scenarios side by side");
  compare->add_option("--config,configs", configs, "Config files or bundled scenario names")
      ->required();
  add_common(compare);

  auto* plot = app.add_subcommand("plot", "Write gnuplot data files for a trace");
  plot->add_option("--trace,trace", trace, "Trace CSV written by `agc run`")->required();
  add_common(plot);

  auto* scenarios = app.add_subcommand("scenarios", "List or export the bundled scenarios");
  scenarios->add_option("--export", export_dir, "Write each scenario as <dir>/<name>.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : agc::kExitConfigError;
  }

  opts.out_dir = out_dir;
  for (CLI::App* cmd : {run, verify, oracle, compare, plot}) {
    if (cmd->parsed()) {
      if (cmd->count("--seed-override")) opts.seed_override = seed_override;
      if (cmd->count("--tol")) opts.tol = tol;
    }
  }

  if (run->parsed()) return agc::cli_run(config, opts, std::cout, std::cerr);
  if (verify->parsed()) return agc::cli_verify(trace, config, opts, std::cout, std::cerr);
  if (oracle->parsed()) return agc::cli_oracle(config, opts, std::cout, std::cerr);
  if (compare->parsed()) return agc::cli_compare(configs, opts, std::cout, std::cerr);
  if (plot->parsed()) return agc::cli_plot(trace, opts, std::cout, std::cerr);
  if (scenarios->parsed())
    return agc::cli_scenarios(export_dir.empty() ? std::nullopt
                                                 : std::optional<std::filesystem::path>(export_dir),
                              std::cout, std::cerr);
  return agc::kExitConfigError;
}
