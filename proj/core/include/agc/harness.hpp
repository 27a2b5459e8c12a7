#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agc/metrics.hpp"
#include "agc/oracle.hpp"
#include "agc/scenario.hpp"
#include "agc/trace.hpp"

namespace agc {

/// Process exit codes of the agc tool.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfigError = 2 };

/// Environment variable naming the default output directory.
inline constexpr const char* kOutDirEnv = "AGC_OUT_DIR";

struct CliOptions {
  std::filesystem::path out_dir;  // empty: $AGC_OUT_DIR, else "."
  std::optional<std::uint64_t> seed_override;
  std::optional<double> tol;
  bool allow_uncertified_schedule = false;
};

std::filesystem::path output_dir(const CliOptions& opts);

/// Loads a config file, or a bundled scenario when `config` names one and
/// no such file exists. Applies --seed-override and --tol.
Scenario resolve_config(const std::string& config, const CliOptions& opts);

struct ScenarioRun {
  Scenario scenario;
  std::string hash;
  std::vector<GeneratorParams> params;
  OracleSolution oracle;
  SimTrace trace;
  VerificationReport report;
  bool schedule_certified = true;
  double runtime_seconds = 0.0;
};

/// Raised when a switching schedule fails uniform-connectivity certification.
class UncertifiedSchedule : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Certifies the schedule, solves the oracle, runs and verifies. Throws
/// UncertifiedSchedule unless `allow_uncertified` is set.
ScenarioRun run_scenario(const Scenario& s, bool allow_uncertified = false);

/// Structured run summary (JSON).
nlohmann::json summary_json(const ScenarioRun& run);
nlohmann::json oracle_json(const Scenario& s, const OracleSolution& sol);

// Subcommands. Each returns an ExitCode and never throws.
int cli_run(const std::string& config, const CliOptions& opts, std::ostream& out, std::ostream& err);
int cli_verify(const std::filesystem::path& trace_path, const std::string& config,
               const CliOptions& opts, std::ostream& out, std::ostream& err);
int cli_oracle(const std::string& config, const CliOptions& opts, std::ostream& out,
               std::ostream& err);
int cli_compare(const std::vector<std::string>& configs, const CliOptions& opts, std::ostream& out,
                std::ostream& err);
int cli_plot(const std::filesystem::path& trace_path, const CliOptions& opts, std::ostream& out,
             std::ostream& err);
/// Lists bundled scenarios, or writes each as <dir>/<name>.json.
int cli_scenarios(const std::optional<std::filesystem::path>& export_dir, std::ostream& out,
                  std::ostream& err);

}  // namespace agc
