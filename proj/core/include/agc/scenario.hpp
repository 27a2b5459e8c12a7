#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "agc/cost_model.hpp"
#include "agc/metrics.hpp"
#include "agc/network.hpp"
#include "agc/protocol.hpp"

namespace agc {

/// Invalid scenario configuration. what() names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How generator parameters are assigned to nodes.
struct GeneratorSpec {
  enum class Mode { Random, Types, Custom };
  Mode mode = Mode::Random;
  /// Random: node i gets stock type CounterRng(seed).below(i, 5).
  std::uint64_t seed = 0;
  std::vector<std::string> types;
  std::vector<GeneratorParams> custom;
};

/// Topology description as it appears in a config file. Schedules hold
/// their segment topologies in `children`; link_failure holds its base.
struct TopologySpec {
  enum class Kind { Cycle, ErdosRenyi, Edges, LinkFailure, Schedule };
  Kind kind = Kind::Cycle;
  double weight = 1.0;     // cycle
  double p = 0.0;          // erdos_renyi
  double keep = 1.0;       // link_failure
  std::uint64_t seed = 0;  // erdos_renyi, link_failure
  std::vector<Edge> edges;             // edges
  std::size_t window = 1;              // schedule: uniform connectivity window B
  std::vector<std::size_t> durations;  // schedule
  std::vector<TopologySpec> children;
};

struct Scenario {
  std::string name;
  std::size_t n = 0;
  GeneratorSpec generators;
  double p_mis = 0.0;
  PenaltyConfig penalty;
  ProtocolConfig protocol;
  TopologySpec topology;
  std::int64_t steps = 0;
  double tol = 1e-6;
  bool stop_at_tol = true;
  std::vector<double> initial;  // empty means uniform P_mis / n
  std::string trace_path;       // optional output overrides
  std::string summary_path;
};

/// Strict parse: unknown keys, wrong types and invalid values raise ConfigError.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical tree with every defaulted field written out.
nlohmann::json to_json(const Scenario& s);

/// Compact canonical serialization without output paths; the input of config_hash.
std::string canonical_text(const Scenario& s);
/// FNV-1a 64 of canonical_text, as 16 lowercase hex digits.
std::string config_hash(const Scenario& s);

/// Range checks and cross-field consistency; throws ConfigError.
void validate(const Scenario& s);

std::vector<GeneratorParams> resolve_generators(const Scenario& s);
Topology resolve_topology(const TopologySpec& spec, std::size_t n);
TopologySchedule resolve_schedule(const Scenario& s);
std::vector<double> resolve_initial(const Scenario& s);
std::string schedule_id(const Scenario& s);

/// Every seed in the scenario, in canonical traversal order, keyed by field path.
std::vector<std::pair<std::string, std::uint64_t>> seeds(const Scenario& s);
/// Replaces the i-th seed of seeds(s) with CounterRng(master).at(i).
Scenario with_seed_override(Scenario s, std::uint64_t master);

RunInputs make_run_inputs(const Scenario& s);
VerifySpec make_verify_spec(const Scenario& s);

/// Names of the built-in experiment scenarios.
std::vector<std::string> bundled_scenario_names();
/// Throws ConfigError for an unknown name.
Scenario bundled_scenario(std::string_view name);

}  // namespace agc
