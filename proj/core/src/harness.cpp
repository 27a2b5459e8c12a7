#include "agc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "agc/trace_io.hpp"

namespace agc {

using nlohmann::json;

std::filesystem::path output_dir(const CliOptions& opts) {
  if (!opts.out_dir.empty()) return opts.out_dir;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return ".";
}

Scenario resolve_config(const std::string& config, const CliOptions& opts) {
  Scenario s;
  if (std::filesystem::exists(config)) {
    s = load_scenario(config);
  } else {
    const auto names = bundled_scenario_names();
    if (std::find(names.begin(), names.end(), config) == names.end())
      throw ConfigError(config + ": no such config file or bundled scenario");
    s = bundled_scenario(config);
  }
  if (opts.seed_override) s = with_seed_override(std::move(s), *opts.seed_override);
  if (opts.tol) s.tol = *opts.tol;
  validate(s);
  return s;
}

ScenarioRun run_scenario(const Scenario& s, bool allow_uncertified) {
  ScenarioRun out;
  out.scenario = s;
  out.hash = config_hash(s);
  RunInputs in = make_run_inputs(s);
  if (s.topology.kind == TopologySpec::Kind::Schedule) {
    out.schedule_certified = certify_uniform_connectivity(in.schedule);
    if (!out.schedule_certified && !allow_uncertified)
      throw UncertifiedSchedule(s.name + ": schedule is not uniformly connected over window B = " +
                                std::to_string(s.topology.window) +
                                " (pass --allow-uncertified-schedule to run anyway)");
  }
  out.params = in.params;
  out.oracle = solve_centralized(in.params, s.penalty, s.p_mis);
  const auto start = std::chrono::steady_clock::now();
  out.trace = run(in, &out.oracle);
  out.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.report = verify(out.trace, make_verify_spec(s));
  return out;
}

json oracle_json(const Scenario& s, const OracleSolution& sol) {
  return {{"scenario", s.name},
          {"config_hash", config_hash(s)},
          {"p_mis", s.p_mis},
          {"x_star", sol.x_star},
          {"lambda_star", sol.lambda_star},
          {"cost_star", sol.cost_star},
          {"iterations", sol.iterations}};
}

json summary_json(const ScenarioRun& r) {
  const auto& last = r.trace.records.back();
  json seeds = json::object();
  for (const auto& [path, seed] : r.trace.meta.seeds) seeds[path] = seed;
  json types = json::array();
  for (const auto& p : r.params) types.push_back(p.type_tag);
  return {{"scenario", r.scenario.name},
          {"config_hash", r.hash},
          {"protocol", r.trace.meta.protocol},
          {"schedule_id", r.trace.meta.schedule_id},
          {"schedule_certified", r.schedule_certified},
          {"converged", r.report.converged},
          {"iterations", r.trace.iterations()},
          {"iterations_to_tol", r.report.iterations_to_tol ? json(*r.report.iterations_to_tol) : json()},
          {"final_cost", last.cost},
          {"final_residual", last.residual ? json(*last.residual) : json()},
          {"final_grad_spread", last.grad_spread},
          {"feasibility_max", r.report.feasibility_max},
          {"rrl_violation_count", r.report.rrl_violation_count},
          {"verification_passed", r.report.passed()},
          {"cost_star", r.oracle.cost_star},
          {"lambda_star", r.oracle.lambda_star},
          {"seeds", seeds},
          {"generator_types", types},
          {"runtime_seconds", r.runtime_seconds},
          {"config", to_json(r.scenario)}};
}

namespace {

std::filesystem::path resolve_output(const CliOptions& opts, const std::string& configured,
                                     const std::string& fallback) {
  const std::filesystem::path p = configured.empty() ? fallback : configured;
  return p.is_absolute() ? p : output_dir(opts) / p;
}

// Runs `body`, translating exceptions into exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const MetadataMismatch& e) {
    err << "mismatch: " << e.what() << '\n';
  } catch (const TraceFormatError& e) {
    err << "trace error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

std::string trace_stem(const std::filesystem::path& trace_path) {
  std::string name = trace_path.filename().string();
  for (const std::string suffix : {".trace.csv", ".csv"}) {
    if (name.size() > suffix.size() && name.ends_with(suffix))
      return name.substr(0, name.size() - suffix.size());
  }
  return name;
}

}  // namespace

int cli_run(const std::string& config, const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = resolve_config(config, opts);
    const ScenarioRun r = run_scenario(s, opts.allow_uncertified_schedule);
    if (!r.schedule_certified) err << "warning: running an uncertified schedule\n";
    const auto trace_path = resolve_output(opts, s.trace_path, s.name + ".trace.csv");
    const auto summary_path = resolve_output(opts, s.summary_path, s.name + ".summary.json");
    write_trace_csv(r.trace, trace_path);
    write_file_atomic(summary_path, summary_json(r).dump(2) + "\n");
    out << "scenario " << s.name << " (" << r.hash << "): " << r.trace.iterations()
        << " iterations, converged=" << (r.report.converged ? "true" : "false")
        << ", final cost=" << format_double(r.trace.records.back().cost) << '\n'
        << "trace:   " << trace_path.string() << '\n'
        << "summary: " << summary_path.string() << '\n';
    return kExitOk;
  });
}

int cli_verify(const std::filesystem::path& trace_path, const std::string& config,
               const CliOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = resolve_config(config, opts);
    const SimTrace trace = read_trace_csv(trace_path);
    const VerificationReport rep = verify(trace, make_verify_spec(s));
    const std::string text = rep.to_text();
    const auto report_path = output_dir(opts) / (trace_stem(trace_path) + ".verify.txt");
    write_file_atomic(report_path, text);
    out << text;
    return rep.passed() ? kExitOk : kExitVerifyFailed;
  });
}

int cli_oracle(const std::string& config, const CliOptions& opts, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const Scenario s = resolve_config(config, opts);
    const auto params = resolve_generators(s);
    const OracleSolution sol = solve_centralized(params, s.penalty, s.p_mis);
    const std::string text = oracle_json(s, sol).dump(2) + "\n";
    write_file_atomic(output_dir(opts) / (s.name + ".oracle.json"), text);
    out << text;
    return kExitOk;
  });
}

int cli_compare(const std::vector<std::string>& configs, const CliOptions& opts, std::ostream& out,
                std::ostream& err) {
  return guarded(err, [&] {
    if (configs.empty()) throw ConfigError("compare: no configs given");
    std::vector<Scenario> scenarios;
    for (const auto& c : configs) scenarios.push_back(resolve_config(c, opts));
    const auto ref_params = resolve_generators(scenarios.front());
    for (const auto& s : scenarios) {
      if (s.n != scenarios.front().n || s.p_mis != scenarios.front().p_mis ||
          resolve_generators(s) != ref_params)
        throw ConfigError("compare: " + s.name + " is not comparable with " +
                          scenarios.front().name + " (n, P_mis and generators must match)");
    }

    std::vector<std::future<ScenarioRun>> jobs;
    for (const auto& s : scenarios)
      jobs.push_back(std::async(std::launch::async, [&s, &opts] {
        return run_scenario(s, opts.allow_uncertified_schedule);
      }));

    std::ostringstream csv;
    csv << "scenario,protocol,eta,iterations,iterations_to_residual_0.01,rrl_violation_count,"
           "final_residual\n";
    out << std::left << std::setw(24) << "scenario" << std::setw(13) << "protocol" << std::setw(8)
        << "eta" << std::setw(12) << "iterations" << std::setw(16) << "to_1%_residual"
        << std::setw(16) << "rrl_violations" << "final_residual\n";
    for (auto& job : jobs) {
      const ScenarioRun r = job.get();
      const auto to_res = iterations_to_residual(r.trace, 0.01);
      const std::string to_res_text = to_res ? std::to_string(*to_res) : "none";
      const std::string final_res = format_double(*r.trace.records.back().residual);
      csv << r.scenario.name << ',' << r.trace.meta.protocol << ','
          << format_double(r.scenario.protocol.eta) << ',' << r.trace.iterations() << ','
          << to_res_text << ',' << r.report.rrl_violation_count << ',' << final_res << '\n';
      std::ostringstream eta;
      eta << r.scenario.protocol.eta;
      out << std::left << std::setw(24) << r.scenario.name << std::setw(13) << r.trace.meta.protocol
          << std::setw(8) << eta.str() << std::setw(12)
          << r.trace.iterations() << std::setw(16) << to_res_text << std::setw(16)
          << r.report.rrl_violation_count << final_res << '\n';
    }
    write_file_atomic(output_dir(opts) / "compare.csv", csv.str());
    return kExitOk;
  });
}

int cli_plot(const std::filesystem::path& trace_path, const CliOptions& opts, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    const SimTrace trace = read_trace_csv(trace_path);
    for (const auto& p : write_plot_files(trace, output_dir(opts), trace_stem(trace_path)))
      out << p.string() << '\n';
    return kExitOk;
  });
}

int cli_scenarios(const std::optional<std::filesystem::path>& export_dir, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    for (const auto& name : bundled_scenario_names()) {
      const Scenario s = bundled_scenario(name);
      if (export_dir) {
        const auto path = *export_dir / (name + ".json");
        write_file_atomic(path, to_json(s).dump(2) + "\n");
        out << path.string() << '\n';
      } else {
        out << std::left << std::setw(24) << name << config_hash(s) << '\n';
      }
    }
    return kExitOk;
  });
}

}  // namespace agc
