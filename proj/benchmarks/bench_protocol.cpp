#include <benchmark/benchmark.h>

#include "agc/network.hpp"
#include "agc/oracle.hpp"
#include "agc/protocol.hpp"
#include "agc/scenario.hpp"

namespace {

using StepFn = agc::PowerState (*)(const agc::PowerState&, const agc::LinkGraph&,
                                   std::span<const agc::GeneratorParams>, const agc::PenaltyConfig&,
                                   const agc::ProtocolConfig&, double);

void bench_step(benchmark::State& st, StepFn step, agc::ProtocolKind kind) {
  auto s = agc::bundled_scenario("s55_large");
  s.protocol.kind = kind;
  s.protocol.eta = kind == agc::ProtocolKind::Linear ? 0.01 : 1.0;
  const auto in = agc::make_run_inputs(s);
  const auto& topo = in.schedule.segments().front().topology;
  const agc::LinkGraph graph(topo);
  agc::PowerState state{in.initial, 0};
  for (auto _ : st) {
    state = step(state, graph, in.params, in.penalty, s.protocol, agc::w_max(topo));
    benchmark::DoNotOptimize(state.x.data());
  }
  st.counters["links"] = static_cast<double>(topo.edges().size());
}

void BM_StepSat(benchmark::State& st) { bench_step(st, agc::step_sat, agc::ProtocolKind::Sat); }
void BM_StepSatSgn(benchmark::State& st) {
  bench_step(st, agc::step_sat_sgn, agc::ProtocolKind::SatSgn);
}
void BM_StepLinear(benchmark::State& st) {
  bench_step(st, agc::step_linear, agc::ProtocolKind::Linear);
}

void BM_OracleLarge(benchmark::State& st) {
  const auto in = agc::make_run_inputs(agc::bundled_scenario("s55_large"));
  for (auto _ : st) {
    auto sol = agc::solve_centralized(in.params, in.penalty, in.p_mis);
    benchmark::DoNotOptimize(sol.lambda_star);
  }
}

void BM_RunScenario(benchmark::State& st, const char* name) {
  const auto in = agc::make_run_inputs(agc::bundled_scenario(name));
  for (auto _ : st) {
    auto trace = agc::run(in);
    benchmark::DoNotOptimize(trace.records.back().cost);
  }
}

}  // namespace

BENCHMARK(BM_StepSat);
BENCHMARK(BM_StepSatSgn);
BENCHMARK(BM_StepLinear);
BENCHMARK(BM_OracleLarge);
BENCHMARK_CAPTURE(BM_RunScenario, s51_sat, "s51_sat");
BENCHMARK_CAPTURE(BM_RunScenario, s54_delay_tau16, "s54_delay_tau16")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RunScenario, s55_large, "s55_large")->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
