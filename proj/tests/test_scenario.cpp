#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "agc/rng.hpp"
#include "agc/scenario.hpp"

using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "name": "tiny",
    "n": 3,
    "generators": {"mode": "types", "types": ["A", "B", "C"]},
    "p_mis": 150,
    "penalty": {"c": 1, "sigma": 2},
    "protocol": {"kind": "sat", "eta": 0.5, "rrl": 1},
    "topology": {"kind": "cycle", "weight": 1},
    "steps": 50
  })");
}

void expect_rejected(const json& j, const std::string& fragment) {
  try {
    agc::scenario_from_json(j);
    ADD_FAILURE() << "accepted: " << j.dump();
  } catch (const agc::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(Scenario, ParsesMinimalConfigWithDefaults) {
  const auto s = agc::scenario_from_json(minimal());
  EXPECT_EQ(s.name, "tiny");
  EXPECT_EQ(s.n, 3u);
  EXPECT_EQ(s.protocol.kind, agc::ProtocolKind::Sat);
  EXPECT_EQ(s.protocol.eta, 0.5);
  EXPECT_EQ(s.tol, 1e-6);
  EXPECT_TRUE(s.stop_at_tol);
  EXPECT_EQ(agc::resolve_initial(s), (std::vector<double>{50.0, 50.0, 50.0}));
  const auto params = agc::resolve_generators(s);
  EXPECT_EQ(params[1], agc::stock_generator("B"));
}

TEST(Scenario, RejectsInvalidConfigs) {
  auto j = minimal();
  j["extra"] = 1;
  expect_rejected(j, "extra");

  j = minimal();
  j["protocol"]["eta"] = 0.0;
  expect_rejected(j, "eta");

  j = minimal();
  j["protocol"]["eta"] = 1.5;
  expect_rejected(j, "eta");

  j = minimal();
  j["protocol"]["mu"] = 1.0;
  expect_rejected(j, "mu");

  j = minimal();
  j["penalty"]["sigma"] = 1;
  expect_rejected(j, "sigma");

  j = minimal();
  j["penalty"]["sigma"] = 2.5;
  expect_rejected(j, "sigma");

  j = minimal();
  j["initial"] = {10, 20, 30};
  expect_rejected(j, "infeasible");

  j = minimal();
  j["generators"]["types"] = json::array({"A", "B"});
  expect_rejected(j, "types");

  j = minimal();
  j["generators"]["types"] = {"A", "B", "Q"};
  expect_rejected(j, "types");

  j = minimal();
  j["n"] = 2;
  j["generators"]["types"] = json::array({"A", "B"});
  expect_rejected(j, "topology");  // a cycle needs three nodes

  j = minimal();
  j["topology"] = {{"kind", "edges"}, {"edges", json::array()}};
  expect_rejected(j, "link");

  j = minimal();
  j["protocol"]["delay_bound"] = 4;
  expect_rejected(j, "delay_bound");

  j = minimal();
  j["protocol"]["kind"] = "admm";
  expect_rejected(j, "kind");

  j = minimal();
  j["steps"] = -1;
  expect_rejected(j, "steps");

  j = minimal();
  j["topology"] = {{"kind", "erdos_renyi"}, {"p", 1.5}, {"seed", 1}};
  expect_rejected(j, "topology");

  j = minimal();
  j.erase("p_mis");
  expect_rejected(j, "p_mis");
}

TEST(Scenario, LinearBaselineMayRunOnAnEmptyGraph) {
  auto j = minimal();
  j["protocol"]["kind"] = "linear";
  j["topology"] = {{"kind", "edges"}, {"edges", json::array()}};
  EXPECT_NO_THROW(agc::scenario_from_json(j));
}

TEST(Scenario, JsonRoundTripPreservesEverything) {
  for (const auto& name : agc::bundled_scenario_names()) {
    const auto s = agc::bundled_scenario(name);
    const auto back = agc::scenario_from_json(agc::to_json(s));
    EXPECT_EQ(agc::canonical_text(back), agc::canonical_text(s)) << name;
    EXPECT_EQ(agc::to_json(back), agc::to_json(s)) << name;
  }
  auto j = minimal();
  j["generators"] = json::parse(R"({"mode": "custom", "units": [
      {"tag": "x", "alpha": 1, "beta": 2, "gamma": 0.5, "m_lo": 0, "m_hi": 100},
      {"tag": "y", "alpha": 0, "beta": 1, "gamma": 0.25, "m_lo": -5, "m_hi": 50},
      {"tag": "z", "alpha": 3, "beta": 0, "gamma": 1, "m_lo": 10, "m_hi": 20}]})");
  j["initial"] = {40.0, 60.0, 50.0};
  j["output"] = {{"trace", "t.csv"}};
  const auto s = agc::scenario_from_json(j);
  const auto back = agc::scenario_from_json(agc::to_json(s));
  EXPECT_EQ(back.generators.custom, s.generators.custom);
  EXPECT_EQ(back.initial, s.initial);
  EXPECT_EQ(back.trace_path, "t.csv");
}

TEST(Scenario, HashIgnoresOutputPathsOnly) {
  auto s = agc::bundled_scenario("s51_sat");
  const auto h = agc::config_hash(s);
  EXPECT_EQ(h.size(), 16u);
  s.trace_path = "elsewhere.csv";
  EXPECT_EQ(agc::config_hash(s), h);
  s.protocol.eta = 0.5;
  EXPECT_NE(agc::config_hash(s), h);
}

TEST(Scenario, BundledS51Setup) {
  const auto s = agc::bundled_scenario("s51_sat");
  EXPECT_EQ(s.n, 10u);
  EXPECT_EQ(s.p_mis, 700.0);
  EXPECT_EQ(s.protocol.rrl, 1.0);
  EXPECT_EQ(s.protocol.eta, 1.0);
  EXPECT_EQ(s.penalty, (agc::PenaltyConfig{1.0, 2}));
  EXPECT_EQ(s.steps, 200);
  EXPECT_EQ(agc::resolve_initial(s), std::vector<double>(10, 70.0));
  EXPECT_EQ(agc::resolve_topology(s.topology, s.n), agc::build_cycle(10));
  EXPECT_EQ(agc::bundled_scenario("s52_satsgn").protocol.mu, 0.6);
}

TEST(Scenario, BundledSwitchingScheduleShape) {
  const auto s = agc::bundled_scenario("s53_switching_sat");
  const auto sched = agc::resolve_schedule(s);
  EXPECT_EQ(sched.window(), 12u);
  ASSERT_EQ(sched.segments().size(), 4u);
  const auto& base = sched.segments()[0].topology;
  EXPECT_TRUE(agc::is_connected(base));
  for (const auto& seg : sched.segments()) {
    EXPECT_EQ(seg.duration, 3u);
    for (const auto& e : seg.topology.edges()) EXPECT_GT(base.weight(e.i, e.j), 0.0);
  }
  EXPECT_TRUE(agc::certify_uniform_connectivity(sched));
}

TEST(Scenario, BundledDelayScenarios) {
  for (int bound : {4, 8, 12, 16}) {
    const auto s = agc::bundled_scenario("s54_delay_tau" + std::to_string(bound));
    EXPECT_EQ(s.protocol.kind, agc::ProtocolKind::DelayedSat);
    EXPECT_EQ(s.protocol.delay_bound, bound);
    EXPECT_EQ(s.protocol.eta, 0.2);
  }
  const auto large = agc::bundled_scenario("s55_large");
  EXPECT_EQ(large.n, 200u);
  EXPECT_EQ(large.p_mis, 14000.0);
  EXPECT_EQ(large.topology.p, 0.2);
  EXPECT_THROW(agc::bundled_scenario("s99"), agc::ConfigError);
}

TEST(Scenario, SeedsAreListedAndOverridable) {
  const auto s = agc::bundled_scenario("s53_switching_sat");
  const auto list = agc::seeds(s);
  ASSERT_EQ(list.size(), 8u);
  EXPECT_EQ(list[0].first, "generators.seed");
  EXPECT_EQ(list[1].first, "topology.segments[0].topology.seed");
  EXPECT_EQ(list[2].first, "topology.segments[1].topology.base.seed");
  EXPECT_EQ(list[3].first, "topology.segments[1].topology.seed");

  const auto o = agc::with_seed_override(s, 42);
  const auto olist = agc::seeds(o);
  const agc::CounterRng rng(42);
  for (std::size_t i = 0; i < olist.size(); ++i) {
    EXPECT_EQ(olist[i].first, list[i].first);
    EXPECT_EQ(olist[i].second, rng.at(i));
  }
  EXPECT_EQ(agc::config_hash(agc::with_seed_override(s, 42)), agc::config_hash(o));
  EXPECT_NE(agc::config_hash(o), agc::config_hash(s));

  const auto d = agc::seeds(agc::bundled_scenario("s54_delay_tau4"));
  EXPECT_EQ(d.back().first, "protocol.delay_seed");
  EXPECT_EQ(d.back().second, 54u);
}

TEST(Scenario, LoadReportsMissingAndMalformedFiles) {
  EXPECT_THROW(agc::load_scenario("/nonexistent/config.json"), agc::ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "agc_bad_config.json";
  std::ofstream(path) << "{ \"name\": ";
  EXPECT_THROW(agc::load_scenario(path), agc::ConfigError);
  std::filesystem::remove(path);
}

TEST(Scenario, ShippedScenarioFilesMatchLibrary) {
  const std::filesystem::path dir = AGC_SCENARIO_DIR;
  for (const auto& name : agc::bundled_scenario_names()) {
    const auto file = dir / (name + ".json");
    ASSERT_TRUE(std::filesystem::exists(file)) << file;
    EXPECT_EQ(agc::config_hash(agc::load_scenario(file)),
              agc::config_hash(agc::bundled_scenario(name)))
        << name;
  }
}
