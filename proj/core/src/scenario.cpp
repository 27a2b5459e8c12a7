#include "agc/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "agc/rng.hpp"

namespace agc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

// Reads one JSON object, remembering which keys were consumed so that
// anything left over can be rejected as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  std::string at(std::string_view key) const { return path_ + "." + std::string(key); }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& required(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) fail(at(key), "missing required field");
    return j_.at(key);
  }

  const json* optional(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  double number(const std::string& key) { return as_number(required(key), at(key)); }
  double number_or(const std::string& key, double fallback) {
    const json* v = optional(key);
    return v ? as_number(*v, at(key)) : fallback;
  }
  std::uint64_t unsigned_int(const std::string& key) { return as_unsigned(required(key), at(key)); }
  std::uint64_t unsigned_or(const std::string& key, std::uint64_t fallback) {
    const json* v = optional(key);
    return v ? as_unsigned(*v, at(key)) : fallback;
  }
  std::int64_t integer_or(const std::string& key, std::int64_t fallback) {
    const json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) fail(at(key), "expected an integer");
    return v->get<std::int64_t>();
  }
  std::string string(const std::string& key) {
    const json& v = required(key);
    if (!v.is_string()) fail(at(key), "expected a string");
    return v.get<std::string>();
  }
  bool boolean_or(const std::string& key, bool fallback) {
    const json* v = optional(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(at(key), "expected true or false");
    return v->get<bool>();
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) fail(at(key), "unknown field");
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(path, "must be finite");
    return d;
  }

  static std::uint64_t as_unsigned(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    fail(path, "expected a nonnegative integer");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::string_view kind_name(TopologySpec::Kind k) {
  switch (k) {
    case TopologySpec::Kind::Cycle: return "cycle";
    case TopologySpec::Kind::ErdosRenyi: return "erdos_renyi";
    case TopologySpec::Kind::Edges: return "edges";
    case TopologySpec::Kind::LinkFailure: return "link_failure";
    case TopologySpec::Kind::Schedule: return "schedule";
  }
  return "unknown";
}

TopologySpec topology_from_json(const json& j, const std::string& path, bool allow_schedule) {
  ObjectReader r(j, path);
  TopologySpec t;
  const std::string kind = r.string("kind");
  if (kind == "cycle") {
    t.kind = TopologySpec::Kind::Cycle;
    t.weight = r.number_or("weight", 1.0);
  } else if (kind == "erdos_renyi") {
    t.kind = TopologySpec::Kind::ErdosRenyi;
    t.p = r.number("p");
    t.seed = r.unsigned_int("seed");
  } else if (kind == "edges") {
    t.kind = TopologySpec::Kind::Edges;
    const json& list = r.required("edges");
    if (!list.is_array()) fail(r.at("edges"), "expected an array of [i, j] or [i, j, weight]");
    for (std::size_t e = 0; e < list.size(); ++e) {
      const std::string ep = r.at("edges") + "[" + std::to_string(e) + "]";
      const json& item = list[e];
      if (!item.is_array() || item.size() < 2 || item.size() > 3)
        fail(ep, "expected [i, j] or [i, j, weight]");
      Edge edge;
      edge.i = ObjectReader::as_unsigned(item[0], ep);
      edge.j = ObjectReader::as_unsigned(item[1], ep);
      edge.weight = item.size() == 3 ? ObjectReader::as_number(item[2], ep) : 1.0;
      t.edges.push_back(edge);
    }
  } else if (kind == "link_failure") {
    t.kind = TopologySpec::Kind::LinkFailure;
    t.children.push_back(topology_from_json(r.required("base"), r.at("base"), false));
    t.keep = r.number("keep");
    t.seed = r.unsigned_int("seed");
  } else if (kind == "schedule") {
    if (!allow_schedule) fail(path, "schedules cannot be nested");
    t.kind = TopologySpec::Kind::Schedule;
    t.window = r.unsigned_int("window");
    const json& segs = r.required("segments");
    if (!segs.is_array() || segs.empty()) fail(r.at("segments"), "expected a nonempty array");
    for (std::size_t s = 0; s < segs.size(); ++s) {
      const std::string sp = r.at("segments") + "[" + std::to_string(s) + "]";
      ObjectReader seg(segs[s], sp);
      t.durations.push_back(seg.unsigned_int("duration"));
      t.children.push_back(topology_from_json(seg.required("topology"), seg.at("topology"), false));
      seg.finish();
    }
  } else {
    fail(r.at("kind"), "unknown topology kind '" + kind + "'");
  }
  r.finish();
  return t;
}

json topology_to_json(const TopologySpec& t) {
  json j;
  j["kind"] = std::string(kind_name(t.kind));
  switch (t.kind) {
    case TopologySpec::Kind::Cycle:
      j["weight"] = t.weight;
      break;
    case TopologySpec::Kind::ErdosRenyi:
      j["p"] = t.p;
      j["seed"] = t.seed;
      break;
    case TopologySpec::Kind::Edges: {
      json list = json::array();
      for (const auto& e : t.edges) list.push_back(json::array({e.i, e.j, e.weight}));
      j["edges"] = list;
      break;
    }
    case TopologySpec::Kind::LinkFailure:
      j["base"] = topology_to_json(t.children.at(0));
      j["keep"] = t.keep;
      j["seed"] = t.seed;
      break;
    case TopologySpec::Kind::Schedule: {
      j["window"] = t.window;
      json segs = json::array();
      for (std::size_t s = 0; s < t.children.size(); ++s)
        segs.push_back({{"duration", t.durations[s]}, {"topology", topology_to_json(t.children[s])}});
      j["segments"] = segs;
      break;
    }
  }
  return j;
}

GeneratorSpec generators_from_json(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  GeneratorSpec g;
  const std::string mode = r.string("mode");
  if (mode == "random") {
    g.mode = GeneratorSpec::Mode::Random;
    g.seed = r.unsigned_int("seed");
  } else if (mode == "types") {
    g.mode = GeneratorSpec::Mode::Types;
    const json& list = r.required("types");
    if (!list.is_array()) fail(r.at("types"), "expected an array of type tags");
    for (const auto& item : list) {
      if (!item.is_string()) fail(r.at("types"), "type tags must be strings");
      g.types.push_back(item.get<std::string>());
    }
  } else if (mode == "custom") {
    g.mode = GeneratorSpec::Mode::Custom;
    const json& list = r.required("units");
    if (!list.is_array()) fail(r.at("units"), "expected an array of generator objects");
    for (std::size_t u = 0; u < list.size(); ++u) {
      ObjectReader unit(list[u], r.at("units") + "[" + std::to_string(u) + "]");
      GeneratorParams p;
      p.type_tag = unit.string("tag");
      p.alpha = unit.number("alpha");
      p.beta = unit.number("beta");
      p.gamma = unit.number("gamma");
      p.m_lo = unit.number("m_lo");
      p.m_hi = unit.number("m_hi");
      unit.finish();
      g.custom.push_back(p);
    }
  } else {
    fail(r.at("mode"), "expected random, types or custom");
  }
  r.finish();
  return g;
}

json generators_to_json(const GeneratorSpec& g) {
  switch (g.mode) {
    case GeneratorSpec::Mode::Random:
      return {{"mode", "random"}, {"seed", g.seed}};
    case GeneratorSpec::Mode::Types:
      return {{"mode", "types"}, {"types", g.types}};
    case GeneratorSpec::Mode::Custom: {
      json units = json::array();
      for (const auto& p : g.custom)
        units.push_back({{"tag", p.type_tag}, {"alpha", p.alpha}, {"beta", p.beta},
                         {"gamma", p.gamma}, {"m_lo", p.m_lo}, {"m_hi", p.m_hi}});
      return {{"mode", "custom"}, {"units", units}};
    }
  }
  return {};
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

template <class F>
void visit_topology_seeds(TopologySpec& t, const std::string& path, F& f) {
  switch (t.kind) {
    case TopologySpec::Kind::ErdosRenyi:
      f(path + ".seed", t.seed);
      break;
    case TopologySpec::Kind::LinkFailure:
      visit_topology_seeds(t.children.at(0), path + ".base", f);
      f(path + ".seed", t.seed);
      break;
    case TopologySpec::Kind::Schedule:
      for (std::size_t s = 0; s < t.children.size(); ++s)
        visit_topology_seeds(t.children[s], path + ".segments[" + std::to_string(s) + "].topology",
                             f);
      break;
    default:
      break;
  }
}

template <class F>
void visit_seeds(Scenario& s, F&& f) {
  if (s.generators.mode == GeneratorSpec::Mode::Random) f("generators.seed", s.generators.seed);
  visit_topology_seeds(s.topology, "topology", f);
  if (s.protocol.kind == ProtocolKind::DelayedSat) f("protocol.delay_seed", s.protocol.delay_seed);
}

Topology resolve_static(const TopologySpec& t, std::size_t n) {
  switch (t.kind) {
    case TopologySpec::Kind::Cycle:
      return build_cycle(n, t.weight);
    case TopologySpec::Kind::ErdosRenyi:
      return build_erdos_renyi(n, t.p, t.seed);
    case TopologySpec::Kind::Edges:
      return Topology::from_edges(n, t.edges);
    case TopologySpec::Kind::LinkFailure:
      return thin_links(resolve_static(t.children.at(0), n), t.keep, t.seed);
    case TopologySpec::Kind::Schedule:
      break;
  }
  throw std::invalid_argument("schedule used where a single topology is required");
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  ObjectReader r(j, "scenario");
  Scenario s;
  s.name = r.string("name");
  s.n = r.unsigned_int("n");
  s.generators = generators_from_json(r.required("generators"), r.at("generators"));
  s.p_mis = r.number("p_mis");

  {
    ObjectReader pen(r.required("penalty"), r.at("penalty"));
    s.penalty.c = pen.number_or("c", 1.0);
    const std::int64_t sigma = pen.integer_or("sigma", 2);
    if (sigma < 2 || sigma > 64) fail(pen.at("sigma"), "must be an integer in [2, 64]");
    s.penalty.sigma = static_cast<int>(sigma);
    pen.finish();
  }
  {
    ObjectReader pr(r.required("protocol"), r.at("protocol"));
    try {
      s.protocol.kind = parse_protocol_kind(pr.string("kind"));
    } catch (const std::invalid_argument& e) {
      fail(pr.at("kind"), e.what());
    }
    s.protocol.eta = pr.number_or("eta", 1.0);
    s.protocol.rrl = pr.number_or("rrl", 1.0);
    s.protocol.mu = pr.number_or("mu", 0.6);
    s.protocol.soft_sign_eps = pr.number_or("soft_sign_eps", 0.0);
    const std::int64_t bound = pr.integer_or("delay_bound", 0);
    if (bound < 0 || bound > 100000) fail(pr.at("delay_bound"), "must be in [0, 100000]");
    s.protocol.delay_bound = static_cast<int>(bound);
    s.protocol.delay_seed = pr.unsigned_or("delay_seed", 0);
    pr.finish();
  }
  s.topology = topology_from_json(r.required("topology"), r.at("topology"), true);

  const json& steps = r.required("steps");
  if (!steps.is_number_integer() || steps.get<std::int64_t>() < 0)
    fail(r.at("steps"), "expected a nonnegative integer");
  s.steps = steps.get<std::int64_t>();
  s.tol = r.number_or("tol", 1e-6);
  s.stop_at_tol = r.boolean_or("stop_at_tol", true);

  if (const json* init = r.optional("initial")) {
    if (init->is_string()) {
      if (init->get<std::string>() != "uniform") fail(r.at("initial"), "expected \"uniform\" or an array");
    } else if (init->is_array()) {
      for (const auto& v : *init) s.initial.push_back(ObjectReader::as_number(v, r.at("initial")));
    } else {
      fail(r.at("initial"), "expected \"uniform\" or an array");
    }
  }
  if (const json* out = r.optional("output")) {
    ObjectReader o(*out, r.at("output"));
    if (o.has("trace")) s.trace_path = o.string("trace");
    if (o.has("summary")) s.summary_path = o.string("summary");
    o.finish();
  }
  r.finish();
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["n"] = s.n;
  j["generators"] = generators_to_json(s.generators);
  j["p_mis"] = s.p_mis;
  j["penalty"] = {{"c", s.penalty.c}, {"sigma", s.penalty.sigma}};
  j["protocol"] = {{"kind", std::string(to_string(s.protocol.kind))},
                   {"eta", s.protocol.eta},
                   {"rrl", s.protocol.rrl},
                   {"mu", s.protocol.mu},
                   {"soft_sign_eps", s.protocol.soft_sign_eps},
                   {"delay_bound", s.protocol.delay_bound},
                   {"delay_seed", s.protocol.delay_seed}};
  j["topology"] = topology_to_json(s.topology);
  j["steps"] = s.steps;
  j["tol"] = s.tol;
  j["stop_at_tol"] = s.stop_at_tol;
  if (s.initial.empty())
    j["initial"] = "uniform";
  else
    j["initial"] = s.initial;
  if (!s.trace_path.empty() || !s.summary_path.empty()) {
    json out = json::object();
    if (!s.trace_path.empty()) out["trace"] = s.trace_path;
    if (!s.summary_path.empty()) out["summary"] = s.summary_path;
    j["output"] = out;
  }
  return j;
}

std::string canonical_text(const Scenario& s) {
  json j = to_json(s);
  j.erase("output");
  return j.dump();
}

std::string config_hash(const Scenario& s) { return hex16(fnv1a64(canonical_text(s))); }

void validate(const Scenario& s) {
  if (s.n == 0) fail("scenario.n", "must be >= 1");
  switch (s.generators.mode) {
    case GeneratorSpec::Mode::Random:
      break;
    case GeneratorSpec::Mode::Types:
      if (s.generators.types.size() != s.n)
        fail("scenario.generators.types", "has " + std::to_string(s.generators.types.size()) +
                                              " entries, expected n = " + std::to_string(s.n));
      for (const auto& tag : s.generators.types) {
        try {
          stock_generator(tag);
        } catch (const std::invalid_argument& e) {
          fail("scenario.generators.types", e.what());
        }
      }
      break;
    case GeneratorSpec::Mode::Custom:
      if (s.generators.custom.size() != s.n)
        fail("scenario.generators.units", "has " + std::to_string(s.generators.custom.size()) +
                                              " entries, expected n = " + std::to_string(s.n));
      for (const auto& p : s.generators.custom) {
        try {
          p.validate();
        } catch (const std::invalid_argument& e) {
          fail("scenario.generators.units", e.what());
        }
      }
      break;
  }
  if (!std::isfinite(s.p_mis)) fail("scenario.p_mis", "must be finite");
  try {
    s.penalty.validate();
  } catch (const std::invalid_argument& e) {
    fail("scenario.penalty", e.what());
  }
  if (!(s.protocol.mu > 0.0 && s.protocol.mu < 1.0)) fail("scenario.protocol.mu", "must be in (0, 1)");
  try {
    s.protocol.validate();
  } catch (const std::invalid_argument& e) {
    fail("scenario.protocol", e.what());
  }
  if (s.steps < 0) fail("scenario.steps", "must be >= 0");
  if (!(s.tol >= 0.0)) fail("scenario.tol", "must be >= 0");

  if (!s.initial.empty()) {
    if (s.initial.size() != s.n)
      fail("scenario.initial", "has " + std::to_string(s.initial.size()) +
                                   " entries, expected n = " + std::to_string(s.n));
    double sum = 0.0;
    for (double v : s.initial) sum += v;
    if (std::abs(sum - s.p_mis) > 1e-9 * std::max(1.0, std::abs(s.p_mis)))
      fail("scenario.initial", "sums to " + std::to_string(sum) + ", not P_mis = " +
                                   std::to_string(s.p_mis) + " (infeasible initial condition)");
  }

  TopologySchedule schedule;
  try {
    schedule = resolve_schedule(s);
  } catch (const std::invalid_argument& e) {
    fail("scenario.topology", e.what());
  }
  if (s.protocol.kind != ProtocolKind::Linear) {
    try {
      (void)schedule.w_max();
    } catch (const std::invalid_argument& e) {
      fail("scenario.topology", e.what());
    }
  }
}

std::vector<GeneratorParams> resolve_generators(const Scenario& s) {
  std::vector<GeneratorParams> out;
  out.reserve(s.n);
  switch (s.generators.mode) {
    case GeneratorSpec::Mode::Random: {
      const CounterRng rng(s.generators.seed);
      const auto stock = stock_generators();
      for (std::size_t i = 0; i < s.n; ++i) out.push_back(stock[rng.below(i, stock.size())]);
      break;
    }
    case GeneratorSpec::Mode::Types:
      for (const auto& tag : s.generators.types) out.push_back(stock_generator(tag));
      break;
    case GeneratorSpec::Mode::Custom:
      out = s.generators.custom;
      break;
  }
  return out;
}

Topology resolve_topology(const TopologySpec& spec, std::size_t n) { return resolve_static(spec, n); }

TopologySchedule resolve_schedule(const Scenario& s) {
  if (s.topology.kind != TopologySpec::Kind::Schedule)
    return TopologySchedule::constant(resolve_static(s.topology, s.n));
  std::vector<Segment> segs;
  for (std::size_t k = 0; k < s.topology.children.size(); ++k)
    segs.push_back({s.topology.durations[k], resolve_static(s.topology.children[k], s.n)});
  return TopologySchedule(std::move(segs), s.topology.window);
}

std::vector<double> resolve_initial(const Scenario& s) {
  if (!s.initial.empty()) return s.initial;
  return std::vector<double>(s.n, s.p_mis / static_cast<double>(s.n));
}

std::string schedule_id(const Scenario& s) {
  return std::string(kind_name(s.topology.kind)) + "-" +
         hex16(fnv1a64(topology_to_json(s.topology).dump())).substr(0, 8);
}

std::vector<std::pair<std::string, std::uint64_t>> seeds(const Scenario& s) {
  Scenario copy = s;
  std::vector<std::pair<std::string, std::uint64_t>> out;
  visit_seeds(copy, [&](const std::string& path, std::uint64_t& seed) { out.emplace_back(path, seed); });
  return out;
}

Scenario with_seed_override(Scenario s, std::uint64_t master) {
  const CounterRng rng(master);
  std::uint64_t index = 0;
  visit_seeds(s, [&](const std::string&, std::uint64_t& seed) { seed = rng.at(index++); });
  return s;
}

RunInputs make_run_inputs(const Scenario& s) {
  RunInputs in;
  in.params = resolve_generators(s);
  in.penalty = s.penalty;
  in.protocol = s.protocol;
  in.schedule = resolve_schedule(s);
  in.initial = resolve_initial(s);
  in.p_mis = s.p_mis;
  in.steps = s.steps;
  in.tol = s.tol;
  in.stop_at_tol = s.stop_at_tol;
  in.meta.scenario = s.name;
  in.meta.config_hash = config_hash(s);
  in.meta.schedule_id = schedule_id(s);
  in.meta.seeds = seeds(s);
  return in;
}

VerifySpec make_verify_spec(const Scenario& s) {
  VerifySpec v;
  v.protocol = s.protocol;
  v.params = resolve_generators(s);
  v.penalty = s.penalty;
  v.p_mis = s.p_mis;
  v.tol = s.tol;
  v.config_hash = config_hash(s);
  return v;
}

// ---------------------------------------------------------------------------
// Bundled experiment scenarios.

namespace {

constexpr std::uint64_t kTypeSeed = 51;
constexpr std::uint64_t kSmallGraphSeed = 57;
constexpr std::uint64_t kLargeGraphSeed = 55;

Scenario cycle_base(std::string name, ProtocolKind kind) {
  Scenario s;
  s.name = std::move(name);
  s.n = 10;
  s.generators.mode = GeneratorSpec::Mode::Random;
  s.generators.seed = kTypeSeed;
  s.p_mis = 700.0;
  s.penalty = {1.0, 2};
  s.protocol.kind = kind;
  s.protocol.eta = 1.0;
  s.protocol.rrl = 1.0;
  s.topology.kind = TopologySpec::Kind::Cycle;
  s.topology.weight = 1.0;
  s.steps = 200;
  s.tol = 1e-6;
  return s;
}

TopologySpec small_er() {
  TopologySpec t;
  t.kind = TopologySpec::Kind::ErdosRenyi;
  t.p = 0.4;
  t.seed = kSmallGraphSeed;
  return t;
}

// 40% ER graph thinned to 20%, 10% and 5% link density, 3 iterations each.
TopologySpec failure_schedule() {
  TopologySpec sched;
  sched.kind = TopologySpec::Kind::Schedule;
  sched.window = 12;
  sched.children.push_back(small_er());
  sched.durations.push_back(3);
  const double keep[] = {0.5, 0.25, 0.125};
  for (std::size_t k = 0; k < 3; ++k) {
    TopologySpec f;
    f.kind = TopologySpec::Kind::LinkFailure;
    f.children.push_back(small_er());
    f.keep = keep[k];
    f.seed = kSmallGraphSeed * 10 + k + 1;
    sched.children.push_back(f);
    sched.durations.push_back(3);
  }
  return sched;
}

Scenario switching(std::string name, ProtocolKind kind) {
  Scenario s = cycle_base(std::move(name), kind);
  s.topology = failure_schedule();
  s.steps = 5000;
  return s;
}

Scenario delayed(int bound) {
  Scenario s = cycle_base("s54_delay_tau" + std::to_string(bound), ProtocolKind::DelayedSat);
  s.topology = small_er();
  s.protocol.eta = 0.2;
  s.protocol.delay_bound = bound;
  s.protocol.delay_seed = 54;
  s.steps = 10000;
  return s;
}

Scenario large() {
  Scenario s = cycle_base("s55_large", ProtocolKind::Sat);
  s.n = 200;
  s.generators.seed = kLargeGraphSeed;
  s.p_mis = 14000.0;
  s.topology.kind = TopologySpec::Kind::ErdosRenyi;
  s.topology.p = 0.2;
  s.topology.seed = kLargeGraphSeed;
  s.steps = 2000;
  s.stop_at_tol = false;
  return s;
}

}  // namespace

std::vector<std::string> bundled_scenario_names() {
  return {"s51_sat",           "s51_linear",          "s52_satsgn",         "s53_switching_sat",
          "s53_switching_satsgn", "s54_delay_tau4",   "s54_delay_tau8",     "s54_delay_tau12",
          "s54_delay_tau16",   "s55_large"};
}

Scenario bundled_scenario(std::string_view name) {
  Scenario s;
  if (name == "s51_sat") {
    s = cycle_base("s51_sat", ProtocolKind::Sat);
  } else if (name == "s51_linear") {
    s = cycle_base("s51_linear", ProtocolKind::Linear);
  } else if (name == "s52_satsgn") {
    s = cycle_base("s52_satsgn", ProtocolKind::SatSgn);
    s.protocol.mu = 0.6;
  } else if (name == "s53_switching_sat") {
    s = switching("s53_switching_sat", ProtocolKind::Sat);
  } else if (name == "s53_switching_satsgn") {
    s = switching("s53_switching_satsgn", ProtocolKind::SatSgn);
  } else if (name == "s54_delay_tau4") {
    s = delayed(4);
  } else if (name == "s54_delay_tau8") {
    s = delayed(8);
  } else if (name == "s54_delay_tau12") {
    s = delayed(12);
  } else if (name == "s54_delay_tau16") {
    s = delayed(16);
  } else if (name == "s55_large") {
    s = large();
  } else {
    throw ConfigError("unknown bundled scenario '" + std::string(name) + "'");
  }
  validate(s);
  return s;
}

}  // namespace agc
