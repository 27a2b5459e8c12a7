#include "agc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "agc/rng.hpp"

namespace agc {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Sat: return "sat";
    case ProtocolKind::SatSgn: return "sat_sgn";
    case ProtocolKind::Linear: return "linear";
    case ProtocolKind::DelayedSat: return "delayed_sat";
  }
  return "unknown";
}

ProtocolKind parse_protocol_kind(std::string_view name) {
  if (name == "sat") return ProtocolKind::Sat;
  if (name == "sat_sgn") return ProtocolKind::SatSgn;
  if (name == "linear") return ProtocolKind::Linear;
  if (name == "delayed_sat") return ProtocolKind::DelayedSat;
  throw std::invalid_argument("unknown protocol kind '" + std::string(name) + "'");
}

void ProtocolConfig::validate() const {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("protocol.eta must be in (0, 1]");
  if (!(rrl > 0.0) || !std::isfinite(rrl)) throw std::invalid_argument("protocol.rrl must be > 0");
  if (kind == ProtocolKind::SatSgn && !(mu > 0.0 && mu < 1.0))
    throw std::invalid_argument("protocol.mu must be in (0, 1)");
  if (!(soft_sign_eps >= 0.0) || !std::isfinite(soft_sign_eps))
    throw std::invalid_argument("protocol.soft_sign_eps must be >= 0");
  if (delay_bound < 0) throw std::invalid_argument("protocol.delay_bound must be >= 0");
  if (kind != ProtocolKind::DelayedSat && delay_bound != 0)
    throw std::invalid_argument("protocol.delay_bound is only valid for delayed_sat");
}

double sat(double u) { return std::clamp(u, -1.0, 1.0); }

double sgn_mu(double u, double mu) {
  if (u == 0.0) return 0.0;
  const double mag = std::pow(std::abs(u), mu);
  return u > 0.0 ? mag : -mag;
}

double soft_sign(double u, double eps) { return u / (std::abs(u) + eps); }

namespace {

void check_sizes(const PowerState& state, const LinkGraph& graph,
                 std::span<const GeneratorParams> params) {
  if (state.x.size() != graph.size() || params.size() != graph.size())
    throw std::invalid_argument("step: state, topology and parameter sizes differ");
}

// Applies per-link flows: node e.i loses flow[e], node e.j gains it.
PowerState apply_flows(const PowerState& state, const LinkGraph& graph,
                       std::span<const double> flow) {
  PowerState next{state.x, state.k + 1};
  for (std::size_t i = 0; i < graph.size(); ++i) {
    double delta = 0.0;
    for (const auto& inc : graph.incident(i)) {
      const double f = flow[inc.link];
      delta += graph.links()[inc.link].i == i ? f : -f;
    }
    next.x[i] = state.x[i] - delta;
  }
  return next;
}

template <class LinkMap>
PowerState step_static(const PowerState& state, const LinkGraph& graph,
                       std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                       double scale, LinkMap&& map) {
  check_sizes(state, graph, params);
  const auto grad = gradients(params, pen, state.x);
  const auto links = graph.links();
  std::vector<double> flow(links.size());
  for (std::size_t e = 0; e < links.size(); ++e)
    flow[e] = scale * (links[e].weight * map(grad[links[e].i] - grad[links[e].j]));
  return apply_flows(state, graph, flow);
}

double sat_scale(const ProtocolConfig& cfg, double w_max) {
  if (!(w_max > 0.0)) throw std::invalid_argument("step: w_max must be > 0");
  return cfg.eta * cfg.rrl / w_max;
}

}  // namespace

PowerState step_sat(const PowerState& state, const LinkGraph& graph,
                    std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                    const ProtocolConfig& cfg, double w_max) {
  return step_static(state, graph, params, pen, sat_scale(cfg, w_max),
                     [](double d) { return sat(d); });
}

PowerState step_sat_sgn(const PowerState& state, const LinkGraph& graph,
                        std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                        const ProtocolConfig& cfg, double w_max) {
  const double scale = sat_scale(cfg, w_max);
  if (cfg.soft_sign_eps > 0.0) {
    const double eps = cfg.soft_sign_eps;
    return step_static(state, graph, params, pen, scale,
                       [eps](double d) { return sat(soft_sign(d, eps)); });
  }
  const double mu = cfg.mu;
  return step_static(state, graph, params, pen, scale,
                     [mu](double d) { return sat(sgn_mu(d, mu)); });
}

PowerState step_linear(const PowerState& state, const LinkGraph& graph,
                       std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                       const ProtocolConfig& cfg, double /*w_max*/) {
  return step_static(state, graph, params, pen, cfg.eta, [](double d) { return d; });
}

DelayBuffer::DelayBuffer(std::size_t n, int delay_bound, std::uint64_t seed)
    : n_(n), bound_(delay_bound), seed_(seed) {
  if (delay_bound < 0) throw std::invalid_argument("DelayBuffer: negative delay bound");
  slots_.resize(static_cast<std::size_t>(delay_bound) + 1);
}

std::size_t DelayBuffer::in_flight() const {
  std::size_t count = 0;
  for (const auto& s : slots_) count += s.size();
  return count;
}

int DelayBuffer::delay_for(std::int64_t k, std::size_t i, std::size_t j) const {
  const auto counter = (static_cast<std::uint64_t>(k) * n_ + i) * n_ + j;
  return static_cast<int>(
      CounterRng(seed_).below(counter, static_cast<std::uint64_t>(bound_) + 1));
}

void DelayBuffer::emit(std::int64_t k, const LinkGraph& graph, std::span<const double> grads) {
  if (k != next_) throw std::logic_error("DelayBuffer: emit out of order");
  if (graph.size() != n_ || grads.size() != n_)
    throw std::invalid_argument("DelayBuffer: size mismatch");
  auto& slot = slots_[static_cast<std::size_t>(k) % slots_.size()];
  // Everything stamped k - depth was due by k - 1.
  if (!slot.empty()) throw std::logic_error("DelayBuffer: undelivered message overwritten");
  for (const auto& e : graph.links()) {
    const int delay = delay_for(k, e.i, e.j);
    slot.push_back({e.i, e.j, e.weight, grads[e.i], grads[e.j], k, k + delay});
  }
}

std::vector<DelayedMessage> DelayBuffer::deliver(std::int64_t k) {
  if (k != next_) throw std::logic_error("DelayBuffer: deliver out of order");
  std::vector<DelayedMessage> due;
  for (auto& slot : slots_) {
    auto split = std::stable_partition(slot.begin(), slot.end(),
                                       [k](const DelayedMessage& m) { return m.delivery != k; });
    due.insert(due.end(), split, slot.end());
    slot.erase(split, slot.end());
  }
  std::sort(due.begin(), due.end(), [](const DelayedMessage& a, const DelayedMessage& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.origin < b.origin;
  });
  ++next_;
  return due;
}

PowerState step_delayed(const PowerState& state, const LinkGraph& graph, DelayBuffer& buffer,
                        std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                        const ProtocolConfig& cfg, double w_max) {
  check_sizes(state, graph, params);
  if (buffer.delay_bound() != cfg.delay_bound ||
      buffer.depth() < static_cast<std::size_t>(cfg.delay_bound) + 1)
    throw std::invalid_argument("step_delayed: buffer depth does not match delay_bound");
  if (buffer.next_iteration() != state.k)
    throw std::invalid_argument("step_delayed: buffer is at iteration " +
                                std::to_string(buffer.next_iteration()) + ", state at " +
                                std::to_string(state.k));
  const double scale = sat_scale(cfg, w_max);
  const auto grad = gradients(params, pen, state.x);
  buffer.emit(state.k, graph, grad);
  const auto due = buffer.deliver(state.k);

  // Signed contributions per node, ordered by (neighbour, origin).
  struct Contribution {
    std::size_t neighbor;
    std::int64_t origin;
    double value;
  };
  std::vector<std::vector<Contribution>> per_node(state.x.size());
  for (const auto& m : due) {
    const double f = scale * (m.weight * sat(m.grad_i - m.grad_j));
    per_node[m.i].push_back({m.j, m.origin, f});
    per_node[m.j].push_back({m.i, m.origin, -f});
  }

  PowerState next{state.x, state.k + 1};
  for (std::size_t i = 0; i < per_node.size(); ++i) {
    auto& list = per_node[i];
    std::sort(list.begin(), list.end(), [](const Contribution& a, const Contribution& b) {
      return a.neighbor != b.neighbor ? a.neighbor < b.neighbor : a.origin < b.origin;
    });
    double delta = 0.0;
    for (std::size_t a = 0; a < list.size();) {
      double link_total = 0.0;
      std::size_t b = a;
      for (; b < list.size() && list[b].neighbor == list[a].neighbor; ++b)
        link_total += list[b].value;
      delta += link_total;
      a = b;
    }
    next.x[i] = state.x[i] - delta;
  }
  return next;
}

namespace {

TraceRecord make_record(const RunInputs& in, const OracleSolution* oracle, const PowerState& s,
                        std::vector<double> dx) {
  TraceRecord r;
  r.k = s.k;
  r.x = s.x;
  r.dx = std::move(dx);
  r.cost = network_cost(in.params, in.penalty, s.x);
  if (oracle) r.residual = residual_cost(in.params, in.penalty, s.x, *oracle);
  double sum = 0.0;
  for (double v : s.x) sum += v;
  r.feas_residual = std::abs(sum - in.p_mis);
  const auto grad = gradients(in.params, in.penalty, s.x);
  const auto [lo, hi] = std::minmax_element(grad.begin(), grad.end());
  r.grad_spread = grad.empty() ? 0.0 : *hi - *lo;
  return r;
}

}  // namespace

SimTrace run(const RunInputs& in, const OracleSolution* oracle) {
  const std::size_t n = in.params.size();
  if (n == 0) throw std::invalid_argument("run: no generators");
  if (in.initial.size() != n || in.schedule.size() != n)
    throw std::invalid_argument("run: generator, initial state and topology sizes differ");
  if (in.steps < 0) throw std::invalid_argument("run: steps must be >= 0");
  in.protocol.validate();
  in.penalty.validate();
  for (const auto& p : in.params) p.validate();
  if (oracle && oracle->x_star.size() != n) throw std::invalid_argument("run: oracle size mismatch");

  std::vector<LinkGraph> graphs;
  graphs.reserve(in.schedule.segments().size());
  for (const auto& seg : in.schedule.segments()) graphs.emplace_back(seg.topology);
  const double wmax = in.protocol.kind == ProtocolKind::Linear ? 1.0 : in.schedule.w_max();

  std::optional<DelayBuffer> buffer;
  if (in.protocol.kind == ProtocolKind::DelayedSat)
    buffer.emplace(n, in.protocol.delay_bound, in.protocol.delay_seed);

  SimTrace trace;
  trace.n = n;
  trace.p_mis = in.p_mis;
  trace.meta = in.meta;
  trace.meta.protocol = std::string(to_string(in.protocol.kind));
  trace.records.reserve(static_cast<std::size_t>(std::min<std::int64_t>(in.steps, 1 << 20)) + 1);

  PowerState state{in.initial, 0};
  trace.records.push_back(make_record(in, oracle, state, std::vector<double>(n, 0.0)));
  const auto converged = [&](const TraceRecord& r) {
    return in.stop_at_tol && in.tol > 0.0 && r.grad_spread < in.tol;
  };
  if (converged(trace.records.back())) return trace;

  for (std::int64_t k = 0; k < in.steps; ++k) {
    const LinkGraph& graph = graphs[in.schedule.segment_index_at(k)];
    PowerState next;
    switch (in.protocol.kind) {
      case ProtocolKind::Sat:
        next = step_sat(state, graph, in.params, in.penalty, in.protocol, wmax);
        break;
      case ProtocolKind::SatSgn:
        next = step_sat_sgn(state, graph, in.params, in.penalty, in.protocol, wmax);
        break;
      case ProtocolKind::Linear:
        next = step_linear(state, graph, in.params, in.penalty, in.protocol, wmax);
        break;
      case ProtocolKind::DelayedSat:
        next = step_delayed(state, graph, *buffer, in.params, in.penalty, in.protocol, wmax);
        break;
    }
    std::vector<double> dx(n);
    for (std::size_t i = 0; i < n; ++i) dx[i] = next.x[i] - state.x[i];
    state = std::move(next);
    trace.records.push_back(make_record(in, oracle, state, std::move(dx)));
    if (converged(trace.records.back())) break;
  }
  return trace;
}

}  // namespace agc
