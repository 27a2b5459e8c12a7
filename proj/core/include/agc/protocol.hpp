#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "agc/cost_model.hpp"
#include "agc/network.hpp"
#include "agc/oracle.hpp"
#include "agc/trace.hpp"

namespace agc {

enum class ProtocolKind { Sat, SatSgn, Linear, DelayedSat };

std::string_view to_string(ProtocolKind kind);
/// Accepts "sat", "sat_sgn", "linear", "delayed_sat".
ProtocolKind parse_protocol_kind(std::string_view name);

struct ProtocolConfig {
  ProtocolKind kind = ProtocolKind::Sat;
  double eta = 1.0;            // step rate, (0, 1]
  double rrl = 1.0;            // ramp-rate limit R, MW per iteration
  double mu = 0.6;             // SatSgn exponent, (0, 1)
  double soft_sign_eps = 0.0;  // > 0 replaces sgn_mu by u / (|u| + eps)
  int delay_bound = 0;         // DelayedSat: maximum link delay in iterations
  std::uint64_t delay_seed = 0;

  void validate() const;

  bool operator==(const ProtocolConfig&) const = default;
};

struct PowerState {
  std::vector<double> x;  // MW
  std::int64_t k = 0;
};

/// Unit saturation clamp(u, -1, 1).
double sat(double u);
/// sign(u) * |u|^mu.
double sgn_mu(double u, double mu);
/// u / (|u| + eps).
double soft_sign(double u, double eps);

/// Saturated gradient-Laplacian step:
///   x_i <- x_i - eta * R / w_max * sum_j W_ij sat(grad_i - grad_j).
/// Each link's flow is evaluated once and applied with opposite signs to its
/// endpoints; every node accumulates its links in ascending neighbour order.
PowerState step_sat(const PowerState& state, const LinkGraph& graph,
                    std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                    const ProtocolConfig& cfg, double w_max);

/// As step_sat with sat(sgn_mu(.)) (or sat(soft_sign(.)) when soft_sign_eps > 0).
PowerState step_sat_sgn(const PowerState& state, const LinkGraph& graph,
                        std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                        const ProtocolConfig& cfg, double w_max);

/// Unsaturated baseline x_i <- x_i - eta * sum_j W_ij (grad_i - grad_j).
/// Ignores R and w_max.
PowerState step_linear(const PowerState& state, const LinkGraph& graph,
                       std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                       const ProtocolConfig& cfg, double w_max);

/// A time-stamped gradient pair travelling over link (i, j), i < j.
struct DelayedMessage {
  std::size_t i = 0;
  std::size_t j = 0;
  double weight = 0.0;
  double grad_i = 0.0;
  double grad_j = 0.0;
  std::int64_t origin = 0;
  std::int64_t delivery = 0;
};

/// In-flight messages of the delayed protocol.
///
/// Every iteration each active link emits one message carrying both
/// endpoint gradients. Its delay is drawn uniformly from {0, ..., bound}
/// as CounterRng(seed).below((k * n + i) * n + j, bound + 1), so both
/// endpoints see the same delivery time. Each message is delivered once;
/// messages of different origins may mature on a link in the same
/// iteration. Messages are stored in a ring of depth bound + 1 indexed by
/// origin iteration.
class DelayBuffer {
 public:
  DelayBuffer(std::size_t n, int delay_bound, std::uint64_t seed);

  std::size_t nodes() const { return n_; }
  int delay_bound() const { return bound_; }
  std::size_t depth() const { return slots_.size(); }
  /// Iteration the buffer expects to process next.
  std::int64_t next_iteration() const { return next_; }
  std::size_t in_flight() const;

  int delay_for(std::int64_t k, std::size_t i, std::size_t j) const;

  /// Queues one message per link of `graph` stamped with iteration k.
  void emit(std::int64_t k, const LinkGraph& graph, std::span<const double> grads);

  /// Removes and returns the messages due at iteration k, ordered by
  /// (i, j, origin), then advances to k + 1.
  std::vector<DelayedMessage> deliver(std::int64_t k);

 private:
  std::size_t n_;
  int bound_;
  std::uint64_t seed_;
  std::int64_t next_ = 0;
  std::vector<std::vector<DelayedMessage>> slots_;
};

/// Delayed saturated step with scale eta * R / w_max. Every message due at
/// iteration k contributes W_ij sat(grad_i(origin) - grad_j(origin)) to both
/// endpoints with opposite signs. Up to bound + 1 messages can land on a link
/// at once, so |dx_i| <= eta * R * (bound + 1). With delay_bound = 0 this is bit-identical
/// to step_sat. Throws if the buffer is not positioned at state.k.
PowerState step_delayed(const PowerState& state, const LinkGraph& graph, DelayBuffer& buffer,
                        std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                        const ProtocolConfig& cfg, double w_max);

/// Everything needed to iterate one protocol from a fixed initial state.
struct RunInputs {
  std::vector<GeneratorParams> params;
  PenaltyConfig penalty;
  ProtocolConfig protocol;
  TopologySchedule schedule;
  std::vector<double> initial;
  double p_mis = 0.0;
  std::int64_t steps = 0;
  /// Stop once max_i grad_i - min_i grad_i < tol (when stop_at_tol).
  double tol = 1e-6;
  bool stop_at_tol = true;
  TraceMetadata meta;
};

/// Iterates the selected protocol and records one TraceRecord per
/// iteration, including k = 0. If `oracle` is given the residual cost is
/// recorded as well.
SimTrace run(const RunInputs& in, const OracleSolution* oracle = nullptr);

}  // namespace agc
