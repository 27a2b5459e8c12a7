#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "agc/cost_model.hpp"
#include "agc/protocol.hpp"
#include "agc/trace.hpp"

namespace agc {

/// What a trace is checked against: the scenario quantities that the
/// report's bounds depend on.
struct VerifySpec {
  ProtocolConfig protocol;
  std::vector<GeneratorParams> params;
  PenaltyConfig penalty;
  double p_mis = 0.0;
  double tol = 1e-6;            // gradient-spread convergence threshold
  std::string config_hash;      // empty: skip the metadata check
};

/// Lyapunov checks are gated only for eta at or below this value.
inline constexpr double kLyapunovEtaGate = 0.1;
inline constexpr double kLyapunovTolerance = 1e-9;
inline constexpr double kRrlTolerance = 1e-12;

struct VerificationReport {
  std::int64_t records = 0;

  double feasibility_max = 0.0;    // max_k |sum x(k) - P_mis|, MW
  double feasibility_bound = 0.0;  // n * 1e-12 * |P_mis|
  bool feasibility_ok = true;

  double rrl_bound = 0.0;          // per-iteration ramp allowance, MW
  std::int64_t rrl_violation_count = 0;
  double rrl_worst_excess = 0.0;   // MW above rrl_bound, 0 if none
  bool rrl_gated = true;

  bool lyapunov_gated = false;
  bool lyapunov_available = false;
  std::int64_t lyapunov_violations = 0;
  double lyapunov_worst_increase = 0.0;

  bool converged = false;
  std::optional<std::int64_t> iterations_to_tol;
  double final_grad_spread = 0.0;
  double box_violation_terminal = 0.0;  // MW outside [m_lo, m_hi] at the end

  bool passed() const;
  /// key=value lines, one per field, ending with "passed=".
  std::string to_text() const;
};

/// Raised when a trace does not belong to the scenario it is checked against.
class MetadataMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-step ramp allowance used by verify(): eta * R. For the delayed
/// protocol several messages may land at once, so it is
/// min(R, eta * R * (bound + 1)).
double rrl_allowance(const ProtocolConfig& cfg);

VerificationReport verify(const SimTrace& trace, const VerifySpec& spec);

/// First k with residual(k) <= fraction * residual(0). Requires residuals.
std::optional<std::int64_t> iterations_to_residual(const SimTrace& trace, double fraction);

/// max_i (max - min of x_i) over the last `tail_window` records.
double chatter_amplitude(const SimTrace& trace, std::size_t tail_window);

}  // namespace agc
