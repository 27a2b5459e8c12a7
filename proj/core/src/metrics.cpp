#include "agc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace agc {

double rrl_allowance(const ProtocolConfig& cfg) {
  const double base = cfg.eta * cfg.rrl;
  if (cfg.kind != ProtocolKind::DelayedSat) return base;
  return std::min(cfg.rrl, base * (cfg.delay_bound + 1));
}

bool VerificationReport::passed() const {
  if (!feasibility_ok) return false;
  if (rrl_gated && rrl_violation_count > 0) return false;
  if (lyapunov_gated && lyapunov_violations > 0) return false;
  return true;
}

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os.precision(17);
  os << "records=" << records << '\n'
     << "feasibility_max=" << feasibility_max << '\n'
     << "feasibility_bound=" << feasibility_bound << '\n'
     << "feasibility_ok=" << (feasibility_ok ? "true" : "false") << '\n'
     << "rrl_bound=" << rrl_bound << '\n'
     << "rrl_gated=" << (rrl_gated ? "true" : "false") << '\n'
     << "rrl_violation_count=" << rrl_violation_count << '\n'
     << "rrl_worst_excess=" << rrl_worst_excess << '\n'
     << "lyapunov_gated=" << (lyapunov_gated ? "true" : "false") << '\n'
     << "lyapunov_available=" << (lyapunov_available ? "true" : "false") << '\n'
     << "lyapunov_violations=" << lyapunov_violations << '\n'
     << "lyapunov_worst_increase=" << lyapunov_worst_increase << '\n'
     << "converged=" << (converged ? "true" : "false") << '\n'
     << "iterations_to_tol="
     << (iterations_to_tol ? std::to_string(*iterations_to_tol) : std::string("none")) << '\n'
     << "final_grad_spread=" << final_grad_spread << '\n'
     << "box_violation_terminal=" << box_violation_terminal << '\n'
     << "passed=" << (passed() ? "true" : "false") << '\n';
  return os.str();
}

VerificationReport verify(const SimTrace& trace, const VerifySpec& spec) {
  if (!spec.config_hash.empty() && trace.meta.config_hash != spec.config_hash)
    throw MetadataMismatch("trace config hash " + trace.meta.config_hash +
                           " does not match scenario hash " + spec.config_hash);
  if (trace.n != spec.params.size())
    throw MetadataMismatch("trace has " + std::to_string(trace.n) + " nodes, scenario has " +
                           std::to_string(spec.params.size()));
  if (trace.records.empty()) throw std::invalid_argument("verify: empty trace");

  VerificationReport rep;
  rep.records = static_cast<std::int64_t>(trace.records.size());
  rep.feasibility_bound = static_cast<double>(trace.n) * 1e-12 * std::max(1.0, std::abs(spec.p_mis));
  rep.rrl_bound = rrl_allowance(spec.protocol);

  const bool have_residual =
      std::all_of(trace.records.begin(), trace.records.end(),
                  [](const TraceRecord& r) { return r.residual.has_value(); });
  rep.lyapunov_available = true;
  rep.lyapunov_gated = spec.protocol.eta <= kLyapunovEtaGate;

  for (std::size_t r = 0; r < trace.records.size(); ++r) {
    const auto& rec = trace.records[r];
    if (rec.x.size() != trace.n || rec.dx.size() != trace.n)
      throw std::invalid_argument("verify: record width does not match n");
    double sum = 0.0;
    for (double v : rec.x) sum += v;
    rep.feasibility_max = std::max(rep.feasibility_max, std::abs(sum - spec.p_mis));

    if (r > 0) {
      const auto& prev = trace.records[r - 1];
      bool violated = false;
      for (std::size_t i = 0; i < trace.n; ++i) {
        const double excess = std::abs(rec.x[i] - prev.x[i]) - rep.rrl_bound;
        if (excess > kRrlTolerance) {
          violated = true;
          rep.rrl_worst_excess = std::max(rep.rrl_worst_excess, excess);
        }
      }
      if (violated) ++rep.rrl_violation_count;

      // The residual differs from the cost only by a constant, so the cost
      // column is an equivalent Lyapunov signal when no oracle was attached.
      const double increase =
          have_residual ? *rec.residual - *prev.residual : rec.cost - prev.cost;
      if (increase > kLyapunovTolerance) {
        ++rep.lyapunov_violations;
        rep.lyapunov_worst_increase = std::max(rep.lyapunov_worst_increase, increase);
      }
    }
    if (!rep.iterations_to_tol && rec.grad_spread < spec.tol) rep.iterations_to_tol = rec.k;
  }
  rep.feasibility_ok = rep.feasibility_max <= rep.feasibility_bound;

  const auto& last = trace.records.back();
  rep.final_grad_spread = last.grad_spread;
  rep.converged = last.grad_spread < spec.tol;
  for (std::size_t i = 0; i < trace.n; ++i) {
    const auto& p = spec.params[i];
    const double out = std::max({last.x[i] - p.m_hi, p.m_lo - last.x[i], 0.0});
    rep.box_violation_terminal = std::max(rep.box_violation_terminal, out);
  }
  return rep;
}

std::optional<std::int64_t> iterations_to_residual(const SimTrace& trace, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("iterations_to_residual: fraction must be in (0, 1)");
  if (trace.records.empty() || !trace.records.front().residual)
    throw std::invalid_argument("iterations_to_residual: trace has no residual column");
  const double threshold = fraction * *trace.records.front().residual;
  for (const auto& r : trace.records) {
    if (!r.residual) throw std::invalid_argument("iterations_to_residual: missing residual");
    if (*r.residual <= threshold) return r.k;
  }
  return std::nullopt;
}

double chatter_amplitude(const SimTrace& trace, std::size_t tail_window) {
  if (tail_window > trace.records.size())
    throw std::invalid_argument("chatter_amplitude: window longer than trace");
  if (tail_window == 0) return 0.0;
  const std::size_t start = trace.records.size() - tail_window;
  double amplitude = 0.0;
  for (std::size_t i = 0; i < trace.n; ++i) {
    double lo = trace.records[start].x[i];
    double hi = lo;
    for (std::size_t r = start; r < trace.records.size(); ++r) {
      lo = std::min(lo, trace.records[r].x[i]);
      hi = std::max(hi, trace.records[r].x[i]);
    }
    amplitude = std::max(amplitude, hi - lo);
  }
  return amplitude;
}

}  // namespace agc
