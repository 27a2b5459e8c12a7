#include "agc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace agc {

double invert_gradient(const GeneratorParams& p, const PenaltyConfig& pen, double lambda,
                       double tol, int max_iterations) {
  if (!std::isfinite(lambda)) throw OracleError("invert_gradient: lambda is not finite");
  // Unconstrained quadratic solution as the initial guess.
  const double guess = (lambda - p.beta) / (2.0 * p.gamma);
  double width = std::max(1.0, p.m_hi - p.m_lo);
  double lo = std::min(guess, p.m_lo) - width;
  double hi = std::max(guess, p.m_hi) + width;
  int widen = 0;
  while (gradient(p, pen, lo) > lambda || gradient(p, pen, hi) < lambda) {
    if (++widen > 200) throw OracleError("invert_gradient: could not bracket lambda");
    width *= 2.0;
    if (gradient(p, pen, lo) > lambda) lo -= width;
    if (gradient(p, pen, hi) < lambda) hi += width;
  }
  for (int it = 0; it < max_iterations; ++it) {
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) return mid;  // bracket at floating-point resolution
    if (gradient(p, pen, mid) < lambda)
      lo = mid;
    else
      hi = mid;
  }
  throw OracleError("invert_gradient: tolerance " + std::to_string(tol) + " not reached in " +
                    std::to_string(max_iterations) + " iterations");
}

namespace {

double allocated(std::span<const GeneratorParams> params, const PenaltyConfig& pen, double lambda,
                 const OracleTolerances& tol) {
  double sum = 0.0;
  for (const auto& p : params) sum += invert_gradient(p, pen, lambda, tol.x_tol, tol.max_iterations);
  return sum;
}

// d(gradient)/dx, with the penalty term only where it is active.
double curvature(const GeneratorParams& p, const PenaltyConfig& pen, double x) {
  double h = 2.0 * p.gamma;
  const double k = pen.c * pen.sigma * (pen.sigma - 1);
  const double above = x - p.m_hi;
  const double below = p.m_lo - x;
  if (above > 0.0) h += k * std::pow(above, pen.sigma - 2);
  if (below > 0.0) h += k * std::pow(below, pen.sigma - 2);
  return h;
}

}  // namespace

OracleSolution solve_centralized(std::span<const GeneratorParams> params,
                                 const PenaltyConfig& pen, double p_mis,
                                 const OracleTolerances& tol) {
  if (params.empty()) throw std::invalid_argument("solve_centralized: no generators");
  pen.validate();
  for (const auto& p : params) p.validate();

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& p : params) {
    lo = std::min(lo, gradient(p, pen, p.m_lo - std::abs(p_mis)));
    hi = std::max(hi, gradient(p, pen, p.m_hi + std::abs(p_mis)));
  }
  double width = std::max(1.0, hi - lo);
  int widen = 0;
  while (allocated(params, pen, lo, tol) > p_mis || allocated(params, pen, hi, tol) < p_mis) {
    if (++widen > 200) throw OracleError("solve_centralized: lambda bracket failure");
    width *= 2.0;
    if (allocated(params, pen, lo, tol) > p_mis) lo -= width;
    if (allocated(params, pen, hi, tol) < p_mis) hi += width;
  }

  OracleSolution sol;
  for (;;) {
    if (hi - lo <= tol.lambda_tol) break;
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (++sol.iterations > tol.max_iterations)
      throw OracleError("solve_centralized: lambda tolerance not reached");
    if (allocated(params, pen, mid, tol) < p_mis)
      lo = mid;
    else
      hi = mid;
  }
  sol.lambda_star = 0.5 * (lo + hi);
  sol.x_star.reserve(params.size());
  for (const auto& p : params)
    sol.x_star.push_back(invert_gradient(p, pen, sol.lambda_star, tol.x_tol, tol.max_iterations));

  // One Newton step on the balance: spread the leftover mismatch in
  // proportion to 1/curvature so every marginal cost moves by the same amount.
  double mismatch = p_mis;
  for (double xi : sol.x_star) mismatch -= xi;
  double compliance = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i)
    compliance += 1.0 / curvature(params[i], pen, sol.x_star[i]);
  const double dlambda = mismatch / compliance;
  for (std::size_t i = 0; i < params.size(); ++i)
    sol.x_star[i] += dlambda / curvature(params[i], pen, sol.x_star[i]);
  sol.lambda_star += dlambda;
  sol.cost_star = network_cost(params, pen, sol.x_star);
  return sol;
}

double residual_cost(std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                     std::span<const double> x, const OracleSolution& sol) {
  if (params.size() != x.size() || x.size() != sol.x_star.size())
    throw std::invalid_argument("residual_cost: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    sum += total_cost(params[i], pen, x[i]) - total_cost(params[i], pen, sol.x_star[i]);
  return sum;
}

}  // namespace agc
