#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "agc/cost_model.hpp"

namespace agc {

/// Raised when a bisection fails to bracket or to reach its tolerance.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Centralized optimum of sum_i total_cost_i(x_i) s.t. sum_i x_i = P_mis.
struct OracleSolution {
  std::vector<double> x_star;
  double lambda_star = 0.0;  // common marginal cost, $/MWh
  double cost_star = 0.0;    // $/h
  int iterations = 0;        // outer bisection steps
};

struct OracleTolerances {
  double lambda_tol = 1e-10;  // $/MWh
  double x_tol = 1e-10;       // MW
  int max_iterations = 400;
};

/// Unique x with gradient(x) == lambda, by bisection on a bracket that is
/// widened until it straddles lambda.
double invert_gradient(const GeneratorParams& p, const PenaltyConfig& pen, double lambda,
                       double tol = 1e-10, int max_iterations = 400);

/// Outer bisection on lambda over the increasing map lambda -> sum_i x_i(lambda).
OracleSolution solve_centralized(std::span<const GeneratorParams> params,
                                 const PenaltyConfig& pen, double p_mis,
                                 const OracleTolerances& tol = {});

/// sum_i total_cost(x_i) - cost_star, evaluated term by term against x_star
/// so the difference does not cancel catastrophically.
double residual_cost(std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                     std::span<const double> x, const OracleSolution& sol);

}  // namespace agc
