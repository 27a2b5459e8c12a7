#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "agc/oracle.hpp"
#include "agc/scenario.hpp"
#include "support.hpp"

using agc::PenaltyConfig;

namespace {
const PenaltyConfig kPen{1.0, 2};
}

TEST(Oracle, InvertGradientExamples) {
  const auto& a = agc::stock_generator("A");
  EXPECT_NEAR(agc::invert_gradient(a, kPen, 6.0), 50.0, 1e-9);
  EXPECT_NEAR(agc::invert_gradient(a, kPen, 12.56), 82.0, 1e-9);
  EXPECT_NEAR(agc::invert_gradient(a, kPen, -0.56), 18.0, 1e-9);
}

TEST(Oracle, InvertGradientRoundTrips) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> xs(-200.0, 400.0);
  for (const auto& p : agc::stock_generators()) {
    for (int t = 0; t < 50; ++t) {
      const double x0 = xs(rng);
      EXPECT_NEAR(agc::invert_gradient(p, kPen, agc::gradient(p, kPen, x0)), x0, 1e-8);
    }
  }
}

TEST(Oracle, SingleGeneratorTakesEverything) {
  const auto params = agc::test::stock_params({"C"});
  const auto sol = agc::solve_centralized(params, kPen, 700.0);
  ASSERT_EQ(sol.x_star.size(), 1u);
  EXPECT_NEAR(sol.x_star[0], 700.0, 1e-9);
  EXPECT_NEAR(sol.lambda_star, agc::gradient(params[0], kPen, 700.0), 1e-6);
}

TEST(Oracle, IdenticalUnitsSplitEvenly) {
  for (std::size_t n : {2u, 5u, 17u}) {
    std::vector<agc::GeneratorParams> params(n, agc::stock_generator("A"));
    const auto sol = agc::solve_centralized(params, kPen, 100.0 * n / 2.0);
    for (double x : sol.x_star) EXPECT_NEAR(x, 50.0, 1e-9);
    EXPECT_NEAR(sol.lambda_star, 6.0, 1e-9);
  }
}

TEST(Oracle, TwoTypeKkt) {
  const auto params = agc::test::stock_params({"A", "B"});
  const auto sol = agc::solve_centralized(params, kPen, 100.0);
  EXPECT_NEAR(sol.x_star[0], 50.0, 1e-9);
  EXPECT_NEAR(sol.x_star[1], 50.0, 1e-9);
  EXPECT_NEAR(sol.lambda_star, 6.0, 1e-9);
  EXPECT_NEAR(sol.cost_star, agc::base_cost(params[0], 50.0) + agc::base_cost(params[1], 50.0),
              1e-9);
}

TEST(Oracle, SolutionSatisfiesOptimalityConditions) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> per_unit(-10.0, 150.0);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 25;
    const auto params = agc::test::random_stock(n, rng);
    const double p_mis = per_unit(rng) * n;
    const PenaltyConfig pen{0.5 + (t % 4), 2 + t % 3};
    const auto sol = agc::solve_centralized(params, pen, p_mis);
    EXPECT_NEAR(agc::test::sum(sol.x_star), p_mis, 1e-9 * std::max(1.0, std::abs(p_mis)));
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(agc::gradient(params[i], pen, sol.x_star[i]), sol.lambda_star,
                  1e-9 * std::max(1.0, std::abs(sol.lambda_star)))
          << "instance " << t << " node " << i;
    EXPECT_NEAR(sol.cost_star, agc::network_cost(params, pen, sol.x_star),
                1e-12 * std::max(1.0, std::abs(sol.cost_star)));
  }
}

TEST(Oracle, AggregateResponseIsIncreasingInLambda) {
  const auto params = agc::test::stock_params({"A", "B", "C", "D", "E"});
  double prev = -std::numeric_limits<double>::infinity();
  for (double lambda = -50.0; lambda <= 50.0; lambda += 0.5) {
    double total = 0.0;
    for (const auto& p : params) total += agc::invert_gradient(p, kPen, lambda);
    EXPECT_GT(total, prev);
    prev = total;
  }
}

TEST(Oracle, NoGridPointBeatsOptimum) {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<int> load(40, 240);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 1 + t % 3;
    const auto params = agc::test::random_stock(n, rng);
    const double p_mis = load(rng);
    const auto sol = agc::solve_centralized(params, kPen, p_mis);
    EXPECT_GE(agc::test::grid_min_cost(params, kPen, p_mis, 0.05), sol.cost_star - 1e-6);
  }
}

TEST(Oracle, ResidualCost) {
  const auto params = agc::test::stock_params({"A", "B", "C"});
  const auto sol = agc::solve_centralized(params, kPen, 180.0);
  EXPECT_NEAR(agc::residual_cost(params, kPen, sol.x_star, sol), 0.0, 1e-9);
  auto x = sol.x_star;
  x[0] += 1.0;
  x[2] -= 1.0;
  EXPECT_GT(agc::residual_cost(params, kPen, x, sol), 0.0);
}

// The s51 instance has every unit strictly inside its box at the optimum,
// so lambda* has the closed form (P + sum beta/2gamma) / sum 1/2gamma.
TEST(Oracle, S51GoldenValues) {
  const auto s = agc::bundled_scenario("s51_sat");
  const auto params = agc::resolve_generators(s);
  const auto sol = agc::solve_centralized(params, s.penalty, s.p_mis);

  double num = s.p_mis, den = 0.0;
  for (const auto& p : params) {
    num += p.beta / (2 * p.gamma);
    den += 1.0 / (2 * p.gamma);
  }
  const double lambda = num / den;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double xi = (lambda - params[i].beta) / (2 * params[i].gamma);
    ASSERT_GT(xi, params[i].m_lo);
    ASSERT_LT(xi, params[i].m_hi);
    EXPECT_NEAR(sol.x_star[i], xi, 1e-9);
  }
  EXPECT_NEAR(sol.lambda_star, lambda, 1e-10);

  EXPECT_NEAR(sol.lambda_star, 7.90663900414794, 1e-11);
  EXPECT_NEAR(sol.cost_star, 6961.818637621023, 1e-8);
  const std::vector<double> initial(10, 70.0);
  EXPECT_NEAR(agc::residual_cost(params, s.penalty, initial, sol), 18.681362378976303, 1e-9);
}
