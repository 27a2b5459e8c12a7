#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <random>
#include <vector>

#include "agc/cost_model.hpp"
#include "agc/network.hpp"
#include "agc/protocol.hpp"

namespace agc::test {

inline std::vector<GeneratorParams> stock_params(std::initializer_list<const char*> tags) {
  std::vector<GeneratorParams> out;
  for (const char* t : tags) out.push_back(stock_generator(t));
  return out;
}

// Linear generator with gradient slope*x + offset inside a huge box, so a
// two-node test can dial in any gradient difference it needs.
inline GeneratorParams linear_gradient_unit(double offset, double slope = 1e-9) {
  return {0.0, offset, slope / 2.0, -1e9, 1e9, "T"};
}

inline Topology pair_graph(double w = 1.0) {
  const Edge e{0, 1, w};
  return Topology::from_edges(2, std::span<const Edge>(&e, 1));
}

inline std::vector<GeneratorParams> random_stock(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 4);
  const auto stock = stock_generators();
  std::vector<GeneratorParams> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(stock[pick(rng)]);
  return out;
}

// Exhaustive search over {x >= 0, sum x = p_mis} on a grid of `step` MW for
// n <= 3. p_mis must be a multiple of step. Returns the lowest total cost.
inline double grid_min_cost(std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                            double p_mis, double step) {
  const auto ticks = static_cast<long>(std::llround(p_mis / step));
  const auto at = [&](long t) { return static_cast<double>(t) * step; };
  double best = std::numeric_limits<double>::infinity();
  switch (params.size()) {
    case 1:
      return total_cost(params[0], pen, p_mis);
    case 2:
      for (long a = 0; a <= ticks; ++a)
        best = std::min(best, total_cost(params[0], pen, at(a)) +
                                  total_cost(params[1], pen, at(ticks - a)));
      return best;
    case 3: {
      std::vector<double> f1(ticks + 1), f2(ticks + 1), f3(ticks + 1);
      for (long t = 0; t <= ticks; ++t) {
        f1[t] = total_cost(params[0], pen, at(t));
        f2[t] = total_cost(params[1], pen, at(t));
        f3[t] = total_cost(params[2], pen, at(t));
      }
      for (long a = 0; a <= ticks; ++a)
        for (long b = 0; a + b <= ticks; ++b) best = std::min(best, f1[a] + f2[b] + f3[ticks - a - b]);
      return best;
    }
    default:
      throw std::invalid_argument("grid_min_cost: n must be 1, 2 or 3");
  }
}

inline double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace agc::test
