#include "agc/cost_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace agc {
namespace {

const std::array<GeneratorParams, 5> kStock = {{
    {561.0, 2.0, 0.04, 20.0, 80.0, "A"},
    {310.0, 3.0, 0.03, 20.0, 90.0, "B"},
    {78.0, 4.0, 0.035, 20.0, 70.0, "C"},
    {561.0, 4.0, 0.03, 20.0, 70.0, "D"},
    {78.0, 2.5, 0.04, 20.0, 80.0, "E"},
}};

// Integer power by repeated multiplication so small cases stay exact.
double ipow(double base, int exponent) {
  double out = 1.0;
  for (int e = 0; e < exponent; ++e) out *= base;
  return out;
}

}  // namespace

void GeneratorParams::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("generator '" + type_tag + "': gamma must be > 0");
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("generator '" + type_tag + "': alpha and beta must be finite");
  if (!(m_lo < m_hi) || !std::isfinite(m_lo) || !std::isfinite(m_hi))
    throw std::invalid_argument("generator '" + type_tag + "': requires m_lo < m_hi");
}

void PenaltyConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::invalid_argument("penalty.c must be > 0");
  if (sigma < 2) throw std::invalid_argument("penalty.sigma must be an integer >= 2");
}

std::span<const GeneratorParams> stock_generators() { return kStock; }

const GeneratorParams& stock_generator(std::string_view tag) {
  for (const auto& g : kStock)
    if (g.type_tag == tag) return g;
  throw std::invalid_argument("unknown generator type '" + std::string(tag) + "'");
}

double base_cost(const GeneratorParams& p, double x) {
  return p.gamma * x * x + p.beta * x + p.alpha;
}

double penalty(const GeneratorParams& p, const PenaltyConfig& pen, double x) {
  const double above = std::max(x - p.m_hi, 0.0);
  const double below = std::max(p.m_lo - x, 0.0);
  return pen.c * (ipow(above, pen.sigma) + ipow(below, pen.sigma));
}

double total_cost(const GeneratorParams& p, const PenaltyConfig& pen, double x) {
  return base_cost(p, x) + penalty(p, pen, x);
}

double gradient(const GeneratorParams& p, const PenaltyConfig& pen, double x) {
  const double above = std::max(x - p.m_hi, 0.0);
  const double below = std::max(p.m_lo - x, 0.0);
  const double slope = pen.c * pen.sigma;
  return 2.0 * p.gamma * x + p.beta + slope * ipow(above, pen.sigma - 1) -
         slope * ipow(below, pen.sigma - 1);
}

std::vector<double> gradients(std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                              std::span<const double> x) {
  if (params.size() != x.size())
    throw std::invalid_argument("gradients: parameter and state sizes differ");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = gradient(params[i], pen, x[i]);
  return out;
}

double network_cost(std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                    std::span<const double> x) {
  if (params.size() != x.size())
    throw std::invalid_argument("network_cost: parameter and state sizes differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += total_cost(params[i], pen, x[i]);
  return sum;
}

}  // namespace agc
