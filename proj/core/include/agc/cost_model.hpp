#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace agc {

/// Quadratic generation cost gamma*x^2 + beta*x + alpha with a soft box
/// [m_lo, m_hi]. Units: $/h, $/MWh, $/MW^2h and MW.
struct GeneratorParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double m_lo = 0.0;
  double m_hi = 0.0;
  std::string type_tag;

  /// Throws std::invalid_argument unless gamma > 0 and m_lo < m_hi.
  void validate() const;

  bool operator==(const GeneratorParams&) const = default;
};

/// Box penalty c * ([x - m_hi]_+^sigma + [m_lo - x]_+^sigma).
struct PenaltyConfig {
  double c = 1.0;
  int sigma = 2;

  /// sigma < 2 is rejected: the penalty gradient must be continuous.
  void validate() const;

  bool operator==(const PenaltyConfig&) const = default;
};

/// The five stock generator types A..E (m_lo = 20 MW for all of them).
std::span<const GeneratorParams> stock_generators();

/// Looks up a stock type by its tag ("A".."E"); throws std::invalid_argument otherwise.
const GeneratorParams& stock_generator(std::string_view tag);

double base_cost(const GeneratorParams& p, double x);
double penalty(const GeneratorParams& p, const PenaltyConfig& pen, double x);
double total_cost(const GeneratorParams& p, const PenaltyConfig& pen, double x);

/// Marginal cost d(total_cost)/dx. Strictly increasing in x for valid params.
double gradient(const GeneratorParams& p, const PenaltyConfig& pen, double x);

/// Per-node gradients for a whole power vector.
std::vector<double> gradients(std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                              std::span<const double> x);

/// Sum of total_cost over all generators.
double network_cost(std::span<const GeneratorParams> params, const PenaltyConfig& pen,
                    std::span<const double> x);

}  // namespace agc
