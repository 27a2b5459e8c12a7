#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace agc {

/// State of the network after iteration k.
struct TraceRecord {
  std::int64_t k = 0;
  std::vector<double> x;   // MW
  std::vector<double> dx;  // x(k) - x(k-1), zero at k = 0
  double cost = 0.0;       // $/h
  std::optional<double> residual;  // $/h, present when an oracle was attached
  double feas_residual = 0.0;      // |sum x - P_mis|, MW
  double grad_spread = 0.0;        // max_ij |grad_i - grad_j|, $/MWh
};

struct TraceMetadata {
  std::string scenario;
  std::string config_hash;
  std::string protocol;
  std::string schedule_id;
  std::vector<std::pair<std::string, std::uint64_t>> seeds;
};

struct SimTrace {
  std::size_t n = 0;
  double p_mis = 0.0;
  TraceMetadata meta;
  std::vector<TraceRecord> records;

  std::int64_t iterations() const {
    return records.empty() ? 0 : static_cast<std::int64_t>(records.size()) - 1;
  }
};

}  // namespace agc
