#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "agc/trace.hpp"

namespace agc {

/// Malformed or truncated trace file.
class TraceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest-round-trip-safe text form (17 significant digits, %g style).
std::string format_double(double v);

/// CSV layout:
///   # agc-trace v1
///   # scenario=..., config_hash=..., protocol=..., schedule_id=..., n=..., p_mis=...
///   # seed <path>=<value>            (one line per seed)
///   k,x_1..x_n,dx_1..dx_n,cost,residual,feas_residual,grad_spread
///   <one row per record; residual empty when no oracle was attached>
///   # end records=<count>
std::string trace_to_csv(const SimTrace& trace);
SimTrace trace_from_csv(const std::string& text);

void write_trace_csv(const SimTrace& trace, const std::filesystem::path& path);
SimTrace read_trace_csv(const std::filesystem::path& path);

/// Writes `text` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);

/// gnuplot data files for power states, ramp rates and residual cost, plus
/// a script rendering them. Returns the paths written.
std::vector<std::filesystem::path> write_plot_files(const SimTrace& trace,
                                                    const std::filesystem::path& dir,
                                                    const std::string& stem);

}  // namespace agc
