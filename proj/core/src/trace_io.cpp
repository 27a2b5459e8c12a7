#include "agc/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>

namespace agc {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

constexpr std::string_view kMagic = "# agc-trace v1";

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw TraceFormatError("line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  return v;
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw TraceFormatError("line " + std::to_string(line) + ": bad integer '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string header_row(std::size_t n) {
  std::string h = "k";
  for (std::size_t i = 1; i <= n; ++i) h += ",x_" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) h += ",dx_" + std::to_string(i);
  h += ",cost,residual,feas_residual,grad_spread";
  return h;
}

}  // namespace

std::string trace_to_csv(const SimTrace& trace) {
  std::string out;
  out.reserve(trace.records.size() * (trace.n * 2 + 4) * 24 + 512);
  out += kMagic;
  out += '\n';
  out += "# scenario=" + trace.meta.scenario + '\n';
  out += "# config_hash=" + trace.meta.config_hash + '\n';
  out += "# protocol=" + trace.meta.protocol + '\n';
  out += "# schedule_id=" + trace.meta.schedule_id + '\n';
  out += "# n=" + std::to_string(trace.n) + '\n';
  out += "# p_mis=" + format_double(trace.p_mis) + '\n';
  for (const auto& [path, seed] : trace.meta.seeds)
    out += "# seed " + path + "=" + std::to_string(seed) + '\n';
  out += header_row(trace.n);
  out += '\n';
  for (const auto& r : trace.records) {
    out += std::to_string(r.k);
    for (double v : r.x) (out += ',') += format_double(v);
    for (double v : r.dx) (out += ',') += format_double(v);
    (out += ',') += format_double(r.cost);
    out += ',';
    if (r.residual) out += format_double(*r.residual);
    (out += ',') += format_double(r.feas_residual);
    (out += ',') += format_double(r.grad_spread);
    out += '\n';
  }
  out += "# end records=" + std::to_string(trace.records.size()) + '\n';
  return out;
}

SimTrace trace_from_csv(const std::string& text) {
  SimTrace t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool have_n = false, have_header = false;
  std::optional<std::size_t> trailer;

  if (!std::getline(in, line) || line != kMagic) throw TraceFormatError("not an agc trace file");
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (trailer) throw TraceFormatError("line " + std::to_string(lineno) + ": data after end marker");
    std::string_view sv(line);
    if (sv.starts_with("# ")) {
      sv.remove_prefix(2);
      if (sv.starts_with("end records=")) {
        trailer = static_cast<std::size_t>(parse_int(sv.substr(12), lineno));
      } else if (sv.starts_with("seed ")) {
        sv.remove_prefix(5);
        const auto eq = sv.rfind('=');
        if (eq == std::string_view::npos) throw TraceFormatError("line " + std::to_string(lineno) + ": bad seed");
        t.meta.seeds.emplace_back(std::string(sv.substr(0, eq)),
                                  static_cast<std::uint64_t>(std::stoull(std::string(sv.substr(eq + 1)))));
      } else {
        const auto eq = sv.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = sv.substr(0, eq);
        const std::string value(sv.substr(eq + 1));
        if (key == "scenario") t.meta.scenario = value;
        else if (key == "config_hash") t.meta.config_hash = value;
        else if (key == "protocol") t.meta.protocol = value;
        else if (key == "schedule_id") t.meta.schedule_id = value;
        else if (key == "n") { t.n = static_cast<std::size_t>(parse_int(value, lineno)); have_n = true; }
        else if (key == "p_mis") t.p_mis = parse_double(value, lineno);
      }
      continue;
    }
    if (!have_n) throw TraceFormatError("line " + std::to_string(lineno) + ": missing n before data");
    if (!have_header) {
      if (line != header_row(t.n)) throw TraceFormatError("line " + std::to_string(lineno) + ": unexpected column header");
      have_header = true;
      continue;
    }
    const auto cols = split(sv, ',');
    const std::size_t expected = 2 * t.n + 5;
    if (cols.size() != expected)
      throw TraceFormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(expected) +
                             " columns, found " + std::to_string(cols.size()));
    TraceRecord r;
    r.k = parse_int(cols[0], lineno);
    r.x.reserve(t.n);
    r.dx.reserve(t.n);
    for (std::size_t i = 0; i < t.n; ++i) r.x.push_back(parse_double(cols[1 + i], lineno));
    for (std::size_t i = 0; i < t.n; ++i) r.dx.push_back(parse_double(cols[1 + t.n + i], lineno));
    std::size_t c = 1 + 2 * t.n;
    r.cost = parse_double(cols[c++], lineno);
    if (!cols[c].empty()) r.residual = parse_double(cols[c], lineno);
    ++c;
    r.feas_residual = parse_double(cols[c++], lineno);
    r.grad_spread = parse_double(cols[c++], lineno);
    if (r.k != static_cast<std::int64_t>(t.records.size()))
      throw TraceFormatError("line " + std::to_string(lineno) + ": records out of order");
    t.records.push_back(std::move(r));
  }
  if (!have_header) throw TraceFormatError("trace has no column header");
  if (!trailer) throw TraceFormatError("trace is truncated (no end marker)");
  if (*trailer != t.records.size())
    throw TraceFormatError("trace is truncated: end marker says " + std::to_string(*trailer) +
                           " records, found " + std::to_string(t.records.size()));
  return t;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_trace_csv(const SimTrace& trace, const std::filesystem::path& path) {
  write_file_atomic(path, trace_to_csv(trace));
}

SimTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceFormatError("cannot open trace file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return trace_from_csv(buf.str());
}

std::vector<std::filesystem::path> write_plot_files(const SimTrace& trace,
                                                    const std::filesystem::path& dir,
                                                    const std::string& stem) {
  if (trace.records.empty()) throw TraceFormatError("cannot plot an empty trace");
  const auto power = dir / (stem + "_power.dat");
  const auto rate = dir / (stem + "_rate.dat");
  const auto residual = dir / (stem + "_residual.dat");
  const auto script = dir / (stem + ".gp");

  std::string p = "# k x_1..x_n (MW)\n";
  std::string r = "# k dx_1..dx_n (MW per iteration)\n";
  std::string c = "# k residual_cost($/h) cost($/h)\n";
  const bool has_residual = trace.records.front().residual.has_value();
  for (const auto& rec : trace.records) {
    const std::string k = std::to_string(rec.k);
    p += k;
    for (double v : rec.x) (p += ' ') += format_double(v);
    p += '\n';
    r += k;
    for (double v : rec.dx) (r += ' ') += format_double(v);
    r += '\n';
    c += k + ' ' + (rec.residual ? format_double(*rec.residual) : std::string("nan")) + ' ' +
         format_double(rec.cost) + '\n';
  }

  std::ostringstream gp;
  gp << "# gnuplot -p " << script.filename().string() << "\n"
     << "set terminal pngcairo size 900,600\n"
     << "set xlabel 'iteration k'\n"
     << "set output '" << stem << "_power.png'\n"
     << "set ylabel 'power (MW)'\n"
     << "plot for [i=2:" << trace.n + 1 << "] '" << power.filename().string()
     << "' using 1:i with lines notitle\n"
     << "set output '" << stem << "_rate.png'\n"
     << "set ylabel 'ramp (MW/iteration)'\n"
     << "plot for [i=2:" << trace.n + 1 << "] '" << rate.filename().string()
     << "' using 1:i with lines notitle\n"
     << "set output '" << stem << "_residual.png'\n"
     << "set logscale y\n"
     << "set ylabel '" << (has_residual ? "residual cost ($/h)" : "cost ($/h)") << "'\n"
     << "plot '" << residual.filename().string() << "' using 1:" << (has_residual ? 2 : 3)
     << " with lines notitle\n";

  write_file_atomic(power, p);
  write_file_atomic(rate, r);
  write_file_atomic(residual, c);
  write_file_atomic(script, gp.str());
  return {power, rate, residual, script};
}

}  // namespace agc
