#include "sfw/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace sfw {

std::size_t ConvergenceTrace::total_inner() const {
  std::size_t total = 0;
  for (const TraceRow& r : rows) total += r.inner;
  return total;
}

namespace {

void put_double(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
    return;
  }
  // Shortest round-trip representation keeps reruns bit-identical.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, res.ptr - buf);
}

double get_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("trace: bad number '" + s + "'");
  }
  return v;
}

template <typename T>
T get_int(const std::string& s) {
  T v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("trace: bad integer '" + s + "'");
  }
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    out << r.k << ',';
    put_double(out, r.f);
    out << ',';
    put_double(out, r.gap);
    out << ',';
    put_double(out, r.B);
    out << ',';
    put_double(out, r.d);
    out << ',' << r.time_ns << ',' << r.lmo << ',' << r.slmo2 << ',' << r.inner << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const ConvergenceTrace& trace) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write trace " + path.string());
  write_trace_csv(out, trace);
}

ConvergenceTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw InvalidArgument("trace: missing or unexpected header");
  }
  ConvergenceTrace trace;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) throw InvalidArgument("trace: expected 9 columns");
    TraceRow r;
    r.k = get_int<std::size_t>(cells[0]);
    r.f = get_double(cells[1]);
    r.gap = get_double(cells[2]);
    r.B = get_double(cells[3]);
    r.d = get_double(cells[4]);
    r.time_ns = get_int<std::int64_t>(cells[5]);
    r.lmo = get_int<std::size_t>(cells[6]);
    r.slmo2 = get_int<std::size_t>(cells[7]);
    r.inner = get_int<std::size_t>(cells[8]);
    trace.rows.push_back(r);
  }
  return trace;
}

ConvergenceTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read trace " + path.string());
  return read_trace_csv(in);
}

std::optional<std::size_t> iterations_to_tol(const ConvergenceTrace& trace, double tol) {
  for (const TraceRow& r : trace.rows) {
    if (r.gap <= tol) return r.k;
  }
  return std::nullopt;
}

}  // namespace sfw
