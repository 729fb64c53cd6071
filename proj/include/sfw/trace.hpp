#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfw/solver_config.hpp"
#include "sfw/types.hpp"

namespace sfw {

/// One completed iteration (outer iteration for the refined solvers).
/// lmo/slmo2 are cumulative algorithmic oracle calls; instrumentation that
/// evaluates the FW gap is neither counted nor timed.
struct TraceRow {
  std::size_t k = 0;
  double f = 0.0;
  double gap = 0.0;
  double B = 0.0;
  double d = 0.0;
  std::int64_t time_ns = 0;
  std::size_t lmo = 0;
  std::size_t slmo2 = 0;
  std::size_t inner = 0;
};

struct ConvergenceTrace {
  std::string solver;
  SolverKind kind = SolverKind::fw;
  StepRule rule = StepRule::simple;
  std::size_t dim = 0;
  double f0 = 0.0;
  double B0 = 0.0;
  double d0 = 0.0;
  double gap0 = 0.0;
  /// Constants the solver ran with (last backtracking estimates if adaptive).
  double L = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double diameter = 0.0;
  double rho = 0.0;
  std::size_t prepares = 0;
  std::vector<TraceRow> rows;
  /// Refined solvers: whether the inner cap, not the break test, ended outer k.
  std::vector<char> cap_hit;
  bool converged = false;
  std::string status = "max_iter";

  std::size_t total_inner() const;
};

inline constexpr const char* kTraceHeader = "k,f,gap,B,d,time_ns,lmo,slmo2,inner";

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);
void write_trace_csv(const std::filesystem::path& path, const ConvergenceTrace& trace);
/// Reads rows back; metadata fields stay default.
ConvergenceTrace read_trace_csv(std::istream& in);
ConvergenceTrace read_trace_csv(const std::filesystem::path& path);

/// Index (k) of the first row with gap <= tol, if any.
std::optional<std::size_t> iterations_to_tol(const ConvergenceTrace& trace, double tol);

}  // namespace sfw
