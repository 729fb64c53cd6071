#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sfw/problems.hpp"
#include "sfw/solver_config.hpp"

namespace sfw {

struct ExperimentSpec {
  std::string name = "experiment";
  ProblemSpec problem;
  /// When set, every repetition solves this stored instance instead of a
  /// generated one.
  std::filesystem::path instance_file;
  std::vector<SolverConfig> solvers;
  std::size_t repetitions = 1;
  std::filesystem::path out_dir = "results";
  std::size_t threads = 1;
  bool save_instances = false;
};

/// Keys: name, problem{family, m, n, ...}, instance, solvers[...],
/// repetitions, out, threads, save_instances.
ExperimentSpec parse_experiment_spec(const nlohmann::json& j);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct CellResult {
  std::string label;
  std::size_t rep = 0;
  bool ok = false;
  std::string status;
  std::string error;
  std::size_t rows = 0;
  std::optional<std::size_t> iters_to_tol;
  std::optional<double> time_to_tol;
  double final_f = 0.0;
  double final_gap = 0.0;
  double final_bound_gap = 0.0;
  std::size_t envelope_violations = 0;
  std::filesystem::path trace_file;
};

struct ExperimentReport {
  std::vector<CellResult> cells;
  /// All cells finished without error and no envelope was violated.
  bool success() const;
};

/// Runs every (solver, repetition) cell, writing <label>_rep<i>.csv traces and
/// summary.csv into spec.out_dir. Repetition i uses problem seed + i.
/// Solver failures are recorded per cell and do not stop the run.
ExperimentReport run_experiment(const ExperimentSpec& spec);

void write_summary_csv(const std::filesystem::path& path, const ExperimentReport& report);

struct OracleBenchSpec {
  PolytopeKind polytope = PolytopeKind::simplex;
  std::vector<std::size_t> dims;
  std::vector<std::string> oracles = {"lmo", "slmo", "slmo2", "projection"};
  std::size_t repetitions = 20;
  std::uint64_t seed = 1;
  bool parallel = false;
  /// Each timed batch runs for at least this long.
  double min_batch_seconds = 1e-3;
  std::filesystem::path out_dir = "results";
};

/// Keys: polytope, dims (list) or sweep{min, max, points}, oracles,
/// repetitions, seed, parallel, min_batch_seconds, out.
OracleBenchSpec parse_oracle_bench_spec(const nlohmann::json& j);
OracleBenchSpec load_oracle_bench_spec(const std::filesystem::path& path);

struct OracleTiming {
  std::string oracle;
  std::size_t n = 0;
  double mean_ns = 0.0;
  double std_ns = 0.0;
};

/// Per-call timings. slmo2 excludes the prepare phase.
std::vector<OracleTiming> run_oracle_bench(const OracleBenchSpec& spec);
void write_oracle_csv(const std::filesystem::path& path, const std::vector<OracleTiming>& rows);

struct SummaryOptions {
  /// Write down-sampled gap-vs-iteration/time series here when set.
  std::optional<std::filesystem::path> plot_csv;
  std::size_t plot_points = 200;
};

/// Groups the traces in dir by solver label and prints a table.
void summarize(const std::filesystem::path& dir, std::ostream& out, const SummaryOptions& opts = {});

}  // namespace sfw
