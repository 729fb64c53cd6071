#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sfw/experiment.hpp"
#include "sfw/kernels.hpp"

namespace {

int cmd_experiment(const std::string& spec_path, std::optional<std::uint64_t> seed,
                   std::optional<std::string> out, std::optional<std::size_t> threads) {
  sfw::ExperimentSpec spec = sfw::load_experiment_spec(spec_path);
  if (seed) spec.problem.seed = *seed;
  if (out) spec.out_dir = *out;
  if (threads) spec.threads = *threads;
  const sfw::ExperimentReport report = sfw::run_experiment(spec);
  for (const sfw::CellResult& c : report.cells) {
    std::cout << c.label << " rep " << c.rep << ": " << c.status;
    if (!c.ok) std::cout << " (" << c.error << ')';
    if (c.envelope_violations > 0) std::cout << ", " << c.envelope_violations << " envelope violations";
    std::cout << '\n';
  }
  std::cout << "wrote " << (spec.out_dir / "summary.csv").string() << '\n';
  return report.success() ? 0 : 1;
}

int cmd_oracle_bench(const std::string& spec_path, std::optional<std::uint64_t> seed,
                     std::optional<std::string> out, std::optional<std::size_t> threads) {
  sfw::OracleBenchSpec spec = sfw::load_oracle_bench_spec(spec_path);
  if (seed) spec.seed = *seed;
  if (out) spec.out_dir = *out;
  if (threads) {
    sfw::kernels::set_threads(static_cast<int>(*threads));
    spec.parallel = *threads > 1;
  }
  const auto rows = sfw::run_oracle_bench(spec);
  std::filesystem::create_directories(spec.out_dir);
  const auto path = spec.out_dir / "oracles.csv";
  sfw::write_oracle_csv(path, rows);
  for (const auto& r : rows) {
    std::printf("%-11s n=%-9zu %14.1f ns  (sd %.1f)\n", r.oracle.c_str(), r.n, r.mean_ns, r.std_ns);
  }
  std::cout << "wrote " << path.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark harness for simplex-ball Frank-Wolfe solvers"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Override the random seed");
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  std::string spec_path;
  auto* experiment = app.add_subcommand("experiment", "Run an experiment suite");
  experiment->add_option("spec", spec_path, "Experiment spec (JSON)")->required()->check(CLI::ExistingFile);
  add_common(experiment);

  auto* oracle = app.add_subcommand("oracle-bench", "Time oracles over a dimension sweep");
  oracle->add_option("spec", spec_path, "Oracle benchmark spec (JSON)")->required()->check(CLI::ExistingFile);
  add_common(oracle);

  std::string dir;
  std::optional<std::string> plot;
  std::size_t plot_points = 200;
  auto* summary = app.add_subcommand("summarize", "Tabulate a directory of traces");
  summary->add_option("dir", dir, "Trace directory")->required()->check(CLI::ExistingDirectory);
  summary->add_option("--plot", plot, "Write down-sampled plot data to this CSV");
  summary->add_option("--points", plot_points, "Points per series in the plot CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*experiment) return cmd_experiment(spec_path, seed, out, threads);
    if (*oracle) return cmd_oracle_bench(spec_path, seed, out, threads);
    sfw::SummaryOptions opts;
    if (plot) opts.plot_csv = *plot;
    opts.plot_points = plot_points;
    sfw::summarize(dir, std::cout, opts);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
