#include "sfw/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "sfw/envelope.hpp"
#include "sfw/instance_io.hpp"
#include "sfw/oracles.hpp"
#include "sfw/solvers.hpp"
#include "sfw/trace.hpp"

namespace sfw {

using nlohmann::json;

namespace {

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
}

ProblemSpec parse_problem(const json& j) {
  ProblemSpec p;
  p.family = j.value("family", p.family);
  p.m = j.value("m", p.m);
  p.n = j.value("n", p.n);
  p.density = j.value("density", p.density);
  p.sparsity = j.value("sparsity", p.sparsity);
  p.cond = j.value("cond", p.cond);
  p.layers = j.value("layers", p.layers);
  p.width = j.value("width", p.width);
  p.edge_prob = j.value("edge_prob", p.edge_prob);
  p.network_file = j.value("network", p.network_file);
  if (j.contains("lambda")) p.lambda = j.at("lambda").get<double>();
  p.beta = j.value("beta", p.beta);
  if (j.contains("eta")) p.eta = j.at("eta").get<double>();
  p.seed = j.value("seed", p.seed);
  return p;
}

std::string file_label(const std::string& label) {
  std::string out;
  for (char c : label) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    out.push_back(keep ? c : '_');
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

ExperimentSpec parse_experiment_spec(const json& j) {
  ExperimentSpec spec;
  spec.name = j.value("name", spec.name);
  if (j.contains("problem")) spec.problem = parse_problem(j.at("problem"));
  if (j.contains("instance")) spec.instance_file = j.at("instance").get<std::string>();
  if (!j.contains("solvers") || !j.at("solvers").is_array() || j.at("solvers").empty()) {
    throw InvalidArgument("experiment spec needs a non-empty 'solvers' list");
  }
  for (const json& s : j.at("solvers")) spec.solvers.push_back(s.get<SolverConfig>());
  spec.repetitions = j.value("repetitions", spec.repetitions);
  if (spec.repetitions == 0) throw InvalidArgument("repetitions must be positive");
  if (j.contains("out")) spec.out_dir = j.at("out").get<std::string>();
  spec.threads = std::max<std::size_t>(1, j.value("threads", spec.threads));
  spec.save_instances = j.value("save_instances", false);

  std::map<std::string, int> seen;
  for (const SolverConfig& c : spec.solvers) {
    if (seen[c.display_name()]++ > 0) {
      throw InvalidArgument("duplicate solver label '" + c.display_name() + "'; set 'label'");
    }
  }
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  return parse_experiment_spec(read_json(path));
}

bool ExperimentReport::success() const {
  return std::all_of(cells.begin(), cells.end(),
                     [](const CellResult& c) { return c.ok && c.envelope_violations == 0; });
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  std::filesystem::create_directories(spec.out_dir);

  std::vector<ProblemInstance> instances;
  for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
    if (!spec.instance_file.empty()) {
      instances.push_back(load_instance(spec.instance_file));
    } else {
      ProblemSpec p = spec.problem;
      p.seed += rep;
      instances.push_back(make_problem(p));
    }
    if (spec.save_instances) {
      save_instance(spec.out_dir / ("instance_rep" + std::to_string(rep) + ".bin"), instances.back());
    }
  }
  for (const SolverConfig& c : spec.solvers) validate(c, instances.front().polytope->kind());

  struct Cell {
    std::size_t rep;
    std::size_t solver;
  };
  std::vector<Cell> cells;
  for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
    for (std::size_t s = 0; s < spec.solvers.size(); ++s) cells.push_back({rep, s});
  }

  ExperimentReport report;
  report.cells.resize(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const SolverConfig& cfg = spec.solvers[cells[i].solver];
      CellResult& out = report.cells[i];
      out.label = cfg.display_name();
      out.rep = cells[i].rep;
      out.trace_file = spec.out_dir / (file_label(out.label) + "_rep" + std::to_string(out.rep) + ".csv");
      try {
        const SolveResult r = solve(instances[cells[i].rep], cfg);
        const ConvergenceTrace& t = r.trace;
        write_trace_csv(out.trace_file, t);
        out.ok = true;
        out.status = t.status;
        out.rows = t.rows.size();
        out.envelope_violations = count_envelope_violations(t);
        for (const TraceRow& row : t.rows) {
          if (row.gap <= cfg.tol) {
            out.iters_to_tol = row.k;
            out.time_to_tol = static_cast<double>(row.time_ns) * 1e-9;
            break;
          }
        }
        if (!t.rows.empty()) {
          out.final_f = t.rows.back().f;
          out.final_gap = t.rows.back().gap;
          out.final_bound_gap = t.rows.back().f - t.rows.back().B;
        } else {
          out.final_f = t.f0;
          out.final_gap = t.gap0;
          out.final_bound_gap = t.f0 - t.B0;
        }
      } catch (const std::exception& e) {
        out.ok = false;
        out.status = "error";
        out.error = e.what();
      }
    }
  };
  const std::size_t nthreads = std::min(spec.threads, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  std::sort(report.cells.begin(), report.cells.end(), [](const CellResult& a, const CellResult& b) {
    return std::tie(a.label, a.rep) < std::tie(b.label, b.rep);
  });
  write_summary_csv(spec.out_dir / "summary.csv", report);
  return report;
}

void write_summary_csv(const std::filesystem::path& path, const ExperimentReport& report) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << "label,rep,status,rows,iters_to_tol,time_to_tol,final_f,final_gap,final_bound_gap,"
         "envelope_violations,error\n";
  for (const CellResult& c : report.cells) {
    std::string error = c.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    out << c.label << ',' << c.rep << ',' << c.status << ',' << c.rows << ','
        << (c.iters_to_tol ? std::to_string(*c.iters_to_tol) : "") << ','
        << (c.time_to_tol ? fmt(*c.time_to_tol) : "") << ',' << fmt(c.final_f) << ','
        << fmt(c.final_gap) << ',' << fmt(c.final_bound_gap) << ',' << c.envelope_violations << ','
        << error << '\n';
  }
}

// Oracle benchmark ------------------------------------------------------------

OracleBenchSpec parse_oracle_bench_spec(const json& j) {
  OracleBenchSpec spec;
  spec.polytope = parse_polytope_kind(j.value("polytope", std::string("simplex")));
  if (spec.polytope == PolytopeKind::flow) {
    throw InvalidArgument("oracle-bench supports simplex, hypercube and l1_ball");
  }
  if (j.contains("dims")) {
    spec.dims = j.at("dims").get<std::vector<std::size_t>>();
  } else if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    const double lo = s.at("min").get<double>();
    const double hi = s.at("max").get<double>();
    const std::size_t points = s.value("points", std::size_t{4});
    if (!(lo >= 1.0 && hi >= lo) || points == 0) throw InvalidArgument("invalid sweep");
    for (std::size_t i = 0; i < points; ++i) {
      const double t = points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(points - 1);
      spec.dims.push_back(static_cast<std::size_t>(std::llround(lo * std::pow(hi / lo, t))));
    }
  } else {
    throw InvalidArgument("oracle-bench spec needs 'dims' or 'sweep'");
  }
  if (spec.dims.empty()) throw InvalidArgument("oracle-bench: empty dimension list");
  if (j.contains("oracles")) spec.oracles = j.at("oracles").get<std::vector<std::string>>();
  for (const std::string& o : spec.oracles) {
    if (o != "lmo" && o != "slmo" && o != "slmo2" && o != "projection") {
      throw InvalidArgument("unknown oracle: " + o);
    }
  }
  spec.repetitions = j.value("repetitions", spec.repetitions);
  if (spec.repetitions == 0) throw InvalidArgument("repetitions must be positive");
  spec.seed = j.value("seed", spec.seed);
  spec.parallel = j.value("parallel", false);
  spec.min_batch_seconds = j.value("min_batch_seconds", spec.min_batch_seconds);
  if (j.contains("out")) spec.out_dir = j.at("out").get<std::string>();
  return spec;
}

OracleBenchSpec load_oracle_bench_spec(const std::filesystem::path& path) {
  return parse_oracle_bench_spec(read_json(path));
}

namespace {

// A random point of P: Dirichlet(1) on the simplex, uniform in the cube, and
// a Dirichlet-weighted signed point of norm U[0,1] in the l1-ball.
Vec random_point(const PolytopeModel& P, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(P.dim());
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vec x(n);
  switch (P.kind()) {
    case PolytopeKind::simplex:
      for (Eigen::Index i = 0; i < n; ++i) x(i) = expo(rng);
      return x / x.sum();
    case PolytopeKind::hypercube:
      for (Eigen::Index i = 0; i < n; ++i) x(i) = unif(rng);
      return x;
    case PolytopeKind::l1_ball: {
      for (Eigen::Index i = 0; i < n; ++i) x(i) = expo(rng) * (unif(rng) < 0.5 ? -1.0 : 1.0);
      return x * (unif(rng) / x.lpNorm<1>());
    }
    case PolytopeKind::flow: break;
  }
  throw InvalidArgument("random_point: unsupported polytope");
}

template <typename F>
double per_call_ns(F&& call, double min_seconds) {
  using Clock = std::chrono::steady_clock;
  std::size_t batch = 1;
  for (;;) {
    const auto t0 = Clock::now();
    for (std::size_t i = 0; i < batch; ++i) call();
    const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
    if (elapsed >= min_seconds) return elapsed * 1e9 / static_cast<double>(batch);
    batch *= elapsed > 0.0 ? std::clamp<std::size_t>(static_cast<std::size_t>(min_seconds / elapsed * 1.2), 2, 100) : 100;
  }
}

}  // namespace

std::vector<OracleTiming> run_oracle_bench(const OracleBenchSpec& spec) {
  const kernels::Exec exec = spec.parallel ? kernels::Exec::parallel : kernels::Exec::serial;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  volatile double sink = 0.0;

  std::vector<OracleTiming> rows;
  for (std::size_t n : spec.dims) {
    const auto P = make_polytope(spec.polytope, n);
    std::map<std::string, std::vector<double>> samples;
    for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
      Vec c(static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = normal(rng);
      const Vec x = random_point(*P, rng);
      const double d = std::max(unif(rng), 1e-12);
      Vec out;
      Vec vertex;
      if (spec.polytope == PolytopeKind::simplex) {
        const SimplexRestrictedBall rb = slmo_prepare(x, d, 1e-8, exec);
        SimplexRestrictedBall scratch = rb;
        for (const std::string& o : spec.oracles) {
          double ns = 0.0;
          if (o == "lmo") {
            ns = per_call_ns([&] { P->lmo(c, out, exec); sink = sink + out(0); }, spec.min_batch_seconds);
          } else if (o == "slmo") {
            ns = per_call_ns(
                [&] {
                  slmo_prepare(x, d, scratch, 1e-8, exec);
                  slmo_solve(scratch, c, out, exec);
                  sink = sink + out(0);
                },
                spec.min_batch_seconds);
          } else if (o == "slmo2") {
            ns = per_call_ns([&] { slmo_solve(rb, c, out, exec); sink = sink + out(0); }, spec.min_batch_seconds);
          } else {
            ns = per_call_ns([&] { sink = sink + P->project(c)(0); }, spec.min_batch_seconds);
          }
          samples[o].push_back(ns);
        }
      } else {
        const CaratheodoryRep rep_x = P->caratheodory(x, 1e-8);
        const PolytopeRestrictedBall rb = slmo_p_prepare(rep_x, d);
        for (const std::string& o : spec.oracles) {
          double ns = 0.0;
          if (o == "lmo") {
            ns = per_call_ns([&] { P->lmo(c, out, exec); sink = sink + out(0); }, spec.min_batch_seconds);
          } else if (o == "slmo") {
            ns = per_call_ns([&] { sink = sink + slmo_p(rep_x, d, *P, c, exec)(0); }, spec.min_batch_seconds);
          } else if (o == "slmo2") {
            ns = per_call_ns([&] { slmo_p_solve(rb, *P, c, out, vertex, exec); sink = sink + out(0); },
                             spec.min_batch_seconds);
          } else {
            ns = per_call_ns([&] { sink = sink + P->project(c)(0); }, spec.min_batch_seconds);
          }
          samples[o].push_back(ns);
        }
      }
    }
    for (const std::string& o : spec.oracles) {
      const std::vector<double>& s = samples[o];
      double mean = 0.0;
      for (double v : s) mean += v;
      mean /= static_cast<double>(s.size());
      double var = 0.0;
      for (double v : s) var += (v - mean) * (v - mean);
      const double sd = s.size() > 1 ? std::sqrt(var / static_cast<double>(s.size() - 1)) : 0.0;
      rows.push_back({o, n, mean, sd});
    }
  }
  return rows;
}

void write_oracle_csv(const std::filesystem::path& path, const std::vector<OracleTiming>& rows) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << "oracle,n,mean_ns,std_ns\n";
  for (const OracleTiming& r : rows) {
    out << r.oracle << ',' << r.n << ',' << fmt(r.mean_ns) << ',' << fmt(r.std_ns) << '\n';
  }
}

// Summaries --------------------------------------------------------------------

void summarize(const std::filesystem::path& dir, std::ostream& out, const SummaryOptions& opts) {
  if (!std::filesystem::is_directory(dir)) throw InvalidArgument("not a directory: " + dir.string());
  struct Run {
    std::size_t rep;
    ConvergenceTrace trace;
  };
  std::map<std::string, std::vector<Run>> groups;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    const std::string stem = path.stem().string();
    const auto pos = stem.rfind("_rep");
    if (pos == std::string::npos) continue;
    std::size_t rep = 0;
    try {
      rep = std::stoul(stem.substr(pos + 4));
    } catch (const std::exception&) {
      continue;
    }
    std::ifstream in(path);
    std::string header;
    if (!std::getline(in, header) || header != kTraceHeader) continue;
    in.seekg(0);
    groups[stem.substr(0, pos)].push_back({rep, read_trace_csv(in)});
  }

  out << std::left << std::setw(32) << "solver" << std::right << std::setw(6) << "runs"
      << std::setw(10) << "iters" << std::setw(14) << "final_gap" << std::setw(14) << "best_gap"
      << std::setw(12) << "time_s" << '\n';
  for (const auto& [label, runs] : groups) {
    double iters = 0.0;
    double final_gap = 0.0;
    double best_gap = std::numeric_limits<double>::infinity();
    double time_s = 0.0;
    for (const Run& r : runs) {
      const auto& rows = r.trace.rows;
      iters += static_cast<double>(rows.size());
      if (!rows.empty()) {
        final_gap += rows.back().gap;
        time_s += static_cast<double>(rows.back().time_ns) * 1e-9;
        for (const TraceRow& row : rows) best_gap = std::min(best_gap, row.gap);
      }
    }
    const double m = static_cast<double>(runs.size());
    out << std::left << std::setw(32) << label << std::right << std::setw(6) << runs.size()
        << std::setw(10) << std::setprecision(6) << iters / m << std::setw(14) << std::scientific
        << std::setprecision(3) << final_gap / m << std::setw(14) << best_gap << std::setw(12)
        << std::fixed << std::setprecision(4) << time_s / m << std::defaultfloat << '\n';
  }

  if (opts.plot_csv) {
    std::ofstream plot(*opts.plot_csv);
    if (!plot) throw InvalidArgument("cannot write " + opts.plot_csv->string());
    plot << "label,rep,k,time_s,gap\n";
    for (const auto& [label, runs] : groups) {
      for (const Run& r : runs) {
        const auto& rows = r.trace.rows;
        if (rows.empty()) continue;
        // Log-spaced row indices keep both the early transient and the tail.
        std::vector<std::size_t> picks;
        const std::size_t points = std::max<std::size_t>(opts.plot_points, 2);
        for (std::size_t i = 0; i < points; ++i) {
          const double t = static_cast<double>(i) / static_cast<double>(points - 1);
          picks.push_back(static_cast<std::size_t>(
              std::llround(std::pow(static_cast<double>(rows.size()), t)) - 1));
        }
        picks.push_back(rows.size() - 1);
        std::sort(picks.begin(), picks.end());
        picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
        for (std::size_t idx : picks) {
          const TraceRow& row = rows[std::min(idx, rows.size() - 1)];
          plot << label << ',' << r.rep << ',' << row.k << ','
               << fmt(static_cast<double>(row.time_ns) * 1e-9) << ',' << fmt(row.gap) << '\n';
        }
      }
    }
  }
}

}  // namespace sfw
