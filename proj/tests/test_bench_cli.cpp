#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sfw/experiment.hpp"
#include "sfw/trace.hpp"

using namespace sfw;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sfw_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string s; std::getline(in, s);) out.push_back(s);
  return out;
}

std::string strip_time(const std::vector<std::string>& rows) {
  // Drop the time_ns column (sixth field).
  std::string out;
  for (const std::string& r : rows) {
    std::stringstream ss(r);
    std::string field;
    int i = 0;
    while (std::getline(ss, field, ',')) {
      if (i++ != 5) out += field + ",";
    }
    out += "\n";
  }
  return out;
}

json l1_spec(const fs::path& out) {
  return json{{"name", "l1"},
              {"problem", {{"family", "l1_ls"}, {"m", 80}, {"n", 20}, {"sparsity", 0.7}, {"eta", 4.0}, {"seed", 3}}},
              {"solvers",
               {{{"solver", "fw"}, {"max_iter", 3000}, {"tol", 1e-6}},
                {{"solver", "sfw_p"}, {"max_iter", 3000}, {"tol", 1e-6}},
                {{"solver", "rsfw_p"}, {"max_iter", 200}, {"tol", 1e-6}, {"inner_cap", 1000000}},
                {{"solver", "afw"}, {"max_iter", 3000}, {"tol", 1e-6}},
                {{"solver", "pfw"}, {"max_iter", 3000}, {"tol", 1e-6}}}},
              {"out", out.string()}};
}

}  // namespace

TEST_CASE("experiment writes one trace per cell and a summary") {
  const fs::path dir = scratch_dir("experiment");
  const ExperimentSpec spec = parse_experiment_spec(l1_spec(dir));
  const ExperimentReport report = run_experiment(spec);
  REQUIRE(report.cells.size() == 5);
  CHECK(report.success());
  std::size_t traces = 0;
  for (const auto& e : fs::directory_iterator(dir)) traces += e.path().filename() != "summary.csv";
  CHECK(traces == 5);
  const auto summary = lines(dir / "summary.csv");
  CHECK(summary.size() == 6);

  for (const CellResult& c : report.cells) {
    CAPTURE(c.label);
    CHECK(c.ok);
    CHECK(c.envelope_violations == 0);
    const ConvergenceTrace t = read_trace_csv(c.trace_file);
    // iterations-to-tol is the first row whose gap is within tolerance.
    std::optional<std::size_t> first;
    for (const TraceRow& row : t.rows) {
      if (row.gap <= 1e-6) {
        first = row.k;
        break;
      }
    }
    CHECK(first == c.iters_to_tol);
    if (c.label.rfind("sfw_p", 0) == 0 || c.label.rfind("rsfw_p", 0) == 0) {
      CHECK(c.final_gap < 1e-2 * t.rows.front().gap);
    }
  }
}

TEST_CASE("experiments are reproducible up to timing") {
  const fs::path a = scratch_dir("repro_a"), b = scratch_dir("repro_b");
  json j = l1_spec(a);
  j["threads"] = 2;
  run_experiment(parse_experiment_spec(j));
  j["out"] = b.string();
  j["threads"] = 1;
  run_experiment(parse_experiment_spec(j));
  for (const auto& e : fs::directory_iterator(a)) {
    if (e.path().filename() == "summary.csv") continue;
    CHECK(strip_time(lines(e.path())) == strip_time(lines(b / e.path().filename())));
  }
}

TEST_CASE("max_iter zero gives header-only traces") {
  const fs::path dir = scratch_dir("empty");
  json j = {{"problem", {{"family", "simplex_ls"}, {"m", 10}, {"n", 4}}},
            {"solvers", {{{"solver", "sfw"}, {"max_iter", 0}}}},
            {"out", dir.string()}};
  const auto report = run_experiment(parse_experiment_spec(j));
  REQUIRE(report.cells.size() == 1);
  CHECK(lines(report.cells[0].trace_file) == std::vector<std::string>{kTraceHeader});
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(parse_experiment_spec(json{{"solvers", json::array()}}), InvalidArgument);
  CHECK_THROWS_AS(parse_experiment_spec(json{{"solvers", {{{"solver", "sfw"}}, {{"solver", "sfw"}}}}}),
                  InvalidArgument);
  const fs::path dir = scratch_dir("invalid");
  json j = {{"problem", {{"family", "hypercube_ls"}, {"m", 10}, {"n", 4}}},
            {"solvers", {{{"solver", "rsfw"}}}},
            {"out", dir.string()}};
  CHECK_THROWS_AS(run_experiment(parse_experiment_spec(j)), InvalidArgument);
}

TEST_CASE("solver failures are recorded per cell") {
  const fs::path dir = scratch_dir("failure");
  json j = {{"problem", {{"family", "simplex_ls"}, {"m", 10}, {"n", 4}}},
            {"solvers", {{{"solver", "sfw"}, {"B0", 1e9}}, {{"solver", "pfw"}}}},
            {"out", dir.string()}};
  const auto report = run_experiment(parse_experiment_spec(j));
  CHECK_FALSE(report.success());
  int failed = 0;
  for (const auto& c : report.cells) failed += !c.ok;
  CHECK(failed == 1);
}

TEST_CASE("summarize") {
  SUBCASE("empty directory") {
    std::ostringstream out;
    summarize(scratch_dir("sum_empty"), out);
    std::istringstream in(out.str());
    std::string header, rest;
    std::getline(in, header);
    CHECK(header.find("solver") != std::string::npos);
    CHECK_FALSE(std::getline(in, rest));
  }
  SUBCASE("one file") {
    const fs::path dir = scratch_dir("sum_one");
    ConvergenceTrace t;
    t.rows = {{1, 2.0, 0.5, 1.0, 0.1, 1000, 1, 1, 1}, {2, 1.5, 0.25, 1.2, 0.05, 2000, 2, 2, 1}};
    write_trace_csv(dir / "sfw-line_search_rep0.csv", t);
    std::ostringstream out;
    const fs::path plot = dir / "plot.out";
    summarize(dir, out, {plot, 10});
    CHECK(out.str().find("sfw-line_search") != std::string::npos);
    CHECK(lines(plot).size() == 3);
  }
  SUBCASE("mixed solvers are grouped") {
    const fs::path dir = scratch_dir("sum_mixed");
    ConvergenceTrace t;
    t.rows = {{1, 2.0, 0.5, 1.0, 0.1, 1000, 1, 1, 1}};
    for (const char* name : {"pfw-line_search_rep0.csv", "pfw-line_search_rep1.csv", "sfw-short_rep0.csv"}) {
      write_trace_csv(dir / name, t);
    }
    std::ostringstream out;
    summarize(dir, out);
    std::istringstream in(out.str());
    std::vector<std::string> rows;
    for (std::string s; std::getline(in, s);) rows.push_back(s);
    REQUIRE(rows.size() == 3);
    CHECK(rows[1].rfind("pfw-line_search", 0) == 0);
    CHECK(rows[1].find(" 2 ") != std::string::npos);
    CHECK(rows[2].rfind("sfw-short", 0) == 0);
  }
}

TEST_CASE("oracle benchmark") {
  const json j = {{"polytope", "simplex"}, {"sweep", {{"min", 100}, {"max", 10000}, {"points", 3}}},
                  {"repetitions", 2}, {"min_batch_seconds", 1e-4}};
  const OracleBenchSpec spec = parse_oracle_bench_spec(j);
  CHECK(spec.dims == std::vector<std::size_t>{100, 1000, 10000});
  const auto rows = run_oracle_bench(spec);
  CHECK(rows.size() == 12);
  for (const auto& r : rows) CHECK(r.mean_ns > 0.0);
  CHECK_THROWS_AS(parse_oracle_bench_spec(json{{"dims", {10}}, {"oracles", {"nep"}}}), InvalidArgument);
  CHECK_THROWS_AS(parse_oracle_bench_spec(json{{"polytope", "simplex"}}), InvalidArgument);

  const auto cube = run_oracle_bench(parse_oracle_bench_spec(
      json{{"polytope", "hypercube"}, {"dims", {50}}, {"repetitions", 1}, {"min_batch_seconds", 1e-4}}));
  CHECK(cube.size() == 4);
}

#ifdef SFWBENCH_PATH
TEST_CASE("command line") {
  const fs::path dir = scratch_dir("cli");
  {
    std::ofstream spec(dir / "spec.json");
    spec << json{{"problem", {{"family", "simplex_ls"}, {"m", 20}, {"n", 5}}},
                 {"solvers", {{{"solver", "sfw"}, {"tol", 1e-6}}, {{"solver", "pfw"}, {"tol", 1e-6}}}}}
                .dump();
  }
  const std::string bin = SFWBENCH_PATH;
  const std::string out = (dir / "out").string();
  CHECK(std::system((bin + " experiment " + (dir / "spec.json").string() + " --out " + out +
                     " --seed 4 --threads 2 > /dev/null").c_str()) == 0);
  CHECK(fs::exists(fs::path(out) / "summary.csv"));
  CHECK(std::system((bin + " summarize " + out + " > /dev/null").c_str()) == 0);
  CHECK(std::system((bin + " experiment /nonexistent.json > /dev/null 2>&1").c_str()) != 0);
  CHECK(std::system((bin + " > /dev/null 2>&1").c_str()) != 0);
}
#endif
