// Serial reference kernels against their OpenMP counterparts, plus the
// simplex oracles built on them.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sfw/kernels.hpp"
#include "sfw/oracles.hpp"
#include "sfw/polytope.hpp"

namespace {

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

sfw::Vec barycenter(std::size_t n) {
  return sfw::Vec::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
}

template <sfw::kernels::Exec E>
void BM_argmin(benchmark::State& state) {
  const auto c = gaussian(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(sfw::kernels::argmin(c, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <sfw::kernels::Exec E>
void BM_dot(benchmark::State& state) {
  const auto a = gaussian(static_cast<std::size_t>(state.range(0)), 2);
  const auto b = gaussian(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(sfw::kernels::dot(a, b, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <sfw::kernels::Exec E>
void BM_clip_split(benchmark::State& state) {
  const auto x = gaussian(static_cast<std::size_t>(state.range(0)), 4);
  std::vector<double> out(x.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfw::kernels::clip_split(x, 0.1, out, E));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <sfw::kernels::Exec E>
void BM_lmo_simplex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sfw::UnitSimplex P(n);
  const auto raw = gaussian(n, 5);
  const sfw::Vec c = Eigen::Map<const sfw::Vec>(raw.data(), static_cast<Eigen::Index>(n));
  sfw::Vec out;
  for (auto _ : state) {
    P.lmo(c, out, E);
    benchmark::DoNotOptimize(out.data());
  }
}

template <sfw::kernels::Exec E>
void BM_slmo_prepare(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sfw::Vec x = barycenter(n);
  const double d = 0.3 / static_cast<double>(n);
  auto rb = sfw::slmo_prepare(x, d, 1e-8, E);
  for (auto _ : state) {
    sfw::slmo_prepare(x, d, rb, 1e-8, E);
    benchmark::DoNotOptimize(rb.lower().data());
  }
}

template <sfw::kernels::Exec E>
void BM_slmo_solve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const sfw::Vec x = barycenter(n);
  const auto rb = sfw::slmo_prepare(x, 0.3 / static_cast<double>(n), 1e-8, E);
  const auto raw = gaussian(n, 6);
  const sfw::Vec c = Eigen::Map<const sfw::Vec>(raw.data(), static_cast<Eigen::Index>(n));
  sfw::Vec out;
  for (auto _ : state) {
    sfw::slmo_solve(rb, c, out, E);
    benchmark::DoNotOptimize(out.data());
  }
}

constexpr auto kSerial = sfw::kernels::Exec::serial;
constexpr auto kParallel = sfw::kernels::Exec::parallel;

#define SFW_BENCH_PAIR(fn)                                                           \
  BENCHMARK(fn<kSerial>)->Name(#fn "/serial")->RangeMultiplier(10)->Range(1000, 1000000); \
  BENCHMARK(fn<kParallel>)->Name(#fn "/openmp")->RangeMultiplier(10)->Range(1000, 1000000)

SFW_BENCH_PAIR(BM_argmin);
SFW_BENCH_PAIR(BM_dot);
SFW_BENCH_PAIR(BM_clip_split);
SFW_BENCH_PAIR(BM_lmo_simplex);
SFW_BENCH_PAIR(BM_slmo_prepare);
SFW_BENCH_PAIR(BM_slmo_solve);

}  // namespace

BENCHMARK_MAIN();
