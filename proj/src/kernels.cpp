#include "sfw/kernels.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace sfw::kernels {

namespace serial {

std::size_t argmin(std::span<const double> c) {
  std::size_t best = 0;
  double value = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] < value) {
      value = c[i];
      best = i;
    }
  }
  return best;
}

std::size_t argmax_abs(std::span<const double> c) {
  std::size_t best = 0;
  double value = std::abs(c[0]);
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double a = std::abs(c[i]);
    if (a > value) {
      value = a;
      best = i;
    }
  }
  return best;
}

double clip_split(std::span<const double> x, double d, std::span<double> out) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = x[i] < d ? x[i] : d;
    out[i] = x[i] - m;
    total += m;
  }
  return total;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double sum(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v;
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void lerp(std::span<double> x, std::span<const double> y, double t) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * (y[i] - x[i]);
}

void negative_indicator(std::span<const double> c, std::span<double> v) {
  for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i] < 0.0 ? 1.0 : 0.0;
}

void clamp_unit(std::span<const double> z, std::span<double> out) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i] = z[i] < 0.0 ? 0.0 : (z[i] > 1.0 ? 1.0 : z[i]);
  }
}

}  // namespace serial

namespace parallel {

namespace {

// Per-thread (value, index) candidates merged lexicographically so the
// smallest index wins ties, matching the serial scan.
template <typename Key, typename Better>
std::size_t arg_reduce(std::span<const double> c, Key key, Better better) {
  const auto n = static_cast<std::ptrdiff_t>(c.size());
  std::size_t best = 0;
  double best_value = key(c[0]);
#pragma omp parallel
  {
    std::size_t local = 0;
    double local_value = 0.0;
    bool seen = false;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double v = key(c[i]);
      if (!seen || better(v, local_value)) {
        local_value = v;
        local = static_cast<std::size_t>(i);
        seen = true;
      }
    }
#pragma omp critical(sfw_arg_reduce)
    {
      if (seen && (better(local_value, best_value) ||
                   (local_value == best_value && local < best))) {
        best_value = local_value;
        best = local;
      }
    }
  }
  return best;
}

}  // namespace

std::size_t argmin(std::span<const double> c) {
  return arg_reduce(
      c, [](double v) { return v; }, [](double a, double b) { return a < b; });
}

std::size_t argmax_abs(std::span<const double> c) {
  return arg_reduce(
      c, [](double v) { return std::abs(v); }, [](double a, double b) { return a > b; });
}

double clip_split(std::span<const double> x, double d, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
  double total = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double m = x[i] < d ? x[i] : d;
    out[i] = x[i] - m;
    total += m;
  }
  return total;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(std::span<const double> a) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += a[i];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void lerp(std::span<double> x, std::span<const double> y, double t) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) x[i] += t * (y[i] - x[i]);
}

void negative_indicator(std::span<const double> c, std::span<double> v) {
  const auto n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) v[i] = c[i] < 0.0 ? 1.0 : 0.0;
}

void clamp_unit(std::span<const double> z, std::span<double> out) {
  const auto n = static_cast<std::ptrdiff_t>(z.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = z[i] < 0.0 ? 0.0 : (z[i] > 1.0 ? 1.0 : z[i]);
  }
}

}  // namespace parallel

std::size_t argmin(std::span<const double> c, Exec exec) {
  return exec == Exec::parallel ? parallel::argmin(c) : serial::argmin(c);
}
std::size_t argmax_abs(std::span<const double> c, Exec exec) {
  return exec == Exec::parallel ? parallel::argmax_abs(c) : serial::argmax_abs(c);
}
double clip_split(std::span<const double> x, double d, std::span<double> out, Exec exec) {
  return exec == Exec::parallel ? parallel::clip_split(x, d, out)
                                : serial::clip_split(x, d, out);
}
double dot(std::span<const double> a, std::span<const double> b, Exec exec) {
  return exec == Exec::parallel ? parallel::dot(a, b) : serial::dot(a, b);
}
double sum(std::span<const double> a, Exec exec) {
  return exec == Exec::parallel ? parallel::sum(a) : serial::sum(a);
}
void axpy(double alpha, std::span<const double> x, std::span<double> y, Exec exec) {
  exec == Exec::parallel ? parallel::axpy(alpha, x, y) : serial::axpy(alpha, x, y);
}
void lerp(std::span<double> x, std::span<const double> y, double t, Exec exec) {
  exec == Exec::parallel ? parallel::lerp(x, y, t) : serial::lerp(x, y, t);
}
void negative_indicator(std::span<const double> c, std::span<double> v, Exec exec) {
  exec == Exec::parallel ? parallel::negative_indicator(c, v)
                         : serial::negative_indicator(c, v);
}
void clamp_unit(std::span<const double> z, std::span<double> out, Exec exec) {
  exec == Exec::parallel ? parallel::clamp_unit(z, out) : serial::clamp_unit(z, out);
}

int max_threads() { return omp_get_max_threads(); }
void set_threads(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace sfw::kernels
