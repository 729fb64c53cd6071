#pragma once

// Data-parallel vector kernels used by the oracles. Every kernel has a serial
// reference implementation and an OpenMP implementation with identical
// semantics; index-valued kernels return bit-identical results, reductions
// agree up to summation order.

#include <cstddef>
#include <span>

namespace sfw::kernels {

enum class Exec { serial, parallel };

namespace serial {
/// Smallest index attaining the minimum. Empty input is not allowed.
std::size_t argmin(std::span<const double> c);
/// Smallest index attaining max |c_i|.
std::size_t argmax_abs(std::span<const double> c);
/// Writes out_i = x_i - min(x_i, d) and returns sum_i min(x_i, d).
double clip_split(std::span<const double> x, double d, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
/// x += t * (y - x)
void lerp(std::span<double> x, std::span<const double> y, double t);
/// v_i = 1 if c_i < 0 else 0
void negative_indicator(std::span<const double> c, std::span<double> v);
/// Clamp into [0, 1].
void clamp_unit(std::span<const double> z, std::span<double> out);
}  // namespace serial

namespace parallel {
std::size_t argmin(std::span<const double> c);
std::size_t argmax_abs(std::span<const double> c);
double clip_split(std::span<const double> x, double d, std::span<double> out);
double dot(std::span<const double> a, std::span<const double> b);
double sum(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void lerp(std::span<double> x, std::span<const double> y, double t);
void negative_indicator(std::span<const double> c, std::span<double> v);
void clamp_unit(std::span<const double> z, std::span<double> out);
}  // namespace parallel

std::size_t argmin(std::span<const double> c, Exec exec = Exec::serial);
std::size_t argmax_abs(std::span<const double> c, Exec exec = Exec::serial);
double clip_split(std::span<const double> x, double d, std::span<double> out,
                  Exec exec = Exec::serial);
double dot(std::span<const double> a, std::span<const double> b, Exec exec = Exec::serial);
double sum(std::span<const double> a, Exec exec = Exec::serial);
void axpy(double alpha, std::span<const double> x, std::span<double> y,
          Exec exec = Exec::serial);
void lerp(std::span<double> x, std::span<const double> y, double t, Exec exec = Exec::serial);
void negative_indicator(std::span<const double> c, std::span<double> v,
                        Exec exec = Exec::serial);
void clamp_unit(std::span<const double> z, std::span<double> out, Exec exec = Exec::serial);

/// Number of OpenMP threads the parallel kernels will use.
int max_threads();
void set_threads(int n);

}  // namespace sfw::kernels
