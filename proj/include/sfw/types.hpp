#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sfw {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Absolute tolerance for membership and feasibility checks.
inline constexpr double kDefaultTol = 1e-9;

inline std::span<const double> as_span(const Vec& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}
inline std::span<double> as_span(Vec& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad dimensions, out-of-range parameters, malformed configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A simplex ball whose radius collapsed to zero.
class DegenerateBall : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

/// Point outside the polytope beyond tolerance.
class InfeasiblePoint : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Iteration caps exceeded or non-finite values encountered.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Lower bound above the objective value at the starting point.
class InvalidBound : public Error {
 public:
  using Error::Error;
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" +
                          std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

}  // namespace sfw
