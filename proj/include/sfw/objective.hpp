#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "sfw/types.hpp"

namespace sfw {

/// Smooth convex objective. Smoothness and strong convexity constants are
/// optional; solvers that need them fall back to backtracking when absent.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dim() const = 0;
  virtual std::string name() const = 0;
  virtual double value(const Vec& x) const = 0;
  virtual void gradient(const Vec& x, Vec& g) const = 0;
  Vec gradient(const Vec& x) const;
  /// Value and gradient in one pass where the implementation can share work.
  virtual double value_and_gradient(const Vec& x, Vec& g) const;

  virtual std::optional<double> smoothness() const { return std::nullopt; }
  virtual std::optional<double> strong_convexity() const { return std::nullopt; }

  /// argmin over t in [0, max_step] of f(x + t * dir), when available in
  /// closed form.
  /// g is the gradient at x.
  virtual std::optional<double> exact_line_search(const Vec& x, const Vec& g, const Vec& dir,
                                                  double max_step) const;
};

/// f(x) = 1/2 x'Hx + g'x + c, or ||Ax - b||^2 when built from a
/// least-squares factor (then H = 2A'A).
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(Mat hessian, Vec linear, double constant = 0.0);
  static QuadraticObjective least_squares(Mat A, Vec b);

  std::size_t dim() const override { return static_cast<std::size_t>(linear_.size()); }
  std::string name() const override { return factor_ ? "least_squares" : "quadratic"; }
  double value(const Vec& x) const override;
  using Objective::gradient;
  void gradient(const Vec& x, Vec& g) const override;
  double value_and_gradient(const Vec& x, Vec& g) const override;
  std::optional<double> smoothness() const override { return L_; }
  /// Smallest Hessian eigenvalue; unknown when it is zero to working precision.
  std::optional<double> strong_convexity() const override;
  std::optional<double> exact_line_search(const Vec& x, const Vec& g, const Vec& dir,
                                          double max_step) const override;

  bool is_least_squares() const { return factor_.has_value(); }
  const Mat& hessian() const { return hessian_; }
  const Vec& linear() const { return linear_; }
  double constant() const { return constant_; }
  /// Only for least-squares objectives.
  const Mat& factor() const;
  const Vec& target() const;
  /// Curvature along dir: dir' H dir.
  double curvature(const Vec& dir) const;

 private:
  struct Factor {
    Mat A;
    Vec b;
  };
  QuadraticObjective(Factor factor);
  void compute_spectrum();
  // Tall factors: products with the n x n Hessian beat two passes over A.
  bool hessian_cheaper() const { return factor_->A.rows() > factor_->A.cols(); }
  double from_hx(const Vec& x, const Vec& hx) const;

  Mat hessian_;
  Vec linear_;
  double constant_ = 0.0;
  std::optional<Factor> factor_;
  double L_ = 0.0;
  double mu_ = 0.0;
};

/// (1/m) sum_i log(1 + exp(-b_i <a_i, x>)) + (lambda/2) ||x||^2.
class LogisticObjective final : public Objective {
 public:
  LogisticObjective(Mat A, Vec labels, double lambda);

  std::size_t dim() const override { return static_cast<std::size_t>(A_.cols()); }
  std::string name() const override { return "logistic"; }
  double value(const Vec& x) const override;
  using Objective::gradient;
  void gradient(const Vec& x, Vec& g) const override;
  double value_and_gradient(const Vec& x, Vec& g) const override;
  std::optional<double> smoothness() const override { return L_; }
  /// lambda when positive; unknown otherwise.
  std::optional<double> strong_convexity() const override;

  const Mat& data() const { return A_; }
  const Vec& labels() const { return labels_; }
  double lambda() const { return lambda_; }

 private:
  Mat A_;
  Vec labels_;
  double lambda_;
  double L_;
};

/// g(z) = f(beta * z); maps a radius-beta domain onto the unit polytope.
class ScaledObjective final : public Objective {
 public:
  ScaledObjective(std::shared_ptr<const Objective> inner, double beta);

  std::size_t dim() const override { return inner_->dim(); }
  std::string name() const override { return inner_->name(); }
  double value(const Vec& z) const override;
  using Objective::gradient;
  void gradient(const Vec& z, Vec& g) const override;
  double value_and_gradient(const Vec& z, Vec& g) const override;
  std::optional<double> smoothness() const override;
  std::optional<double> strong_convexity() const override;
  std::optional<double> exact_line_search(const Vec& z, const Vec& g, const Vec& dir,
                                          double max_step) const override;

  const Objective& inner() const { return *inner_; }
  std::shared_ptr<const Objective> inner_ptr() const { return inner_; }
  double beta() const { return beta_; }

 private:
  std::shared_ptr<const Objective> inner_;
  double beta_;
};

}  // namespace sfw
