#include "sfw/objective.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace sfw {

Vec Objective::gradient(const Vec& x) const {
  Vec g;
  gradient(x, g);
  return g;
}

double Objective::value_and_gradient(const Vec& x, Vec& g) const {
  gradient(x, g);
  return value(x);
}

std::optional<double> Objective::exact_line_search(const Vec&, const Vec&, const Vec&,
                                                   double) const {
  return std::nullopt;
}

// Quadratic ------------------------------------------------------------------

QuadraticObjective::QuadraticObjective(Mat hessian, Vec linear, double constant)
    : hessian_(std::move(hessian)), linear_(std::move(linear)), constant_(constant) {
  if (hessian_.rows() != hessian_.cols() || hessian_.rows() != linear_.size() ||
      linear_.size() == 0) {
    throw InvalidArgument("QuadraticObjective: inconsistent dimensions");
  }
  compute_spectrum();
}

QuadraticObjective::QuadraticObjective(Factor factor) : factor_(std::move(factor)) {
  const Mat& A = factor_->A;
  const Vec& b = factor_->b;
  if (A.rows() != b.size() || A.cols() == 0) {
    throw InvalidArgument("least_squares: inconsistent dimensions");
  }
  hessian_ = 2.0 * A.transpose() * A;
  linear_ = -2.0 * A.transpose() * b;
  constant_ = b.squaredNorm();
  compute_spectrum();
}

QuadraticObjective QuadraticObjective::least_squares(Mat A, Vec b) {
  return QuadraticObjective(Factor{std::move(A), std::move(b)});
}

void QuadraticObjective::compute_spectrum() {
  Eigen::SelfAdjointEigenSolver<Mat> eig(hessian_, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalFailure("QuadraticObjective: eigensolve failed");
  const Vec& ev = eig.eigenvalues();
  if (ev.minCoeff() < -1e-9 * std::max(1.0, std::abs(ev.maxCoeff()))) {
    throw InvalidArgument("QuadraticObjective: Hessian is not positive semidefinite");
  }
  L_ = ev.maxCoeff();
  mu_ = std::max(0.0, ev.minCoeff());
}

std::optional<double> QuadraticObjective::strong_convexity() const {
  if (mu_ > 1e-12 * L_) return mu_;
  return std::nullopt;
}

const Mat& QuadraticObjective::factor() const {
  if (!factor_) throw UnsupportedOperation("quadratic objective has no least-squares factor");
  return factor_->A;
}

const Vec& QuadraticObjective::target() const {
  if (!factor_) throw UnsupportedOperation("quadratic objective has no least-squares factor");
  return factor_->b;
}

double QuadraticObjective::value(const Vec& x) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "quadratic value");
  if (factor_) return (factor_->A * x - factor_->b).squaredNorm();
  return from_hx(x, hessian_ * x);
}

double QuadraticObjective::from_hx(const Vec& x, const Vec& hx) const {
  const double v = 0.5 * x.dot(hx) + linear_.dot(x) + constant_;
  // Expanded residual norms can dip below zero by rounding.
  return factor_ ? std::max(v, 0.0) : v;
}

void QuadraticObjective::gradient(const Vec& x, Vec& g) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "quadratic gradient");
  if (factor_ && !hessian_cheaper()) {
    g.noalias() = 2.0 * factor_->A.transpose() * (factor_->A * x - factor_->b);
  } else {
    g.noalias() = hessian_ * x;
    g += linear_;
  }
}

double QuadraticObjective::value_and_gradient(const Vec& x, Vec& g) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "quadratic value");
  if (factor_ && !hessian_cheaper()) {
    const Vec r = factor_->A * x - factor_->b;
    g.noalias() = 2.0 * factor_->A.transpose() * r;
    return r.squaredNorm();
  }
  const Vec hx = hessian_ * x;
  g = hx + linear_;
  return from_hx(x, hx);
}

double QuadraticObjective::curvature(const Vec& dir) const {
  if (factor_ && !hessian_cheaper()) return 2.0 * (factor_->A * dir).squaredNorm();
  return dir.dot(hessian_ * dir);
}

std::optional<double> QuadraticObjective::exact_line_search(const Vec&, const Vec& g,
                                                            const Vec& dir,
                                                            double max_step) const {
  const double slope = g.dot(dir);
  if (slope >= 0.0) return 0.0;
  const double curv = curvature(dir);
  if (!(curv > 0.0)) return max_step;
  return std::clamp(-slope / curv, 0.0, max_step);
}

// Logistic -------------------------------------------------------------------

namespace {

// log(1 + exp(t)) without overflow.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

LogisticObjective::LogisticObjective(Mat A, Vec labels, double lambda)
    : A_(std::move(A)), labels_(std::move(labels)), lambda_(lambda) {
  if (A_.rows() != labels_.size() || A_.rows() == 0 || A_.cols() == 0) {
    throw InvalidArgument("LogisticObjective: inconsistent dimensions");
  }
  if (!(lambda_ >= 0.0)) throw InvalidArgument("LogisticObjective: lambda must be >= 0");
  for (Eigen::Index i = 0; i < labels_.size(); ++i) {
    if (labels_(i) != 1.0 && labels_(i) != -1.0) {
      throw InvalidArgument("LogisticObjective: labels must be +1 or -1");
    }
  }
  const Mat gram = A_.transpose() * A_;
  Eigen::SelfAdjointEigenSolver<Mat> eig(gram, Eigen::EigenvaluesOnly);
  L_ = eig.eigenvalues().maxCoeff() / (4.0 * static_cast<double>(A_.rows())) + lambda_;
}

std::optional<double> LogisticObjective::strong_convexity() const {
  if (lambda_ > 0.0) return lambda_;
  return std::nullopt;
}

double LogisticObjective::value(const Vec& x) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "logistic value");
  const Vec z = A_ * x;
  double s = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) s += softplus(-labels_(i) * z(i));
  return s / static_cast<double>(A_.rows()) + 0.5 * lambda_ * x.squaredNorm();
}

void LogisticObjective::gradient(const Vec& x, Vec& g) const { value_and_gradient(x, g); }

double LogisticObjective::value_and_gradient(const Vec& x, Vec& g) const {
  require_same_dim(static_cast<std::size_t>(x.size()), dim(), "logistic gradient");
  const Vec z = A_ * x;
  Vec w(z.size());
  double s = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double margin = labels_(i) * z(i);
    s += softplus(-margin);
    w(i) = -labels_(i) * sigmoid(-margin);
  }
  const double inv_m = 1.0 / static_cast<double>(A_.rows());
  g.noalias() = inv_m * (A_.transpose() * w);
  g += lambda_ * x;
  return s * inv_m + 0.5 * lambda_ * x.squaredNorm();
}

// Scaled ---------------------------------------------------------------------

ScaledObjective::ScaledObjective(std::shared_ptr<const Objective> inner, double beta)
    : inner_(std::move(inner)), beta_(beta) {
  if (!inner_) throw InvalidArgument("ScaledObjective: null objective");
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) throw InvalidArgument("ScaledObjective: beta must be positive");
}

double ScaledObjective::value(const Vec& z) const { return inner_->value(beta_ * z); }

void ScaledObjective::gradient(const Vec& z, Vec& g) const {
  inner_->gradient(beta_ * z, g);
  g *= beta_;
}

double ScaledObjective::value_and_gradient(const Vec& z, Vec& g) const {
  const double v = inner_->value_and_gradient(beta_ * z, g);
  g *= beta_;
  return v;
}

std::optional<double> ScaledObjective::smoothness() const {
  if (auto L = inner_->smoothness()) return beta_ * beta_ * *L;
  return std::nullopt;
}

std::optional<double> ScaledObjective::strong_convexity() const {
  if (auto mu = inner_->strong_convexity()) return beta_ * beta_ * *mu;
  return std::nullopt;
}

std::optional<double> ScaledObjective::exact_line_search(const Vec& z, const Vec& g,
                                                         const Vec& dir,
                                                         double max_step) const {
  return inner_->exact_line_search(beta_ * z, g / beta_, beta_ * dir, max_step);
}

}  // namespace sfw
