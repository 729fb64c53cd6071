#include "sfw/problems.hpp"

#include <cmath>
#include <random>

#include <Eigen/QR>

namespace sfw {

namespace {

Mat gaussian_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Mat A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // Column-major fill in a fixed order keeps instances reproducible.
  for (Eigen::Index j = 0; j < A.cols(); ++j) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) A(i, j) = normal(rng);
  }
  return A;
}

void require_dims(std::size_t m, std::size_t n, const char* who) {
  if (m == 0 || n == 0) throw InvalidArgument(std::string(who) + ": dimensions must be positive");
}

}  // namespace

ProblemInstance gen_simplex_least_squares(std::size_t m, std::size_t n, double density,
                                          std::uint64_t seed) {
  require_dims(m, n, "gen_simplex_least_squares");
  if (!(density > 0.0 && density <= 1.0)) {
    throw InvalidArgument("gen_simplex_least_squares: density must be in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  Mat A = gaussian_matrix(m, n, rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::bernoulli_distribution keep(density);
  Vec xs(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const double v = unif(rng);
    xs(i) = keep(rng) ? v : 0.0;
  }
  if (xs.sum() <= 0.0) xs(std::uniform_int_distribution<Eigen::Index>(0, xs.size() - 1)(rng)) = 1.0;
  xs /= xs.sum();
  Vec b = A * xs;

  ProblemInstance inst;
  inst.family = "simplex_ls";
  inst.objective = std::make_shared<QuadraticObjective>(
      QuadraticObjective::least_squares(std::move(A), std::move(b)));
  inst.polytope = std::make_shared<UnitSimplex>(n);
  inst.x0 = Vec::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
  inst.known_fstar = 0.0;
  inst.planted = std::move(xs);
  inst.seed = seed;
  return inst;
}

ProblemInstance gen_l1_least_squares(std::size_t m, std::size_t n, double sparsity,
                                     std::uint64_t seed, std::optional<double> eta) {
  require_dims(m, n, "gen_l1_least_squares");
  if (!(sparsity > 0.0 && sparsity < 1.0)) {
    throw InvalidArgument("gen_l1_least_squares: sparsity must be in (0, 1)");
  }
  std::mt19937_64 rng(seed);
  Mat A = gaussian_matrix(m, n, rng);
  std::normal_distribution<double> normal;
  std::bernoulli_distribution keep(sparsity);
  Vec xs(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const double v = normal(rng);
    xs(i) = keep(rng) ? v : 0.0;
  }
  if (xs.lpNorm<1>() <= 0.0) xs(0) = 1.0;
  xs /= xs.lpNorm<1>();
  Vec b = A * xs;

  ProblemInstance inst;
  inst.family = "l1_ls";
  inst.objective = std::make_shared<QuadraticObjective>(
      QuadraticObjective::least_squares(std::move(A), std::move(b)));
  inst.polytope = std::make_shared<L1Ball>(n, eta);
  inst.x0 = Vec::Zero(static_cast<Eigen::Index>(n));
  inst.known_fstar = 0.0;
  inst.planted = std::move(xs);
  inst.seed = seed;
  return inst;
}

ProblemInstance gen_hypercube_least_squares(std::size_t m, std::size_t n, std::uint64_t seed) {
  require_dims(m, n, "gen_hypercube_least_squares");
  std::mt19937_64 rng(seed);
  Mat A = gaussian_matrix(m, n, rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Vec xs(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const double v = unif(rng);
    const double face = unif(rng);
    xs(i) = face < 1.0 / 6.0 ? 0.0 : face < 1.0 / 3.0 ? 1.0 : v;
  }
  Vec b = A * xs;

  ProblemInstance inst;
  inst.family = "hypercube_ls";
  inst.objective = std::make_shared<QuadraticObjective>(
      QuadraticObjective::least_squares(std::move(A), std::move(b)));
  inst.polytope = std::make_shared<Hypercube>(n);
  inst.x0 = Vec::Zero(static_cast<Eigen::Index>(n));
  inst.known_fstar = 0.0;
  inst.planted = std::move(xs);
  inst.seed = seed;
  return inst;
}

ProblemInstance gen_flow_qp(const DagFlowNetwork& network, std::uint64_t seed, double cond,
                            std::optional<double> eta) {
  if (!(cond >= 1.0) || !std::isfinite(cond)) throw InvalidArgument("gen_flow_qp: cond must be >= 1");
  const std::size_t n = network.num_edges();
  std::mt19937_64 rng(seed);
  const Mat G = gaussian_matrix(n, n, rng);
  const Mat Q = Eigen::HouseholderQR<Mat>(G).householderQ();
  Vec spectrum(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    spectrum(static_cast<Eigen::Index>(i)) = std::pow(cond, t);
  }
  Mat H = Q * spectrum.asDiagonal() * Q.transpose();
  H = 0.5 * (H + H.transpose()).eval();
  std::normal_distribution<double> normal;
  Vec lin(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < lin.size(); ++i) lin(i) = normal(rng);

  auto polytope = std::make_shared<FlowPolytope>(network, eta);
  ProblemInstance inst;
  inst.family = "flow_qp";
  inst.objective = std::make_shared<QuadraticObjective>(std::move(H), std::move(lin));
  inst.x0 = polytope->lmo(Vec::Zero(static_cast<Eigen::Index>(n)));
  inst.polytope = std::move(polytope);
  inst.seed = seed;
  return inst;
}

ProblemInstance gen_logistic(std::size_t m, std::size_t n, std::uint64_t seed,
                             std::optional<double> lambda, double beta,
                             std::optional<double> eta) {
  require_dims(m, n, "gen_logistic");
  const double reg = lambda.value_or(1.0 / static_cast<double>(n));
  if (!(reg >= 0.0)) throw InvalidArgument("gen_logistic: lambda must be >= 0");
  if (!(beta > 0.0)) throw InvalidArgument("gen_logistic: beta must be positive");
  std::mt19937_64 rng(seed);
  Mat A = gaussian_matrix(m, n, rng);
  std::normal_distribution<double> normal;
  Vec w(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = normal(rng);
  Vec labels(static_cast<Eigen::Index>(m));
  const Vec margin = A * w;
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    labels(i) = margin(i) + normal(rng) >= 0.0 ? 1.0 : -1.0;
  }

  ProblemInstance inst;
  inst.family = "logistic";
  std::shared_ptr<const Objective> obj =
      std::make_shared<LogisticObjective>(std::move(A), std::move(labels), reg);
  if (beta != 1.0) obj = std::make_shared<ScaledObjective>(std::move(obj), beta);
  inst.objective = std::move(obj);
  inst.polytope = std::make_shared<L1Ball>(n, eta);
  inst.x0 = Vec::Zero(static_cast<Eigen::Index>(n));
  inst.seed = seed;
  return inst;
}

ProblemInstance make_problem(const ProblemSpec& spec) {
  if (spec.family == "simplex_ls") return gen_simplex_least_squares(spec.m, spec.n, spec.density, spec.seed);
  if (spec.family == "l1_ls") return gen_l1_least_squares(spec.m, spec.n, spec.sparsity, spec.seed, spec.eta);
  if (spec.family == "hypercube_ls") return gen_hypercube_least_squares(spec.m, spec.n, spec.seed);
  if (spec.family == "logistic") {
    return gen_logistic(spec.m, spec.n, spec.seed, spec.lambda, spec.beta, spec.eta);
  }
  if (spec.family == "flow_qp") {
    const DagFlowNetwork net =
        spec.network_file.empty()
            ? make_layered_dag(spec.layers, spec.width, spec.edge_prob, spec.seed)
            : DagFlowNetwork::load(spec.network_file);
    return gen_flow_qp(net, spec.seed, spec.cond, spec.eta);
  }
  throw InvalidArgument("unknown problem family: " + spec.family);
}

}  // namespace sfw
