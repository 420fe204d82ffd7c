#include "flexgt/problem.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

#include "flexgt/rng.hpp"

namespace flexgt {

namespace {

void check_node(const QuadraticProblem& prob, int node) {
  if (node < 0 || node >= prob.n)
    throw std::out_of_range("problem: node index out of range");
}

// Strided core so the vector oracle and the stacked-state engine produce
// bit-identical samples.
void gradient_with_noise(const QuadraticProblem& prob, int node,
                         const double* x, std::ptrdiff_t x_stride, long step,
                         std::uint64_t noise_seed, double* out,
                         std::ptrdiff_t out_stride) {
  double residual = -prob.target_means(node);
  for (int j = 0; j < prob.p; ++j)
    residual += prob.features(node, j) * x[j * x_stride];
  for (int j = 0; j < prob.p; ++j)
    out[j * out_stride] =
        2.0 * prob.features(node, j) * residual + prob.mu * x[j * x_stride];
  if (prob.sigma > 0.0) {
    CounterRng rng(noise_seed, RngStream::gradient_noise,
                   static_cast<std::uint64_t>(node),
                   static_cast<std::uint64_t>(step));
    const double scale = prob.sigma / std::sqrt(static_cast<double>(prob.p));
    for (int j = 0; j < prob.p; ++j) out[j * out_stride] += scale * rng.gaussian();
  }
}

}  // namespace

QuadraticProblem generate_problem(int n, int p, double mu, double sigma,
                                  std::uint64_t seed) {
  if (n < 1 || p < 1) throw std::invalid_argument("problem: n and p must be positive");
  if (mu < 0.0 || sigma < 0.0)
    throw std::invalid_argument("problem: mu and sigma must be non-negative");

  QuadraticProblem prob;
  prob.n = n;
  prob.p = p;
  prob.mu = mu;
  prob.sigma = sigma;
  prob.seed = seed;
  prob.features.resize(n, p);
  prob.target_means.resize(n);
  for (int i = 0; i < n; ++i) {
    CounterRng feature_rng(seed, RngStream::problem_features, static_cast<std::uint64_t>(i));
    for (int j = 0; j < p; ++j) prob.features(i, j) = feature_rng.uniform();
    CounterRng target_rng(seed, RngStream::problem_targets, static_cast<std::uint64_t>(i));
    prob.target_means(i) = target_rng.uniform();
  }
  return prob;
}

Eigen::VectorXd exact_gradient(const QuadraticProblem& prob, int node,
                               const Eigen::VectorXd& x) {
  check_node(prob, node);
  double residual = -prob.target_means(node);
  for (int j = 0; j < prob.p; ++j) residual += prob.features(node, j) * x(j);
  Eigen::VectorXd grad(prob.p);
  for (int j = 0; j < prob.p; ++j)
    grad(j) = 2.0 * prob.features(node, j) * residual + prob.mu * x(j);
  return grad;
}

GradientSample noisy_gradient(const QuadraticProblem& prob, int node,
                              const Eigen::VectorXd& x, long step,
                              std::uint64_t noise_seed) {
  check_node(prob, node);
  GradientSample sample;
  sample.value.resize(prob.p);
  sample.node = node;
  sample.step = step;
  gradient_with_noise(prob, node, x.data(), 1, step, noise_seed,
                      sample.value.data(), 1);
  return sample;
}

GradientSample noisy_gradient(const QuadraticProblem& prob, int node,
                              const Eigen::VectorXd& x, long step) {
  return noisy_gradient(prob, node, x, step, prob.seed);
}

void sample_gradient_row(const QuadraticProblem& prob, int node,
                         const Eigen::MatrixXd& x, long step,
                         std::uint64_t noise_seed, Eigen::MatrixXd& out) {
  check_node(prob, node);
  gradient_with_noise(prob, node, x.data() + node, x.rows(), step, noise_seed,
                      out.data() + node, out.rows());
}

double node_objective(const QuadraticProblem& prob, int node,
                      const Eigen::VectorXd& x) {
  check_node(prob, node);
  const double residual = prob.features.row(node).dot(x) - prob.target_means(node);
  return residual * residual + 0.5 * prob.mu * x.squaredNorm() +
         prob.sigma * prob.sigma;
}

double objective_value(const QuadraticProblem& prob, const Eigen::VectorXd& x) {
  double total = 0.0;
  for (int i = 0; i < prob.n; ++i) total += node_objective(prob, i, x);
  return total / static_cast<double>(prob.n);
}

Optimum optimum(const QuadraticProblem& prob) {
  const double scale = 2.0 / static_cast<double>(prob.n);
  Eigen::MatrixXd hessian =
      scale * prob.features.transpose() * prob.features +
      prob.mu * Eigen::MatrixXd::Identity(prob.p, prob.p);
  Eigen::VectorXd rhs = scale * prob.features.transpose() * prob.target_means;

  Eigen::LDLT<Eigen::MatrixXd> solver(hessian);
  if (solver.info() != Eigen::Success) throw std::runtime_error("degenerate problem");
  Eigen::VectorXd x_star = solver.solve(rhs);
  if ((hessian * x_star - rhs).norm() > 1e-10 * (1.0 + rhs.norm()))
    throw std::runtime_error("degenerate problem");

  return {x_star, objective_value(prob, x_star)};
}

Constants constants(const QuadraticProblem& prob) {
  double worst = 0.0;
  for (int i = 0; i < prob.n; ++i)
    worst = std::max(worst, 2.0 * prob.features.row(i).squaredNorm() + prob.mu);
  return {prob.mu, worst};
}

double heterogeneity_at_optimum(const QuadraticProblem& prob) {
  const Optimum opt = optimum(prob);
  double total = 0.0;
  for (int i = 0; i < prob.n; ++i)
    total += exact_gradient(prob, i, opt.x_star).squaredNorm();
  return total / static_cast<double>(prob.n);
}

}  // namespace flexgt
