#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace flexgt {

/// Regularized least-squares node objectives
///   f_i(x) = (h_i^T x - vbar_i)^2 + (mu/2) ||x||^2 + sigma^2,
/// with a seeded stochastic gradient oracle. The additive sigma^2 constant is
/// the target-noise variance folded into the objective value; it does not
/// affect gradients.
struct QuadraticProblem {
  int n = 0;
  int p = 0;
  Eigen::MatrixXd features;       // rows h_i, entries in [0,1] when generated
  Eigen::VectorXd target_means;   // vbar_i in [0,1] when generated
  double mu = 0.0;                // regularization = strong-convexity modulus
  double sigma = 0.0;             // gradient noise level, E||delta||^2 = sigma^2
  std::uint64_t seed = 0;
};

struct GradientSample {
  Eigen::VectorXd value;
  int node = 0;
  long step = 0;
};

struct Optimum {
  Eigen::VectorXd x_star;
  double f_star = 0.0;
};

struct Constants {
  double mu = 0.0;
  double L = 0.0;
};

/// Features and target means drawn i.i.d. uniform on [0,1] from the seeded
/// counter generator; identical inputs yield bit-identical problems.
QuadraticProblem generate_problem(int n, int p, double mu, double sigma,
                                  std::uint64_t seed);

/// grad f_i(x) = 2 h_i (h_i^T x - vbar_i) + mu x.
Eigen::VectorXd exact_gradient(const QuadraticProblem& prob, int node,
                               const Eigen::VectorXd& x);

/// Exact gradient plus Gaussian noise with per-coordinate variance sigma^2/p,
/// so E||delta||^2 = sigma^2. The noise is keyed on (seed, node, step) and is
/// therefore independent of call order; the overload without a seed keys on
/// prob.seed.
GradientSample noisy_gradient(const QuadraticProblem& prob, int node,
                              const Eigen::VectorXd& x, long step,
                              std::uint64_t noise_seed);
GradientSample noisy_gradient(const QuadraticProblem& prob, int node,
                              const Eigen::VectorXd& x, long step);

/// Same draw as noisy_gradient, reading x.row(node) and writing
/// out.row(node). Shared by the engine so stacked-state runs and per-node
/// reference loops perform identical arithmetic.
void sample_gradient_row(const QuadraticProblem& prob, int node,
                         const Eigen::MatrixXd& x, long step,
                         std::uint64_t noise_seed, Eigen::MatrixXd& out);

double node_objective(const QuadraticProblem& prob, int node,
                      const Eigen::VectorXd& x);
double objective_value(const QuadraticProblem& prob, const Eigen::VectorXd& x);

/// Solves (2/n sum h_i h_i^T + mu I) x = 2/n sum h_i vbar_i. Throws
/// "degenerate problem" when mu = 0 and the averaged Hessian is singular.
Optimum optimum(const QuadraticProblem& prob);

/// mu and L = max_i (2 ||h_i||^2 + mu).
Constants constants(const QuadraticProblem& prob);

/// (1/n) sum_i ||grad f_i(x*)||^2, the gradient diversity at the optimum.
double heterogeneity_at_optimum(const QuadraticProblem& prob);

}  // namespace flexgt
