#pragma once

#include <optional>
#include <span>
#include <vector>

#include "flexgt/problem.hpp"
#include "flexgt/state.hpp"
#include "flexgt/trace.hpp"

namespace flexgt {

/// Parameter bundle feeding every bound and complexity evaluator. rho is the
/// spectral quantity of W itself; the evaluators raise it to d1 internally.
struct TheoryParams {
  double mu = 0.0;
  double L = 1.0;
  double rho = 0.0;
  int d1 = 1;
  int d2 = 1;
  double gamma = 0.0;
  double sigma = 0.0;
  int n = 1;
  double eps = 1e-5;
  double w1 = 1.0;
  double w2 = 1.0;

  double rho_d1() const;
};

struct LyapunovCoeffs {
  double c1 = 0.0;
  double c2 = 0.0;
};

/// c1 = 192 d2 gamma L / (n (1 - rho^d1)),
/// c2 = 9312 d2^3 gamma^3 L / (n (1 - rho^d1)^3).
/// Throws "no spectral gap" at rho^d1 = 1.
LyapunovCoeffs lyapunov_coeffs(const TheoryParams& tp);

/// V_t = ||xbar - x*||^2 + c1 ||X - 1 xbar||^2 + c2 ||Y - 1 ybar||^2
/// at a round boundary.
double lyapunov_value(const NetworkState& state, const Optimum& opt,
                      const TheoryParams& tp);

/// min{ 1/(10 d2 L),
///      (1 - rho^d1) / (37 d2 L (rho^d1)^{1/4}),
///      (1 - rho^d1)^2 / (153 d2 L (rho^d1)^{1/2}) };
/// terms with rho^d1 = 0 in the denominator count as +inf.
double max_stepsize(const TheoryParams& tp);

struct ContractionResult {
  double factor = 1.0;
  bool gamma_within_bound = true;
};

/// 1 - min{ mu d2 gamma / 4, (1 - rho^d1)/8 }. The factor is computed even
/// when gamma exceeds the stepsize bound; the flag reports it.
ContractionResult contraction_factor(const TheoryParams& tp);

/// 36 (1-rho^d1)^3 sigma^2 + 3456 (1-rho^d1) rho^d1 sigma^2
/// + 55872 rho^d1 sigma^2.
double m_sigma(const TheoryParams& tp);

/// Computation steps to reach eps, with unit constants and log factors
/// dropped: d2 L/((1-rho^d1)^2 mu) + sigma^2/(mu^2 n eps)
/// + d2 sqrt(L rho^d1 sigma^2) / sqrt(mu^3 (1-rho^d1)^3 eps).
double comp_complexity(const TheoryParams& tp);

/// Communication steps to reach eps; equals comp_complexity * d1 / d2.
double comm_complexity(const TheoryParams& tp);

/// w1 * comm + w2 * comp.
double weighted_cost(const TheoryParams& tp);

struct GridSearchResult {
  int d1 = 1;
  int d2 = 1;
  double cost = 0.0;
  int d1_max = 1;
  int d2_max = 1;
  std::vector<double> grid;  // row-major, grid[(d2-1) * d1_max + (d1-1)]

  double at(int d1, int d2) const { return grid[(d2 - 1) * d1_max + (d1 - 1)]; }
};

/// Exhaustive integer grid search over [1, d1_max] x [1, d2_max]; ties break
/// toward smaller d1, then smaller d2.
GridSearchResult minimize_weighted_cost(const TheoryParams& tp, int d1_max,
                                        int d2_max);

/// All round diagnostics at the current boundary. inner_x holds the
/// within-period snapshots X_{d2k+t}, t = 1..d2-1 (empty for d2 = 1), and
/// round_start_mean the mean row of X at the round start.
RoundMetrics measure_round(const NetworkState& state,
                           const QuadraticProblem& prob, const Optimum& opt,
                           const TheoryParams& tp,
                           std::span<const Eigen::MatrixXd> inner_x,
                           const Eigen::VectorXd& round_start_mean);

struct CostPoint {
  long round = 0;
  long grad_evals = 0;
  long comm_steps = 0;
};

/// First round whose opt_gap (or f_gap) is at most eps and stays there for
/// the rest of the trace; nullopt when never reached or diverged.
std::optional<CostPoint> steps_to_accuracy(const Trace& trace, double eps,
                                           bool use_f_gap = false);

}  // namespace flexgt
