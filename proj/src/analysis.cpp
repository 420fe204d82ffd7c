#include "flexgt/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace flexgt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double squared_deviation_from_mean(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::RowVectorXd mean = m.colwise().mean();
  return (m.rowwise() - mean).squaredNorm();
}

}  // namespace

double TheoryParams::rho_d1() const { return std::pow(rho, d1); }

LyapunovCoeffs lyapunov_coeffs(const TheoryParams& tp) {
  const double r = tp.rho_d1();
  if (r >= 1.0) throw std::invalid_argument("no spectral gap");
  const double gap = 1.0 - r;
  const double d2 = tp.d2;
  LyapunovCoeffs c;
  c.c1 = 192.0 * d2 * tp.gamma * tp.L / (tp.n * gap);
  c.c2 = 9312.0 * d2 * d2 * d2 * tp.gamma * tp.gamma * tp.gamma * tp.L /
         (tp.n * gap * gap * gap);
  return c;
}

double lyapunov_value(const NetworkState& state, const Optimum& opt,
                      const TheoryParams& tp) {
  const LyapunovCoeffs c = lyapunov_coeffs(tp);
  const Eigen::VectorXd mean_x = state.x.colwise().mean().transpose();
  const double gap = (mean_x - opt.x_star).squaredNorm();
  const double consensus = squared_deviation_from_mean(state.x);
  const double tracking = squared_deviation_from_mean(state.y);
  return gap + c.c1 * consensus + c.c2 * tracking;
}

double max_stepsize(const TheoryParams& tp) {
  if (tp.L <= 0.0) throw std::invalid_argument("max_stepsize: L must be positive");
  const double r = tp.rho_d1();
  const double gap = 1.0 - r;
  const double d2L = tp.d2 * tp.L;
  const double first = 1.0 / (10.0 * d2L);
  const double second =
      r > 0.0 ? gap / (37.0 * d2L * std::pow(r, 0.25)) : kInf;
  const double third =
      r > 0.0 ? gap * gap / (153.0 * d2L * std::sqrt(r)) : kInf;
  return std::min({first, second, third});
}

ContractionResult contraction_factor(const TheoryParams& tp) {
  const double gap = 1.0 - tp.rho_d1();
  const double shrink = std::min(tp.mu * tp.d2 * tp.gamma / 4.0, gap / 8.0);
  return {1.0 - shrink, tp.gamma <= max_stepsize(tp)};
}

double m_sigma(const TheoryParams& tp) {
  const double r = tp.rho_d1();
  const double gap = 1.0 - r;
  const double s2 = tp.sigma * tp.sigma;
  return 36.0 * gap * gap * gap * s2 + 3456.0 * gap * r * s2 + 55872.0 * r * s2;
}

double comp_complexity(const TheoryParams& tp) {
  if (tp.eps <= 0.0) throw std::invalid_argument("complexity: eps must be positive");
  const double r = tp.rho_d1();
  const double gap = 1.0 - r;
  const double s2 = tp.sigma * tp.sigma;
  const double deterministic = tp.d2 * tp.L / (gap * gap * tp.mu);
  const double averaging = s2 / (tp.mu * tp.mu * tp.n * tp.eps);
  const double network_noise = tp.d2 * std::sqrt(tp.L * r * s2) /
                               std::sqrt(tp.mu * tp.mu * tp.mu * gap * gap * gap * tp.eps);
  return deterministic + averaging + network_noise;
}

double comm_complexity(const TheoryParams& tp) {
  return comp_complexity(tp) * tp.d1 / tp.d2;
}

double weighted_cost(const TheoryParams& tp) {
  return tp.w1 * comm_complexity(tp) + tp.w2 * comp_complexity(tp);
}

GridSearchResult minimize_weighted_cost(const TheoryParams& tp, int d1_max,
                                        int d2_max) {
  if (d1_max < 1 || d2_max < 1)
    throw std::invalid_argument("minimize_weighted_cost: grid bounds must be at least 1");
  GridSearchResult result;
  result.d1_max = d1_max;
  result.d2_max = d2_max;
  result.grid.assign(static_cast<std::size_t>(d1_max) * d2_max, 0.0);
  result.cost = kInf;
  for (int d2 = 1; d2 <= d2_max; ++d2) {
    for (int d1 = 1; d1 <= d1_max; ++d1) {
      TheoryParams cell = tp;
      cell.d1 = d1;
      cell.d2 = d2;
      const double cost = weighted_cost(cell);
      result.grid[(d2 - 1) * static_cast<std::size_t>(d1_max) + (d1 - 1)] = cost;
      const bool better =
          cost < result.cost ||
          (cost == result.cost &&
           (d1 < result.d1 || (d1 == result.d1 && d2 < result.d2)));
      if (better) {
        result.cost = cost;
        result.d1 = d1;
        result.d2 = d2;
      }
    }
  }
  return result;
}

RoundMetrics measure_round(const NetworkState& state,
                           const QuadraticProblem& prob, const Optimum& opt,
                           const TheoryParams& tp,
                           std::span<const Eigen::MatrixXd> inner_x,
                           const Eigen::VectorXd& round_start_mean) {
  RoundMetrics metrics;
  metrics.round = state.round - 1;
  metrics.grad_evals = state.grad_evals;
  metrics.comm_steps = state.comm_steps;

  const Eigen::VectorXd mean_x = state.x.colwise().mean().transpose();
  metrics.opt_gap = (mean_x - opt.x_star).squaredNorm();
  metrics.f_gap = objective_value(prob, mean_x) - opt.f_star;
  metrics.consensus_err = squared_deviation_from_mean(state.x);
  metrics.tracking_err = squared_deviation_from_mean(state.y);
  const LyapunovCoeffs c = lyapunov_coeffs(tp);
  metrics.lyapunov = metrics.opt_gap + c.c1 * metrics.consensus_err +
                     c.c2 * metrics.tracking_err;

  double worst = 0.0;
  for (const Eigen::MatrixXd& snapshot : inner_x) {
    const double dev =
        (snapshot.rowwise() - round_start_mean.transpose()).squaredNorm();
    worst = std::max(worst, dev);
  }
  metrics.client_div = worst;
  return metrics;
}

std::optional<CostPoint> steps_to_accuracy(const Trace& trace, double eps,
                                           bool use_f_gap) {
  if (trace.rounds.empty() || trace.diverged) return std::nullopt;
  // Scan backwards for the last violation; the answer is the round after it.
  std::size_t first_ok = 0;
  for (std::size_t i = trace.rounds.size(); i-- > 0;) {
    const double value =
        use_f_gap ? trace.rounds[i].f_gap : trace.rounds[i].opt_gap;
    if (value > eps) {
      first_ok = i + 1;
      break;
    }
  }
  if (first_ok >= trace.rounds.size()) return std::nullopt;
  const RoundMetrics& row = trace.rounds[first_ok];
  return CostPoint{row.round, row.grad_evals, row.comm_steps};
}

}  // namespace flexgt
