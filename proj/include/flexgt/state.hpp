#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace flexgt {

/// Stacked per-node state of one run. Rows are nodes. For the non-tracking
/// variant, y and last_grad stay empty. last_grad caches the realized
/// stochastic gradients at the current x; the tracker update must subtract
/// exactly the sample that formed the previous tracker, never a fresh draw.
struct NetworkState {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
  Eigen::MatrixXd last_grad;
  long step = 0;        // global inner-step counter t
  long round = 0;       // completed outer rounds k
  long grad_evals = 0;  // cumulative oracle calls, excluding initialization
  long comm_steps = 0;  // cumulative gossip sweeps
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(x.rows()); }
  int p() const { return static_cast<int>(x.cols()); }
};

}  // namespace flexgt
