#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flexgt {

/// Diagnostics captured at one round boundary t = d2 k.
struct RoundMetrics {
  long round = 0;
  double opt_gap = 0.0;        // ||xbar - x*||^2
  double f_gap = 0.0;          // f(xbar) - f*
  double consensus_err = 0.0;  // ||X - 1 xbar||_F^2
  double tracking_err = 0.0;   // ||Y - 1 ybar||_F^2
  double lyapunov = 0.0;       // opt_gap + c1 consensus + c2 tracking
  double client_div = 0.0;     // max within-period ||X_t - 1 xbar_start||_F^2
  long grad_evals = 0;
  long comm_steps = 0;
};

struct Trace {
  std::vector<RoundMetrics> rounds;
  bool diverged = false;
  double wall_time_sec = 0.0;

  // Identification, filled by the harness.
  std::uint64_t fingerprint = 0;
  std::string run_id;
  std::string algorithm;
  int d1 = 1;
  int d2 = 1;
  double gamma = 0.0;
  std::uint64_t seed = 0;
};

}  // namespace flexgt
