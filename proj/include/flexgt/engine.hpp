#pragma once

#include <functional>
#include <string>
#include <vector>

#include "flexgt/problem.hpp"
#include "flexgt/state.hpp"
#include "flexgt/topology.hpp"
#include "flexgt/trace.hpp"

namespace flexgt {

/// flexgt(1,1) is DSGT, flexgt(1,d2) is LU-GT, dfl(1,1) is D-PSGD.
enum class Variant { flexgt, dfl };

const char* to_string(Variant variant);
Variant variant_from_string(const std::string& name);

struct AlgoConfig {
  Variant variant = Variant::flexgt;
  int d1 = 1;      // gossip sweeps per round
  int d2 = 1;      // local updates per round
  double gamma = 0.01;
  long rounds = 1;
};

/// Hook into the per-step structure of a run; used by invariant checks.
struct StepObserver {
  virtual ~StepObserver() = default;
  virtual void after_inner_step(const NetworkState&) {}
  virtual void after_gossip_step(const NetworkState&) {}
};

/// Iterates of one round, captured on request for the compact-form oracle
/// and the client-divergence diagnostics.
struct RoundRecord {
  Eigen::MatrixXd x_start;                // X_{d2 k}
  Eigen::MatrixXd y_start;                // Y_{d2 k}
  std::vector<Eigen::MatrixXd> y_used;    // Y_{d2 k + j}, j = 0..d2-1
  std::vector<Eigen::MatrixXd> x_inner;   // X_{d2 k + t}, t = 1..d2-1
};

/// X0 rows drawn uniform [0,1]^p from the seeded generator. For flexgt the
/// tracker starts at the step-0 stochastic gradients and last_grad caches
/// them. Counters start at zero; the initialization samples are not billed.
NetworkState init_state(const QuadraticProblem& prob, const AlgoConfig& config,
                        const WeightMatrix& w, std::uint64_t seed);

/// d2 local updates. flexgt: x -= gamma y, then resample at the new iterate
/// and advance the tracker against the cached previous sample. dfl: d2 plain
/// SGD steps.
void local_phase(NetworkState& state, const QuadraticProblem& prob,
                 const AlgoConfig& config, StepObserver* observer = nullptr,
                 RoundRecord* record = nullptr);

/// d1 synchronized gossip sweeps on x (and y for flexgt). last_grad is not
/// mixed; the cached samples belong to their nodes.
void communication_phase(NetworkState& state, const WeightMatrix& w,
                         const AlgoConfig& config,
                         StepObserver* observer = nullptr);

/// local_phase followed by communication_phase; advances the round counter.
void run_round(NetworkState& state, const QuadraticProblem& prob,
               const AlgoConfig& config, const WeightMatrix& w,
               StepObserver* observer = nullptr, RoundRecord* record = nullptr);

/// Called after every round; return false to stop the run early.
using MetricsHook = std::function<bool(const RoundMetrics&)>;

/// Full run: init, then `rounds` rounds with per-round diagnostics appended
/// to the returned trace. Non-finite state truncates the trace and sets the
/// diverged flag instead of crashing.
Trace run(const QuadraticProblem& prob, const AlgoConfig& config,
          const WeightMatrix& w, std::uint64_t seed,
          const MetricsHook& hook = {});

}  // namespace flexgt
