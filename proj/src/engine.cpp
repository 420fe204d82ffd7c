#include "flexgt/engine.hpp"

#include <chrono>
#include <stdexcept>

#include "flexgt/analysis.hpp"
#include "flexgt/rng.hpp"

namespace flexgt {

namespace {

bool finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

const char* to_string(Variant variant) {
  return variant == Variant::flexgt ? "flexgt" : "dfl";
}

Variant variant_from_string(const std::string& name) {
  if (name == "flexgt") return Variant::flexgt;
  if (name == "dfl") return Variant::dfl;
  throw std::invalid_argument("unknown algorithm variant: " + name);
}

NetworkState init_state(const QuadraticProblem& prob, const AlgoConfig& config,
                        const WeightMatrix& w, std::uint64_t seed) {
  if (w.n() != prob.n)
    throw std::invalid_argument("engine: weight matrix and problem disagree on n");
  if (config.d1 < 1 || config.d2 < 1)
    throw std::invalid_argument("engine: d1 and d2 must be at least 1");

  NetworkState state;
  state.seed = seed;
  state.x.resize(prob.n, prob.p);
  for (int i = 0; i < prob.n; ++i) {
    CounterRng rng(seed, RngStream::state_init, static_cast<std::uint64_t>(i));
    for (int j = 0; j < prob.p; ++j) state.x(i, j) = rng.uniform();
  }
  if (config.variant == Variant::flexgt) {
    state.last_grad.resize(prob.n, prob.p);
    for (int i = 0; i < prob.n; ++i)
      sample_gradient_row(prob, i, state.x, 0, seed, state.last_grad);
    state.y = state.last_grad;
  }
  return state;
}

void local_phase(NetworkState& state, const QuadraticProblem& prob,
                 const AlgoConfig& config, StepObserver* observer,
                 RoundRecord* record) {
  const int n = state.n();
  const int p = state.p();
  if (record) {
    record->x_start = state.x;
    record->y_start = state.y;
    record->y_used.clear();
    record->x_inner.clear();
  }
  Eigen::MatrixXd fresh(n, p);
  for (int l = 0; l < config.d2; ++l) {
    if (config.variant == Variant::flexgt) {
      if (record) record->y_used.push_back(state.y);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) state.x(i, j) -= config.gamma * state.y(i, j);
      ++state.step;
      for (int i = 0; i < n; ++i)
        sample_gradient_row(prob, i, state.x, state.step, state.seed, fresh);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j)
          state.y(i, j) += fresh(i, j) - state.last_grad(i, j);
      state.last_grad.swap(fresh);
    } else {
      for (int i = 0; i < n; ++i)
        sample_gradient_row(prob, i, state.x, state.step, state.seed, fresh);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) state.x(i, j) -= config.gamma * fresh(i, j);
      ++state.step;
    }
    state.grad_evals += n;
    if (record && l + 1 < config.d2) record->x_inner.push_back(state.x);
    if (observer) observer->after_inner_step(state);
  }
}

void communication_phase(NetworkState& state, const WeightMatrix& w,
                         const AlgoConfig& config, StepObserver* observer) {
  Eigen::MatrixXd scratch(state.x.rows(), state.x.cols());
  for (int s = 0; s < config.d1; ++s) {
    gossip_sweep(w.entries, state.x, scratch);
    if (config.variant == Variant::flexgt) gossip_sweep(w.entries, state.y, scratch);
    ++state.comm_steps;
    if (observer) observer->after_gossip_step(state);
  }
}

void run_round(NetworkState& state, const QuadraticProblem& prob,
               const AlgoConfig& config, const WeightMatrix& w,
               StepObserver* observer, RoundRecord* record) {
  local_phase(state, prob, config, observer, record);
  communication_phase(state, w, config, observer);
  ++state.round;
}

Trace run(const QuadraticProblem& prob, const AlgoConfig& config,
          const WeightMatrix& w, std::uint64_t seed, const MetricsHook& hook) {
  if (config.rounds < 1) throw std::invalid_argument("engine: rounds must be at least 1");

  const auto started = std::chrono::steady_clock::now();
  const Optimum opt = optimum(prob);
  const Constants consts = constants(prob);
  TheoryParams tp;
  tp.mu = consts.mu;
  tp.L = consts.L;
  tp.rho = w.rho;
  tp.d1 = config.d1;
  tp.d2 = config.d2;
  tp.gamma = config.gamma;
  tp.sigma = prob.sigma;
  tp.n = prob.n;

  Trace trace;
  trace.d1 = config.d1;
  trace.d2 = config.d2;
  trace.gamma = config.gamma;
  trace.seed = seed;
  trace.algorithm = to_string(config.variant);
  trace.rounds.reserve(static_cast<std::size_t>(config.rounds));

  NetworkState state = init_state(prob, config, w, seed);
  RoundRecord record;
  for (long k = 0; k < config.rounds; ++k) {
    const Eigen::VectorXd start_mean =
        state.x.colwise().mean().transpose();
    run_round(state, prob, config, w, nullptr, &record);
    if (!finite(state.x) ||
        (config.variant == Variant::flexgt && !finite(state.y))) {
      trace.diverged = true;
      break;
    }
    RoundMetrics metrics = measure_round(
        state, prob, opt, tp,
        std::span<const Eigen::MatrixXd>(record.x_inner), start_mean);
    trace.rounds.push_back(metrics);
    if (hook && !hook(metrics)) break;
  }
  trace.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return trace;
}

}  // namespace flexgt
