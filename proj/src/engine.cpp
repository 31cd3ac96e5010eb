#include "re/engine.hpp"

#include <cmath>

namespace re {

ExpansionState update_residual(const ExpansionState& state,
                               const Eigen::VectorXd& y,
                               const Eigen::VectorXd& f_theta, double p) {
  if (y.size() != f_theta.size() || y.size() != state.r.size()) {
    throw dimension_error("update_residual: dimension mismatch");
  }
  ExpansionState next;
  next.r = p * (y - f_theta) + (1.0 - p) * state.r;
  next.y_hat = state.y_hat;
  next.t = state.t + 1;
  return next;
}

Eigen::VectorXd expand_target(const Eigen::VectorXd& y,
                              const Eigen::VectorXd& r, double alpha) {
  if (y.size() != r.size()) {
    throw dimension_error("expand_target: dimension mismatch");
  }
  return y + alpha * r;
}

RunTrace run_re(LsProblem& problem, const Schedule& schedule,
                const RunOptions& options) {
  RunTrace trace;
  Eigen::VectorXd y = problem.target();
  ExpansionState state;
  state.r = Eigen::VectorXd::Zero(y.size());
  state.y_hat = y;
  state.t = 0;

  const int ramp = schedule.ramp_length;
  for (int t = 0; t < ramp; ++t) {
    const double mu = schedule.values[static_cast<size_t>(t)];
    const ReParams params = admm_params(mu);
    const double weight =
        options.variant == Variant::kPenaltyWeighted ? mu : 1.0;
    const Eigen::VectorXd y_hat_sweep = state.y_hat;
    try {
      problem.inner_update(y_hat_sweep, weight, options.gamma);
    } catch (const std::exception& e) {
      throw run_error(e.what(), t);
    }
    y = problem.target();
    const Eigen::VectorXd f = problem.predict();
    state = update_residual(state, y, f, params.p);
    state.y_hat = expand_target(y, state.r, params.alpha);

    TraceEntry entry;
    entry.t = t;
    entry.mu = mu;
    entry.expanded_objective = 0.5 * (y_hat_sweep - f).squaredNorm();
    entry.true_objective = problem.true_objective();
    trace.entries.push_back(entry);
  }

  // Refinement: plain alternating optimization, no expansion.
  double prev = problem.true_objective();
  for (int i = 0; i < options.refine_iters; ++i) {
    y = problem.target();
    try {
      problem.inner_update(y, 1.0, options.gamma);
    } catch (const std::exception& e) {
      throw run_error(e.what(), ramp + i);
    }
    const double obj = problem.true_objective();
    TraceEntry entry;
    entry.t = ramp + i;
    entry.mu = 1.0;
    entry.expanded_objective = 0.5 * (problem.target() - problem.predict()).squaredNorm();
    entry.true_objective = obj;
    trace.entries.push_back(entry);
    if (std::abs(prev - obj) < options.refine_tol) {
      trace.converged = true;
      break;
    }
    prev = obj;
  }
  return trace;
}

}  // namespace re
