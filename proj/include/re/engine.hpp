#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "re/schedule.hpp"

namespace re {

/// Residual-momentum state carried across outer iterations.
struct ExpansionState {
  Eigen::VectorXd r;      // residual momentum, same dimension as y
  Eigen::VectorXd y_hat;  // expanded target
  int t = 0;
};

/// Which inner objective the backend minimizes: the plain expanded data term
/// (weight 1) or the penalty-weighted one (weight mu). The two coincide for
/// unregularized problems.
enum class Variant { kExpanded, kPenaltyWeighted };

struct TraceEntry {
  int t = 0;
  double mu = 1.0;
  double expanded_objective = 0.0;
  double true_objective = 0.0;
};

struct RunTrace {
  std::vector<TraceEntry> entries;
  bool converged = false;
};

/// A least-squares problem solvable by single-sweep alternating minimization.
/// Implementations own the current parameter estimate; inner_update advances
/// it by exactly one alternating sweep against an arbitrary expanded target.
class LsProblem {
 public:
  virtual ~LsProblem() = default;

  /// Current target vector y. May change between sweeps for problems whose
  /// correspondence structure is part of the parameters.
  virtual Eigen::VectorXd target() const = 0;

  /// f(theta) at the current estimate.
  virtual Eigen::VectorXd predict() const = 0;

  /// One alternating sweep minimizing data_weight/2 * ||y_hat - f(theta)||^2
  /// plus the problem's regularizer (if any, weighted by gamma).
  virtual void inner_update(const Eigen::VectorXd& y_hat, double data_weight,
                            double gamma) = 0;

  /// 1/2 ||y - f(theta)||^2 (+ gamma * R(theta) when regularized).
  virtual double true_objective() const = 0;
};

class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class run_error : public std::runtime_error {
 public:
  run_error(const std::string& what, int iteration)
      : std::runtime_error(what), iteration(iteration) {}
  int iteration;
};

/// r' = p*(y - f_theta) + (1-p)*r, t incremented. y_hat is left untouched.
ExpansionState update_residual(const ExpansionState& state,
                               const Eigen::VectorXd& y,
                               const Eigen::VectorXd& f_theta, double p);

/// y + alpha * r.
Eigen::VectorXd expand_target(const Eigen::VectorXd& y,
                              const Eigen::VectorXd& r, double alpha);

struct RunOptions {
  Variant variant = Variant::kPenaltyWeighted;
  double gamma = 0.0;
  int refine_iters = 100;
  double refine_tol = 1e-10;
};

/// Scheduled outer loop: T iterations of inner_update / update_residual /
/// expand_target with (alpha, p) from admm_params(mu(t)), then refinement at
/// mu = 1 (no expansion) until the true objective stalls or refine_iters is
/// reached.
RunTrace run_re(LsProblem& problem, const Schedule& schedule,
                const RunOptions& options = {});

}  // namespace re
