#pragma once

#include <vector>

#include "re/engine.hpp"

namespace re {

/// One-dimensional quartic least-squares instance:
/// E(theta) = 1/2 ((y1 - theta^2)^2 + (y2 - theta)^2).
struct QuarticInstance {
  double y1 = 0.0;
  double y2 = 0.0;
};

enum class CriticalKind { kMinimum, kMaximum, kDegenerate };

struct CriticalPoint {
  double theta = 0.0;
  double energy = 0.0;
  double re_constant = 0.0;  // may be +inf
  CriticalKind kind = CriticalKind::kMinimum;
};

enum class TheoremVerdict { kHolds, kFails, kTieAmbiguous, kNotApplicable };

double quartic_energy(const QuarticInstance& inst, double theta);
double quartic_gradient(const QuarticInstance& inst, double theta);

/// Real roots of dE/dtheta = 2 theta^3 + (1 - 2 y1) theta - y2 with positive
/// second derivative, sorted ascending. Degenerate double roots are excluded.
/// The re_constant field is filled in.
std::vector<CriticalPoint> find_local_minima(const QuarticInstance& inst);

/// Largest alpha >= 0 keeping the expanded second derivative
/// H(alpha) = (4 theta^2 + 1) - 2 (1 + alpha)(y1 - theta^2) nonnegative.
/// Returns +inf when y1 - theta^2 <= 0. theta_star must be stationary.
double re_constant(const QuarticInstance& inst, double theta_star);

/// For instances with exactly two local minima: does the minimum with the
/// strictly larger RE constant have the strictly smaller energy? Equal
/// constants with equal energies count as holds; equal constants with
/// unequal energies are reported as ambiguous rather than decided.
TheoremVerdict check_theorem1(const QuarticInstance& inst);

/// Expanded second derivative at theta for a given expansion of the residual
/// at theta_star (Hessian positivity test, scalar case).
double expanded_curvature(const QuarticInstance& inst, double theta_star,
                          double alpha);

/// LsProblem adapter. The inner update follows the descent flow of the
/// expanded objective from the current estimate to the local minimum it
/// drains into; it never does a global jump on its own.
class QuarticProblem : public LsProblem {
 public:
  QuarticProblem(const QuarticInstance& inst, double theta0)
      : inst_(inst), theta_(theta0) {}

  Eigen::VectorXd target() const override;
  Eigen::VectorXd predict() const override;
  void inner_update(const Eigen::VectorXd& y_hat, double data_weight,
                    double gamma) override;
  double true_objective() const override;

  double theta() const { return theta_; }

 private:
  QuarticInstance inst_;
  double theta_;
};

}  // namespace re
