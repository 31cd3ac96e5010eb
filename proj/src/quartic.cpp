#include "re/quartic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace re {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Real roots of 2 t^3 + c1 t + c0, polished by Newton iterations.
std::vector<double> cubic_real_roots(double c1, double c0) {
  // Monic form: t^3 + a t + b.
  const double a = c1 / 2.0;
  const double b = c0 / 2.0;
  Eigen::Matrix3d companion;
  companion << 0, 0, -b,
               1, 0, -a,
               0, 1, 0;
  Eigen::EigenSolver<Eigen::Matrix3d> es(companion, false);
  std::vector<double> roots;
  const double scale = 1.0 + std::abs(a) + std::abs(b);
  for (int i = 0; i < 3; ++i) {
    const auto ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) > 1e-12 * scale * (1.0 + std::abs(ev.real()))) {
      continue;
    }
    double t = ev.real();
    for (int it = 0; it < 4; ++it) {
      const double f = 2.0 * t * t * t + c1 * t + c0;
      const double df = 6.0 * t * t + c1;
      if (std::abs(df) < 1e-300) break;
      t -= f / df;
    }
    roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double second_derivative(const QuarticInstance& inst, double theta) {
  return 6.0 * theta * theta + 1.0 - 2.0 * inst.y1;
}

}  // namespace

double quartic_energy(const QuarticInstance& inst, double theta) {
  const double r1 = inst.y1 - theta * theta;
  const double r2 = inst.y2 - theta;
  return 0.5 * (r1 * r1 + r2 * r2);
}

double quartic_gradient(const QuarticInstance& inst, double theta) {
  return 2.0 * theta * theta * theta + (1.0 - 2.0 * inst.y1) * theta - inst.y2;
}

std::vector<CriticalPoint> find_local_minima(const QuarticInstance& inst) {
  const std::vector<double> roots =
      cubic_real_roots(1.0 - 2.0 * inst.y1, -inst.y2);
  std::vector<CriticalPoint> minima;
  for (double t : roots) {
    if (!minima.empty() && std::abs(t - minima.back().theta) < 1e-8) continue;
    const double dd = second_derivative(inst, t);
    if (dd <= 1e-10) continue;  // maxima and degenerate double roots
    CriticalPoint cp;
    cp.theta = t;
    cp.energy = quartic_energy(inst, t);
    cp.kind = CriticalKind::kMinimum;
    cp.re_constant = re_constant(inst, t);
    minima.push_back(cp);
  }
  return minima;
}

double re_constant(const QuarticInstance& inst, double theta_star) {
  if (std::abs(quartic_gradient(inst, theta_star)) > 1e-8) {
    throw std::invalid_argument("re_constant: theta_star is not stationary");
  }
  const double curve_term = inst.y1 - theta_star * theta_star;
  if (curve_term <= 0.0) return kInf;
  const double jtj = 4.0 * theta_star * theta_star + 1.0;
  return std::max(0.0, jtj / (2.0 * curve_term) - 1.0);
}

double expanded_curvature(const QuarticInstance& inst, double theta_star,
                          double alpha) {
  const double jtj = 4.0 * theta_star * theta_star + 1.0;
  return jtj - 2.0 * (1.0 + alpha) * (inst.y1 - theta_star * theta_star);
}

TheoremVerdict check_theorem1(const QuarticInstance& inst) {
  const auto minima = find_local_minima(inst);
  if (minima.size() != 2) return TheoremVerdict::kNotApplicable;
  const double a1 = minima[0].re_constant;
  const double a2 = minima[1].re_constant;
  const double e1 = minima[0].energy;
  const double e2 = minima[1].energy;
  const double atol = 1e-9 * (1.0 + std::min(std::abs(a1), std::abs(a2)));
  const double etol = 1e-9 * (1.0 + std::abs(e1));
  const bool alpha_tie = (std::isinf(a1) && std::isinf(a2)) ||
                         (!std::isinf(a1) && !std::isinf(a2) &&
                          std::abs(a1 - a2) <= atol);
  const bool energy_tie = std::abs(e1 - e2) <= etol;
  if (alpha_tie) {
    return energy_tie ? TheoremVerdict::kHolds : TheoremVerdict::kTieAmbiguous;
  }
  if (energy_tie) return TheoremVerdict::kFails;
  const bool larger_alpha_first = a1 > a2;
  const bool smaller_energy_first = e1 < e2;
  return larger_alpha_first == smaller_energy_first ? TheoremVerdict::kHolds
                                                    : TheoremVerdict::kFails;
}

Eigen::VectorXd QuarticProblem::target() const {
  Eigen::VectorXd y(2);
  y << inst_.y1, inst_.y2;
  return y;
}

Eigen::VectorXd QuarticProblem::predict() const {
  Eigen::VectorXd f(2);
  f << theta_ * theta_, theta_;
  return f;
}

double QuarticProblem::true_objective() const {
  return quartic_energy(inst_, theta_);
}

void QuarticProblem::inner_update(const Eigen::VectorXd& y_hat,
                                  double /*data_weight*/, double /*gamma*/) {
  // The data weight scales the whole objective and does not move its minima.
  const QuarticInstance expanded{y_hat(0), y_hat(1)};
  const auto minima = find_local_minima(expanded);
  if (minima.empty()) {
    // Degenerate flat landscape; fall back to the lowest critical point.
    const auto roots =
        cubic_real_roots(1.0 - 2.0 * expanded.y1, -expanded.y2);
    if (roots.empty()) return;
    double best = roots[0];
    for (double t : roots) {
      if (quartic_energy(expanded, t) < quartic_energy(expanded, best)) {
        best = t;
      }
    }
    theta_ = best;
    return;
  }
  const double g = quartic_gradient(expanded, theta_);
  double chosen = minima.front().theta;
  bool found = false;
  if (g > 0.0) {
    // Descend to the left: largest minimum location <= theta.
    for (const auto& m : minima) {
      if (m.theta <= theta_) {
        chosen = m.theta;
        found = true;
      }
    }
  } else if (g < 0.0) {
    // Descend to the right: smallest minimum location >= theta.
    for (const auto& m : minima) {
      if (m.theta >= theta_) {
        chosen = m.theta;
        found = true;
        break;
      }
    }
  } else {
    // Stationary: stay at the nearest minimum.
    double best_dist = kInf;
    for (const auto& m : minima) {
      const double d = std::abs(m.theta - theta_);
      if (d < best_dist) {
        best_dist = d;
        chosen = m.theta;
        found = true;
      }
    }
  }
  if (!found) {
    // The basin on the descent side vanished; take the nearest minimum.
    double best_dist = kInf;
    for (const auto& m : minima) {
      const double d = std::abs(m.theta - theta_);
      if (d < best_dist) {
        best_dist = d;
        chosen = m.theta;
      }
    }
  }
  theta_ = chosen;
}

}  // namespace re
