#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "re/engine.hpp"

namespace re {

/// Latent 1-D signal plus a short blur kernel constrained to the
/// probability simplex.
struct DeconvModel {
  Eigen::VectorXd signal;  // length n
  Eigen::VectorXd kernel;  // length L, L <= n
};

/// (x (*) kern)_i = sum_j kern_j x_{(i-j) mod n}.
Eigen::VectorXd circular_convolve(const Eigen::VectorXd& signal,
                                  const Eigen::VectorXd& kernel);

/// Euclidean projection onto the probability simplex.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v);

/// One alternating sweep: ridge solve for the signal (second-difference
/// smoothness), ridge solve for the kernel (L2), then simplex projection of
/// the kernel. `data_weight` is the coefficient on the squared data term.
void deconv_step(const Eigen::VectorXd& y_hat, DeconvModel& model,
                 double data_weight, double gamma_signal, double gamma_kernel,
                 bool project_kernel = true);

/// 1/2 ||y - x (*) kern||^2 + gamma_signal/2 ||D2 x||^2
///   + gamma_kernel/2 ||kern||^2.
double deconv_objective(const Eigen::VectorXd& observation,
                        const DeconvModel& model, double gamma_signal,
                        double gamma_kernel);

class DeconvProblem : public LsProblem {
 public:
  DeconvProblem(const Eigen::VectorXd& observation, DeconvModel model,
                double gamma_signal, double gamma_kernel);

  Eigen::VectorXd target() const override;
  Eigen::VectorXd predict() const override;
  void inner_update(const Eigen::VectorXd& y_hat, double data_weight,
                    double gamma) override;
  double true_objective() const override;

  const DeconvModel& model() const { return model_; }

 private:
  Eigen::VectorXd observation_;
  DeconvModel model_;
  double gamma_signal_;
  double gamma_kernel_;
};

struct DeconvResult {
  DeconvModel model;
  RunTrace trace;
};

/// RE-driven blind deconvolution; x starts at the observation, the kernel
/// uniform. The variant chooses between the unit- and penalty-weighted data
/// term of the inner sweeps.
DeconvResult solve_deconv(const Eigen::VectorXd& observation, int kernel_len,
                          const Schedule& schedule, Variant variant,
                          double gamma_signal, double gamma_kernel,
                          int refine_iters = 100);

}  // namespace re
