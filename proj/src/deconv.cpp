#include "re/deconv.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <stdexcept>
#include <vector>

namespace re {

namespace {

// Dense circulant operator: (K x)_i = sum_j kern_j x_{(i-j) mod n}.
Eigen::MatrixXd convolution_matrix(const Eigen::VectorXd& kernel, int n) {
  const int len = static_cast<int>(kernel.size());
  Eigen::MatrixXd k_mat = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < len; ++j) {
      k_mat(i, ((i - j) % n + n) % n) += kernel(j);
    }
  }
  return k_mat;
}

// Circular second-difference operator.
Eigen::MatrixXd second_difference(int n) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    d(i, (i + n - 1) % n) += 1.0;
    d(i, i) -= 2.0;
    d(i, (i + 1) % n) += 1.0;
  }
  return d;
}

// Design matrix for the kernel solve: A(i, j) = x_{(i-j) mod n}.
Eigen::MatrixXd kernel_design(const Eigen::VectorXd& signal, int len) {
  const int n = static_cast<int>(signal.size());
  Eigen::MatrixXd a(n, len);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < len; ++j) {
      a(i, j) = signal(((i - j) % n + n) % n);
    }
  }
  return a;
}

}  // namespace

Eigen::VectorXd circular_convolve(const Eigen::VectorXd& signal,
                                  const Eigen::VectorXd& kernel) {
  const int n = static_cast<int>(signal.size());
  const int len = static_cast<int>(kernel.size());
  if (len > n) {
    throw std::invalid_argument("circular_convolve: kernel longer than signal");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < len; ++j) {
      acc += kernel(j) * signal(((i - j) % n + n) % n);
    }
    out(i) = acc;
  }
  return out;
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0;
  double tau = 0.0;
  int rho = 0;
  for (int j = 0; j < n; ++j) {
    cumsum += u[static_cast<size_t>(j)];
    const double t = (cumsum - 1.0) / (j + 1);
    if (u[static_cast<size_t>(j)] - t > 0.0) {
      rho = j + 1;
      tau = t;
    }
  }
  (void)rho;
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    out(i) = std::max(v(i) - tau, 0.0);
  }
  return out;
}

void deconv_step(const Eigen::VectorXd& y_hat, DeconvModel& model,
                 double data_weight, double gamma_signal, double gamma_kernel,
                 bool project_kernel) {
  const int n = static_cast<int>(model.signal.size());
  const int len = static_cast<int>(model.kernel.size());

  // Signal solve: (w K^T K + g_x D2^T D2) x = w K^T y_hat.
  const Eigen::MatrixXd k_mat = convolution_matrix(model.kernel, n);
  Eigen::MatrixXd lhs = data_weight * k_mat.transpose() * k_mat;
  if (gamma_signal > 0.0) {
    const Eigen::MatrixXd d2 = second_difference(n);
    lhs += gamma_signal * d2.transpose() * d2;
  }
  model.signal = Eigen::LDLT<Eigen::MatrixXd>(lhs).solve(
      data_weight * k_mat.transpose() * y_hat);

  // Kernel solve: (w A^T A + g_k I) kern = w A^T y_hat.
  const Eigen::MatrixXd a = kernel_design(model.signal, len);
  Eigen::MatrixXd lhs_k = data_weight * a.transpose() * a;
  lhs_k.diagonal().array() += gamma_kernel;
  model.kernel = Eigen::LDLT<Eigen::MatrixXd>(lhs_k).solve(
      data_weight * a.transpose() * y_hat);
  if (project_kernel) {
    model.kernel = project_simplex(model.kernel);
  }
}

double deconv_objective(const Eigen::VectorXd& observation,
                        const DeconvModel& model, double gamma_signal,
                        double gamma_kernel) {
  const Eigen::VectorXd residual =
      observation - circular_convolve(model.signal, model.kernel);
  double obj = 0.5 * residual.squaredNorm();
  if (gamma_signal > 0.0) {
    const int n = static_cast<int>(model.signal.size());
    const Eigen::VectorXd d2x = second_difference(n) * model.signal;
    obj += 0.5 * gamma_signal * d2x.squaredNorm();
  }
  obj += 0.5 * gamma_kernel * model.kernel.squaredNorm();
  return obj;
}

DeconvProblem::DeconvProblem(const Eigen::VectorXd& observation,
                             DeconvModel model, double gamma_signal,
                             double gamma_kernel)
    : observation_(observation),
      model_(std::move(model)),
      gamma_signal_(gamma_signal),
      gamma_kernel_(gamma_kernel) {}

Eigen::VectorXd DeconvProblem::target() const { return observation_; }

Eigen::VectorXd DeconvProblem::predict() const {
  return circular_convolve(model_.signal, model_.kernel);
}

void DeconvProblem::inner_update(const Eigen::VectorXd& y_hat,
                                 double data_weight, double gamma) {
  deconv_step(y_hat, model_, data_weight, gamma * gamma_signal_,
              gamma * gamma_kernel_);
}

double DeconvProblem::true_objective() const {
  return deconv_objective(observation_, model_, gamma_signal_, gamma_kernel_);
}

DeconvResult solve_deconv(const Eigen::VectorXd& observation, int kernel_len,
                          const Schedule& schedule, Variant variant,
                          double gamma_signal, double gamma_kernel,
                          int refine_iters) {
  DeconvModel model;
  model.signal = observation;
  model.kernel = Eigen::VectorXd::Constant(kernel_len, 1.0 / kernel_len);
  DeconvProblem problem(observation, std::move(model), gamma_signal,
                        gamma_kernel);
  RunOptions options;
  options.variant = variant;
  options.gamma = 1.0;
  options.refine_iters = refine_iters;
  RunTrace trace = run_re(problem, schedule, options);
  return DeconvResult{problem.model(), std::move(trace)};
}

}  // namespace re
