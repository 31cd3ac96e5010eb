#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "doctest.h"
#include "re/deconv.hpp"
#include "re/synthetic.hpp"

using re::DeconvModel;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("identity kernel is a no-op") {
  const auto x = re::gen_piecewise_signal(32, 4, 1);
  const auto out = re::circular_convolve(x, vec({1.0}));
  CHECK((out - x).norm() == doctest::Approx(0.0));
}

TEST_CASE("convolution is linear") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  const auto x = re::gen_piecewise_signal(24, 3, 3);
  const auto y = re::gen_piecewise_signal(24, 5, 4);
  const auto kern = re::gaussian_kernel(5, 1.2);
  const double a = ud(rng);
  const double b = ud(rng);
  const Eigen::VectorXd lhs = re::circular_convolve(a * x + b * y, kern);
  const Eigen::VectorXd rhs = a * re::circular_convolve(x, kern) +
                              b * re::circular_convolve(y, kern);
  CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("hand-enumerated 4-point convolution") {
  const auto out =
      re::circular_convolve(vec({1, 2, 3, 4}), vec({0.5, 0.5}));
  CHECK(out(0) == doctest::Approx(2.5));
  CHECK(out(1) == doctest::Approx(1.5));
  CHECK(out(2) == doctest::Approx(2.5));
  CHECK(out(3) == doctest::Approx(3.5));
}

TEST_CASE("kernel longer than the signal is rejected") {
  CHECK_THROWS(re::circular_convolve(vec({1, 2}), vec({1, 0, 0})));
}

TEST_CASE("simplex projection") {
  const auto p = re::project_simplex(vec({0.4, 0.3, 0.3}));
  CHECK((p - vec({0.4, 0.3, 0.3})).norm() < 1e-12);  // already feasible
  const auto q = re::project_simplex(vec({2.0, -1.0, 0.0}));
  CHECK(q.sum() == doctest::Approx(1.0));
  CHECK(q.minCoeff() >= 0.0);
  CHECK(q(0) == doctest::Approx(1.0));
}

TEST_CASE("ground truth with no regularization is a fixed point") {
  const auto x = re::gen_piecewise_signal(48, 6, 5);
  const auto kern = vec({0.6, 0.3, 0.1});
  const Eigen::VectorXd y = re::circular_convolve(x, kern);
  DeconvModel model{x, kern};
  re::deconv_step(y, model, 1.0, 0.0, 0.0);
  CHECK((model.signal - x).lpNorm<Eigen::Infinity>() < 1e-8);
  CHECK((model.kernel - kern).lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("signal solve matches the dense normal-equations oracle") {
  const int n = 48;
  const auto truth = re::gen_piecewise_signal(n, 6, 7);
  const auto kern = re::gaussian_kernel(7, 1.5);
  const Eigen::VectorXd y = re::circular_convolve(truth, kern);
  const double mu = 0.7;
  const double gx = 0.05;

  DeconvModel model{Eigen::VectorXd::Zero(n), kern};
  re::deconv_step(y, model, mu, gx, 0.1, /*project_kernel=*/false);

  // Oracle: explicit matrices, full-pivot LU solve.
  Eigen::MatrixXd k_mat = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < kern.size(); ++j) {
      k_mat(i, ((i - j) % n + n) % n) += kern(j);
    }
  }
  Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    d2(i, (i + n - 1) % n) += 1.0;
    d2(i, i) -= 2.0;
    d2(i, (i + 1) % n) += 1.0;
  }
  const Eigen::MatrixXd lhs =
      mu * k_mat.transpose() * k_mat + gx * d2.transpose() * d2;
  const Eigen::VectorXd oracle =
      Eigen::FullPivLU<Eigen::MatrixXd>(lhs).solve(mu * k_mat.transpose() * y);
  CHECK((model.signal - oracle).lpNorm<Eigen::Infinity>() < 1e-8);

  // First-order optimality of the returned signal.
  const Eigen::VectorXd grad = mu * k_mat.transpose() * (k_mat * model.signal - y) +
                               gx * d2.transpose() * d2 * model.signal;
  CHECK(grad.lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("data-weight scaling identity") {
  const int n = 32;
  const auto truth = re::gen_piecewise_signal(n, 4, 9);
  const auto kern = re::gaussian_kernel(5, 1.0);
  const Eigen::VectorXd y = re::circular_convolve(truth, kern);
  const double mu = 0.3;

  DeconvModel a{y, Eigen::VectorXd::Constant(5, 0.2)};
  DeconvModel b = a;
  re::deconv_step(y, a, mu, 0.02, 0.01);
  re::deconv_step(y, b, 1.0, 0.02 / mu, 0.01 / mu);
  CHECK((a.signal - b.signal).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK((a.kernel - b.kernel).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("kernel stays on the simplex after every step") {
  const int n = 64;
  const auto truth = re::gen_piecewise_signal(n, 8, 11);
  const auto kern = re::gaussian_kernel(9, 2.0);
  Eigen::VectorXd y = re::circular_convolve(truth, kern);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> noise(0.0, 0.01);
  for (int i = 0; i < n; ++i) y(i) += noise(rng);

  DeconvModel model{y, Eigen::VectorXd::Constant(9, 1.0 / 9)};
  for (int it = 0; it < 20; ++it) {
    re::deconv_step(y, model, 1.0, 0.01, 0.005);
    CHECK(model.kernel.minCoeff() >= 0.0);
    CHECK(model.kernel.sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("plain alternating without projection is monotone") {
  const int n = 48;
  const auto truth = re::gen_piecewise_signal(n, 6, 13);
  const auto kern = re::gaussian_kernel(7, 1.5);
  const Eigen::VectorXd y = re::circular_convolve(truth, kern);
  const double gx = 0.01;
  const double gk = 0.005;

  DeconvModel model{y, Eigen::VectorXd::Constant(7, 1.0 / 7)};
  double prev = re::deconv_objective(y, model, gx, gk);
  for (int it = 0; it < 25; ++it) {
    re::deconv_step(y, model, 1.0, gx, gk, /*project_kernel=*/false);
    const double obj = re::deconv_objective(y, model, gx, gk);
    CHECK(obj <= prev + 1e-12);
    prev = obj;
  }
}

TEST_CASE("mu0 = 1 makes both variants coincide") {
  const int n = 48;
  const auto truth = re::gen_piecewise_signal(n, 6, 15);
  const auto kern = re::gaussian_kernel(7, 1.5);
  const Eigen::VectorXd y = re::circular_convolve(truth, kern);

  const auto schedule = re::make_schedule(1.0, 20);
  const auto a = re::solve_deconv(y, 7, schedule, re::Variant::kExpanded,
                                  0.01, 0.005, 20);
  const auto b = re::solve_deconv(y, 7, schedule,
                                  re::Variant::kPenaltyWeighted, 0.01, 0.005,
                                  20);
  CHECK((a.model.signal - b.model.signal).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK((a.model.kernel - b.model.kernel).lpNorm<Eigen::Infinity>() < 1e-10);
}
