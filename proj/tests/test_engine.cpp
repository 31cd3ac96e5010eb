#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "re/engine.hpp"
#include "re/quartic.hpp"

using re::expand_target;
using re::ExpansionState;
using re::update_residual;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

// Dense grid search over theta in [-3, 3]: independent global-minimum oracle.
double grid_search_minimum(const re::QuarticInstance& inst) {
  double best_theta = -3.0;
  double best = re::quartic_energy(inst, best_theta);
  for (int i = 1; i <= 600000; ++i) {
    const double theta = -3.0 + 6.0 * i / 600000.0;
    const double e = re::quartic_energy(inst, theta);
    if (e < best) {
      best = e;
      best_theta = theta;
    }
  }
  return best_theta;
}

}  // namespace

TEST_CASE("residual update") {
  ExpansionState state;
  state.r = vec({3.0});
  state.y_hat = vec({0.0});

  SUBCASE("momentum-free overwrites") {
    const auto next = update_residual(state, vec({2.0}), vec({1.0}), 1.0);
    CHECK(next.r(0) == doctest::Approx(1.0));
    CHECK(next.t == 1);
  }
  SUBCASE("converged fixed point") {
    state.r = vec({0.0});
    const auto next = update_residual(state, vec({5.0}), vec({5.0}), 0.7);
    CHECK(next.r(0) == doctest::Approx(0.0));
  }
  SUBCASE("half momentum") {
    state.r = vec({0.0});
    const auto next = update_residual(state, vec({2.0}), vec({0.0}), 0.5);
    CHECK(next.r(0) == doctest::Approx(1.0));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(update_residual(state, vec({1.0, 2.0}), vec({1.0}), 1.0),
                    re::dimension_error);
  }
}

TEST_CASE("target expansion") {
  CHECK(expand_target(vec({1.0, 0.0}), vec({1.0, 0.0}), 2.0)(0) ==
        doctest::Approx(3.0));
  CHECK(expand_target(vec({0.0}), vec({-1.0}), 1.0)(0) ==
        doctest::Approx(-1.0));
  const auto same = expand_target(vec({4.0, 5.0}), vec({9.0, 9.0}), 0.0);
  CHECK(same(0) == doctest::Approx(4.0));
  CHECK(same(1) == doctest::Approx(5.0));
  CHECK_THROWS_AS(expand_target(vec({1.0}), vec({1.0, 2.0}), 1.0),
                  re::dimension_error);
}

TEST_CASE("zero-residual fixed point leaves everything unchanged") {
  // y = f(theta) exactly at theta = 0.5.
  const re::QuarticInstance inst{0.25, 0.5};
  re::QuarticProblem problem(inst, 0.5);
  const auto schedule = re::make_schedule(0.2, 3);
  const auto trace = re::run_re(problem, schedule);
  CHECK(problem.theta() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(problem.true_objective() == doctest::Approx(0.0));
}

TEST_CASE("plain alternating sticks in the poor basin, RE escapes") {
  const re::QuarticInstance inst{1.0, 0.1};

  re::QuarticProblem plain(inst, -0.6);
  re::run_re(plain, re::make_schedule(1.0, 10));
  CHECK(plain.theta() == doctest::Approx(-0.6504879941551972).epsilon(1e-6));
  CHECK(plain.true_objective() == doctest::Approx(0.448).epsilon(1e-3));

  re::QuarticProblem expanded(inst, -0.6);
  re::run_re(expanded, re::make_schedule(0.1, 50));
  const double global_theta = grid_search_minimum(inst);
  CHECK(expanded.theta() == doctest::Approx(global_theta).epsilon(1e-4));
  CHECK(expanded.theta() == doctest::Approx(0.7526185717716956).epsilon(1e-6));
  CHECK(expanded.true_objective() == doctest::Approx(0.307).epsilon(1e-2));
}

TEST_CASE("trace shape") {
  const re::QuarticInstance inst{1.0, 0.1};
  re::QuarticProblem problem(inst, -0.6);
  const auto schedule = re::make_schedule(0.1, 25);
  const auto trace = re::run_re(problem, schedule);
  CHECK(trace.entries.size() >= 25);
  for (size_t i = 25; i < trace.entries.size(); ++i) {
    CHECK(trace.entries[i].mu == 1.0);
  }
  // Refinement phase never increases the true objective.
  for (size_t i = 26; i < trace.entries.size(); ++i) {
    CHECK(trace.entries[i].true_objective <=
          trace.entries[i - 1].true_objective + 1e-12);
  }
  CHECK(trace.converged);
}

TEST_CASE("variant equivalence at gamma=0") {
  const re::QuarticInstance inst{1.0, 0.1};
  const auto schedule = re::make_schedule(0.1, 40);
  re::QuarticProblem a(inst, -0.6);
  re::QuarticProblem b(inst, -0.6);
  re::RunOptions alg1;
  alg1.variant = re::Variant::kExpanded;
  re::RunOptions alg2;
  alg2.variant = re::Variant::kPenaltyWeighted;
  const auto trace_a = re::run_re(a, schedule, alg1);
  const auto trace_b = re::run_re(b, schedule, alg2);
  CHECK(std::abs(a.theta() - b.theta()) < 1e-10 * (1.0 + std::abs(a.theta())));
  REQUIRE(trace_a.entries.size() == trace_b.entries.size());
  for (size_t i = 0; i < trace_a.entries.size(); ++i) {
    CHECK(trace_a.entries[i].true_objective ==
          doctest::Approx(trace_b.entries[i].true_objective).epsilon(1e-10));
  }
}
