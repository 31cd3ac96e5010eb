#include "re/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace re {

Schedule make_schedule(double mu0, int ramp_length) {
  if (!(mu0 > 0.0) || mu0 > 1.0) {
    throw parameter_error("make_schedule: mu0 must be in (0, 1]");
  }
  if (ramp_length < 1) {
    throw parameter_error("make_schedule: ramp length must be >= 1");
  }
  Schedule s;
  s.mu0 = mu0;
  s.ramp_length = ramp_length;
  s.rho = std::exp(-std::log(mu0) / static_cast<double>(ramp_length));
  s.values.resize(static_cast<size_t>(ramp_length) + 1);
  double mu = mu0;
  for (int t = 0; t <= ramp_length; ++t) {
    s.values[static_cast<size_t>(t)] = mu;
    mu = std::min(s.rho * mu, 1.0);
  }
  // rho^T * mu0 == 1 analytically; pin the endpoint against roundoff.
  s.values.back() = 1.0;
  return s;
}

ReParams admm_params(double mu) {
  if (!(mu > 0.0)) {
    throw parameter_error("admm_params: mu must be positive");
  }
  return ReParams{(1.0 - mu) / mu, mu / (1.0 + mu)};
}

double stability_factor(const ReParams& params) {
  const double g = 1.0 - params.p - params.alpha * params.p;
  return g * g;
}

}  // namespace re
