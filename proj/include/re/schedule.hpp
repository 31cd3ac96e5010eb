#pragma once

#include <stdexcept>
#include <vector>

namespace re {

/// Geometric penalty ramp mu(t+1) = min(rho*mu(t), 1) with mu(T) = 1.
struct Schedule {
  double mu0 = 1.0;
  int ramp_length = 1;   // T
  double rho = 1.0;
  std::vector<double> values;  // mu(t) for t = 0..T
};

/// Expansion magnitude and residual-momentum weight of one outer iteration.
struct ReParams {
  double alpha = 0.0;  // expansion magnitude, >= 0
  double p = 1.0;      // momentum weight, in (0, 1]
};

Schedule make_schedule(double mu0, int ramp_length);

/// Penalty -> (alpha, p) mapping: alpha = (1-mu)/mu, p = mu/(1+mu).
ReParams admm_params(double mu);

/// (1 - p - alpha*p)^2; values > 1 indicate an unstable parameter pair.
double stability_factor(const ReParams& params);

class parameter_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace re
