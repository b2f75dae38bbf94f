#pragma once

#include "polexp/time_interval.hpp"

namespace polexp {

/// Degree-n family of rational approximants sharing one real pole of
/// multiplicity n at sigma = -n*q.
struct PoleConfig {
  int n = 0;
  double q = 0.0;
  double sigma = 0.0;  // -n*q

  double gamma() const { return -1.0 / sigma; }  // (n*q)^{-1}
};

/// The unique q > 0 equalizing the rate at both interval endpoints,
/// rate_h(q*t_min) = rate_h(q*t_max); this minimizes rate_g(., interval).
/// A degenerate interval returns the closed form 1/(sqrt(2)*t_min).
double find_qhat(const TimeInterval& interval);

/// Asymptotically optimal concentrated pole for degree n over the interval.
PoleConfig pole_location(int n, const TimeInterval& interval);

/// rate_g at the optimal q, the predicted asymptotic convergence rate.
double predicted_rate(const TimeInterval& interval);

}  // namespace polexp
