#pragma once

#include "polexp/time_interval.hpp"

namespace polexp {

/// Branch of the cubic q(z^3 - z) + 1 = 0 used to evaluate the asymptotic
/// rate function. The discriminant 1/(4q^2) - 1/27 changes sign at
/// q = 3*sqrt(3)/2; within a narrow relative band around that point the
/// closed-form continuity value is used because both branch formulas lose
/// accuracy there.
enum class RateBranch {
  RealM,         // q < 3*sqrt(3)/2: one negative real root m <= -2/sqrt(3)
  Critical,      // |q - 3*sqrt(3)/2| within the critical band
  PositiveRoot,  // q > 3*sqrt(3)/2: three real roots, smallest positive used
};

struct RateEval {
  double q = 0.0;
  RateBranch branch = RateBranch::RealM;
  double value = 0.0;
};

/// q = 3*sqrt(3)/2, where the cubic discriminant vanishes.
double rate_critical_q();

/// Rate function value at the critical point: (2 - sqrt(3)) * exp(sqrt(3)/2).
double rate_critical_value();

/// Relative half-width of the band around rate_critical_q() treated as
/// critical.
inline constexpr double kCriticalBandRel = 1e-9;

/// Negative real root m of q*m*(m^2 - 1) = -1 for 0 < q < 3*sqrt(3)/2.
/// Cardano closed form with real cube roots, one Newton polish step.
/// Returns m <= -2/sqrt(3).
double cubic_negative_real_root(double q);

/// Smallest positive root of q*(x^3 - x) + 1 = 0 for q > 3*sqrt(3)/2,
/// located by bisection on (0, 1/sqrt(3)) and polished by Newton.
double cubic_smallest_positive_root(double q);

/// Asymptotic n-th-root convergence rate of best approximation with a
/// concentrated pole at -n*q (single time point t = 1). Lies in
/// [sqrt(2)-1, 1) for finite q > 0, with the minimum attained at
/// q = 1/sqrt(2).
double rate_h(double q);

/// Full evaluation with the branch that was taken.
RateEval rate_eval(double q);

/// Time-uniform rate over the interval: sup of rate_h on [q*t_min, q*t_max].
/// The rate function decreases then increases, so the supremum is at an
/// endpoint.
double rate_g(double q, const TimeInterval& interval);

}  // namespace polexp
