#include "polexp/rate_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polexp {

namespace {

double cubic_residual(double q, double x) { return q * x * (x * x - 1.0) + 1.0; }
double cubic_derivative(double q, double x) { return q * (3.0 * x * x - 1.0); }

double newton_polish(double q, double x) {
  const double f = cubic_residual(q, x);
  const double df = cubic_derivative(q, x);
  if (df != 0.0 && std::isfinite(f / df)) x -= f / df;
  return x;
}

}  // namespace

double rate_critical_q() { return 1.5 * std::sqrt(3.0); }

double rate_critical_value() { return (2.0 - std::sqrt(3.0)) * std::exp(0.5 * std::sqrt(3.0)); }

double cubic_negative_real_root(double q) {
  if (!(q > 0.0) || !(q < rate_critical_q())) {
    throw std::domain_error("cubic_negative_real_root: need 0 < q < 3*sqrt(3)/2");
  }
  // Depressed cubic m^3 - m + 1/q = 0 with positive discriminant
  // 1/(4q^2) - 1/27: exactly one real root, and it is negative.
  const double s = 0.5 / q;
  const double disc = s * s - 1.0 / 27.0;
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double a = std::cbrt(-s + sq);
  const double b = std::cbrt(-s - sq);
  double m = a + b;
  m = newton_polish(q, m);
  return m;
}

double cubic_smallest_positive_root(double q) {
  if (!(q > rate_critical_q()) || !std::isfinite(q)) {
    throw std::domain_error("cubic_smallest_positive_root: need q > 3*sqrt(3)/2");
  }
  // g1(x) = x^3 - x decreases on (0, 1/sqrt(3)) from 0 to -2/(3*sqrt(3)),
  // crossing -1/q exactly once.
  double lo = 0.0;
  double hi = 1.0 / std::sqrt(3.0);
  for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (cubic_residual(q, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  x = newton_polish(q, x);
  x = newton_polish(q, x);
  return x;
}

namespace {

// h-tilde(m): the rate written in terms of the negative real root.
double rate_from_m(double m) {
  return std::sqrt((m + 1.0) / (m - 1.0)) *
         std::exp((m * m - 2.0) / (2.0 * m * (m * m - 1.0)));
}

// phi(x): the rate written in terms of the smallest positive root.
double rate_from_positive_root(double x) {
  return (1.0 - x) / (1.0 + x) * std::exp(x / (1.0 - x * x));
}

}  // namespace

RateEval rate_eval(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw std::domain_error("rate_h: need finite q > 0");
  }
  const double qc = rate_critical_q();
  RateEval out;
  out.q = q;
  if (q < qc * (1.0 - kCriticalBandRel)) {
    out.branch = RateBranch::RealM;
    out.value = rate_from_m(cubic_negative_real_root(q));
  } else if (q > qc * (1.0 + kCriticalBandRel)) {
    out.branch = RateBranch::PositiveRoot;
    out.value = rate_from_positive_root(cubic_smallest_positive_root(q));
  } else {
    out.branch = RateBranch::Critical;
    out.value = rate_critical_value();
  }
  return out;
}

double rate_h(double q) { return rate_eval(q).value; }

double rate_g(double q, const TimeInterval& interval) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw std::domain_error("rate_g: need finite q > 0");
  }
  return std::max(rate_h(q * interval.t_min()), rate_h(q * interval.t_max()));
}

}  // namespace polexp
