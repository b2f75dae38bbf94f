#include "polexp/pole_optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "polexp/rate_function.hpp"

namespace polexp {

double find_qhat(const TimeInterval& interval) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (interval.degenerate()) return inv_sqrt2 / interval.t_min();

  // F(q) = rate_h(q*t_max) - rate_h(q*t_min) changes sign exactly once on
  // [1/(sqrt(2)*t_max), 1/(sqrt(2)*t_min)]: at the left end q*t_max sits at
  // the minimum of rate_h, so F <= 0; at the right end q*t_min does, so
  // F >= 0.
  double lo = inv_sqrt2 / interval.t_max();
  double hi = inv_sqrt2 / interval.t_min();
  if (hi - lo <= 1e-14 * hi) return std::sqrt(lo * hi);

  auto f = [&](double q) {
    return rate_h(q * interval.t_max()) - rate_h(q * interval.t_min());
  };
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PoleConfig pole_location(int n, const TimeInterval& interval) {
  if (n < 1) throw std::domain_error("pole_location: need n >= 1");
  const double qhat = find_qhat(interval);
  return PoleConfig{n, qhat, -static_cast<double>(n) * qhat};
}

double predicted_rate(const TimeInterval& interval) {
  return rate_g(find_qhat(interval), interval);
}

}  // namespace polexp
