#pragma once

#include <functional>
#include <vector>

#include "polexp/chebyshev.hpp"
#include "polexp/time_interval.hpp"

namespace polexp {

/// Best uniform polynomial approximation on [-1, 1] from the Remez
/// exchange. The reference holds the n+2 equioscillation points of the last
/// solved system, so |f - p| equals leveled_error at each of them up to
/// rounding, with alternating signs.
struct MinimaxResult {
  std::vector<double> coeffs;     // Chebyshev basis, length n+1
  double leveled_error = 0.0;     // |h|
  std::vector<double> reference;  // n+2 strictly increasing points
  int iterations = 0;
  bool converged = false;

  /// Values this small are dominated by double-precision rounding noise and
  /// should not be trusted beyond their order of magnitude.
  bool at_noise_floor() const { return leveled_error < 1e-14; }
};

/// Per-time best errors over a time grid and their maximum.
struct ErrorProfile {
  std::vector<double> times;
  std::vector<double> errors;
  double sup = 0.0;
  bool all_converged = true;  // every per-time Remez solve converged
};

/// The scalar target of the equivalent polynomial problem: approximating
/// exp(-t z) on z >= 0 by rationals with an n-fold pole at sigma equals
/// approximating this function on [-1, 1] by degree-n polynomials.
TransformedExp transformed_target(double t, double sigma);

/// Second Remez exchange algorithm. Iterates reference solves and
/// multi-point exchanges until the fine-grid error exceeds the leveled
/// error by at most 1e-12 relative (plus an absolute rounding-noise
/// allowance), capped at 50 iterations.
MinimaxResult remez_best_poly(const std::function<double(double)>& f, int n);

/// Best approximation of exp(-t z) on z >= 0 by degree-n rationals with an
/// n-fold pole at -n*q, as the polynomial problem's full result. Degree 0
/// has no pole and returns the best constant 1/2 directly.
MinimaxResult best_poly_at(int n, double q, double t);

/// Leveled error of best_poly_at.
double best_error_at(int n, double q, double t);

/// Time-uniform best error over a log-spaced time grid (41 points by
/// default, a degenerate interval collapses to one point).
ErrorProfile time_uniform_error(int n, double q, const TimeInterval& interval,
                                int grid_size = 41);

struct QStarResult {
  double q_star = 0.0;
  double rho_star = 0.0;
  bool all_converged = true;
};

/// Numerically optimal pole scale: golden-section minimization of
/// q -> time_uniform_error(n, q, interval).sup over log q, starting from
/// the bracket [qhat/4, 4*qhat].
QStarResult find_qstar(int n, const TimeInterval& interval);

}  // namespace polexp
