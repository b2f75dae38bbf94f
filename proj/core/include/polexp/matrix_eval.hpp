#pragma once

#include <span>
#include <vector>

#include "polexp/linalg.hpp"

namespace polexp {

enum class EvalMethod { ChebRecurrence, ShiftInvertKrylov };

/// Approximations to exp(-t*A)*b for every t in times. Whatever the number
/// of time points, producing them costs exactly n shifted solves with the
/// single factorization of A - sigma*I.
struct FamilyEvalResult {
  std::vector<double> times;
  std::vector<std::vector<double>> vectors;
  EvalMethod method = EvalMethod::ChebRecurrence;
  long solves_performed = 0;
};

/// Rational Chebyshev interpolation scheme: runs the three-term recurrence
/// w_{k+1} = 2*Ahat*w_k - w_{k-1} with Ahat = (A + sigma I)(A - sigma I)^{-1}
/// (n solves against one cached Cholesky factor), then sums the basis with
/// per-time interpolation coefficients. The basis is retained so adding time
/// points costs no further solves.
FamilyEvalResult cheb_family_eval(const SpdOperator& a, std::span<const double> b, double sigma,
                                  int n, std::span<const double> times);

LanczosDecomp lanczos_si_build(const SpdOperator& a, std::span<const double> b, double sigma,
                               int n);

/// Krylov approximation to exp(-t*A)*b from a built decomposition:
/// V * exp(-t*(H^{-1} + sigma I)) * (||b|| e_1). No solves are needed per
/// time point.
std::vector<double> lanczos_si_eval(const LanczosDecomp& decomp, double sigma, double t);

/// Convenience wrapper running lanczos_si_build once and evaluating the
/// whole time grid.
FamilyEvalResult lanczos_family_eval(const SpdOperator& a, std::span<const double> b,
                                     double sigma, int n, std::span<const double> times);

}  // namespace polexp
