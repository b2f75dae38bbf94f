#include "polexp/matrix_eval.hpp"

#include <cmath>
#include <stdexcept>

#include "polexp/chebyshev.hpp"
#include "polexp/parallel.hpp"

namespace polexp {

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

FamilyEvalResult cheb_family_eval(const SpdOperator& a, std::span<const double> b, double sigma,
                                  int n, std::span<const double> times) {
  if (b.size() != static_cast<std::size_t>(a.dim())) {
    throw std::domain_error("cheb_family_eval: dimension mismatch");
  }
  if (n < 0) throw std::domain_error("cheb_family_eval: need n >= 0");
  if (!(norm2(b) > 0.0)) throw std::domain_error("cheb_family_eval: need nonzero b");

  const SpdFactor factor = spd_factorize(a, sigma);
  const std::size_t dim = b.size();

  // Ahat x = (A + sigma I) (A - sigma I)^{-1} x; each application is one
  // solve plus one matvec.
  auto apply_ahat = [&](const std::vector<double>& x) {
    std::vector<double> u = factor.solve(x);
    std::vector<double> y = a.apply(u);
    for (std::size_t i = 0; i < dim; ++i) y[i] += sigma * u[i];
    return y;
  };

  std::vector<std::vector<double>> basis;
  basis.reserve(static_cast<std::size_t>(n) + 1);
  basis.emplace_back(b.begin(), b.end());
  if (n >= 1) basis.push_back(apply_ahat(basis[0]));
  for (int k = 1; k < n; ++k) {
    std::vector<double> next = apply_ahat(basis[static_cast<std::size_t>(k)]);
    const std::vector<double>& prev = basis[static_cast<std::size_t>(k) - 1];
    for (std::size_t i = 0; i < dim; ++i) next[i] = 2.0 * next[i] - prev[i];
    basis.push_back(std::move(next));
  }

  FamilyEvalResult result;
  result.method = EvalMethod::ChebRecurrence;
  result.times.assign(times.begin(), times.end());
  result.vectors.assign(times.size(), {});
  parallel_for(times.size(), [&](std::size_t j) {
    const ChebSeries series = rational_series(times[j], sigma, n);
    std::vector<double> acc(dim, 0.0);
    for (int k = 0; k <= n; ++k) {
      const double c = series.coeffs[static_cast<std::size_t>(k)];
      const std::vector<double>& w = basis[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < dim; ++i) acc[i] += c * w[i];
    }
    result.vectors[j] = std::move(acc);
  });
  result.solves_performed = factor.solve_count();
  return result;
}

LanczosDecomp lanczos_si_build(const SpdOperator& a, std::span<const double> b, double sigma,
                               int n) {
  if (b.size() != static_cast<std::size_t>(a.dim())) {
    throw std::domain_error("lanczos_si_build: dimension mismatch");
  }
  if (n < 1) throw std::domain_error("lanczos_si_build: need n >= 1");
  const double bnorm = norm2(b);
  if (!(bnorm > 0.0)) throw std::domain_error("lanczos_si_build: need nonzero b");

  const SpdFactor factor = spd_factorize(a, sigma);
  const std::size_t dim = b.size();

  LanczosDecomp decomp;
  decomp.dim = static_cast<int>(dim);
  decomp.b_norm = bnorm;
  decomp.basis.reserve(static_cast<std::size_t>(n) * dim);

  std::vector<double> v(b.begin(), b.end());
  for (double& x : v) x /= bnorm;
  decomp.basis.insert(decomp.basis.end(), v.begin(), v.end());
  decomp.size = 1;

  const double breakdown_tol = 1e-14 * bnorm;

  for (int k = 0; k < n; ++k) {
    std::vector<double> u = factor.solve(std::span<const double>(
        decomp.basis.data() + static_cast<std::size_t>(k) * dim, dim));

    // Full reorthogonalization: two Gram-Schmidt passes against all columns.
    double alpha_k = 0.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j <= k; ++j) {
        const double* col = decomp.basis.data() + static_cast<std::size_t>(j) * dim;
        double dot = 0.0;
        for (std::size_t i = 0; i < dim; ++i) dot += col[i] * u[i];
        for (std::size_t i = 0; i < dim; ++i) u[i] -= dot * col[i];
        if (j == k) alpha_k += dot;
      }
    }
    decomp.alpha.push_back(alpha_k);

    const double beta_k = norm2(u);
    if (beta_k < breakdown_tol) {
      // The Krylov space is (numerically) invariant.
      decomp.h_next = beta_k;
      decomp.v_next.assign(dim, 0.0);
      decomp.breakdown = k + 1 < n;
      decomp.solves_performed = factor.solve_count();
      return decomp;
    }
    for (double& x : u) x /= beta_k;

    if (k + 1 < n) {
      decomp.beta.push_back(beta_k);
      decomp.basis.insert(decomp.basis.end(), u.begin(), u.end());
      decomp.size = k + 2;
    } else {
      decomp.h_next = beta_k;
      decomp.v_next = std::move(u);
    }
  }

  decomp.solves_performed = factor.solve_count();
  return decomp;
}

std::vector<double> lanczos_si_eval(const LanczosDecomp& decomp, double sigma, double t) {
  const std::size_t k = static_cast<std::size_t>(decomp.size);
  const std::size_t dim = static_cast<std::size_t>(decomp.dim);
  if (k == 0) throw std::domain_error("lanczos_si_eval: empty decomposition");

  std::vector<double> e1(k, 0.0);
  e1[0] = decomp.b_norm;
  const std::vector<double> y = expm_shifted_inverse_action(
      std::span<const double>(decomp.alpha.data(), k),
      std::span<const double>(decomp.beta.data(), k - 1), sigma, t, e1);

  std::vector<double> out(dim, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    const double* col = decomp.basis.data() + j * dim;
    for (std::size_t i = 0; i < dim; ++i) out[i] += y[j] * col[i];
  }
  return out;
}

FamilyEvalResult lanczos_family_eval(const SpdOperator& a, std::span<const double> b,
                                     double sigma, int n, std::span<const double> times) {
  const LanczosDecomp decomp = lanczos_si_build(a, b, sigma, n);
  FamilyEvalResult result;
  result.method = EvalMethod::ShiftInvertKrylov;
  result.times.assign(times.begin(), times.end());
  result.vectors.assign(times.size(), {});
  parallel_for(times.size(), [&](std::size_t j) {
    result.vectors[j] = lanczos_si_eval(decomp, sigma, times[j]);
  });
  result.solves_performed = decomp.solves_performed;
  return result;
}

}  // namespace polexp
