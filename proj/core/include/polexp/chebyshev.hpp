#pragma once

#include <functional>
#include <span>
#include <vector>

namespace polexp {

/// Mobius map zhat = (z + sigma)/(z - sigma) for sigma < 0. Sends
/// [0, inf] to [-1, 1] with 0 -> -1, -sigma -> 0, inf -> 1, strictly
/// increasing in z.
double mobius_forward(double z, double sigma);

/// Inverse map z = -sigma*(1 + zhat)/(1 - zhat); zhat = 1 returns +inf.
double mobius_inverse(double zhat, double sigma);

/// The exponential target pulled back to [-1, 1]:
/// s(zhat) = exp(t*sigma*(1 + zhat)/(1 - zhat)), with the removable
/// singularity at zhat = 1 set to 0. Equals exp(-t*z) under the Mobius map.
struct TransformedExp {
  double t = 1.0;
  double sigma = -1.0;

  double operator()(double zhat) const;
};

/// Degree-n Chebyshev expansion sum c_k T_k(zhat) on [-1, 1]. When built
/// from TransformedExp it implicitly represents one rational approximant of
/// exp(-t z) with pole sigma of multiplicity n.
struct ChebSeries {
  std::vector<double> coeffs;  // c_0 ... c_n
  double sigma = 0.0;
  double t = 0.0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Chebyshev points of the second kind cos(j*pi/n), j = 0..n (descending
/// from 1 to -1). For n = 0 this is the single point {1}.
std::vector<double> cheb_nodes(int n);

/// Interpolation coefficients from samples taken at cheb_nodes(n), where
/// samples[j] = f(cos(j*pi/n)). Direct O(n^2) cosine sums.
std::vector<double> cheb_coeffs_direct(std::span<const double> samples);

/// Same coefficients through a type-I fast cosine transform. Falls back to
/// the direct sums when the library was built without FFTW.
std::vector<double> cheb_coeffs_fct(std::span<const double> samples);

/// Whether the fast transform path is backed by an actual FFT.
bool has_fast_transform();

/// Interpolant of f at the n+1 Chebyshev points of the second kind.
ChebSeries cheb_interp_coeffs(const std::function<double(double)>& f, int n);

/// Interpolant of the transformed exponential target; stamps (t, sigma).
ChebSeries rational_series(double t, double sigma, int n);

/// Clenshaw backward recurrence for sum c_k T_k(zhat), |zhat| <= 1.
double cheb_clenshaw(std::span<const double> coeffs, double zhat);
double cheb_eval(const ChebSeries& series, double zhat);

/// Sup-norm error estimate of the degree-n rational interpolant of
/// exp(-t z) on z >= 0: the maximum of |interpolant - target| over
/// grid_size Chebyshev-distributed points of [-1, 1]. Equivalently, the
/// worst error over a diagonal matrix with dense spectrum on [0, inf].
double scalar_sup_error(int n, double sigma, double t, int grid_size = 10000);

}  // namespace polexp
