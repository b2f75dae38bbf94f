#include "polexp/chebyshev.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>

#ifdef POLEXP_HAVE_FFTW
#include <fftw3.h>
#endif

namespace polexp {

double mobius_forward(double z, double sigma) {
  if (std::isnan(z) || z < 0.0) throw std::domain_error("mobius_forward: need z >= 0");
  if (std::isinf(z)) return 1.0;
  return (z + sigma) / (z - sigma);
}

double mobius_inverse(double zhat, double sigma) {
  if (!(zhat >= -1.0) || !(zhat <= 1.0)) {
    throw std::domain_error("mobius_inverse: need zhat in [-1, 1]");
  }
  if (zhat == 1.0) return std::numeric_limits<double>::infinity();
  return -sigma * (1.0 + zhat) / (1.0 - zhat);
}

double TransformedExp::operator()(double zhat) const {
  if (zhat >= 1.0) return 0.0;
  return std::exp(t * sigma * (1.0 + zhat) / (1.0 - zhat));
}

std::vector<double> cheb_nodes(int n) {
  if (n < 0) throw std::domain_error("cheb_nodes: need n >= 0");
  std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
  if (n == 0) {
    nodes[0] = 1.0;
    return nodes;
  }
  for (int j = 0; j <= n; ++j) {
    nodes[static_cast<std::size_t>(j)] = std::cos(std::numbers::pi * j / n);
  }
  nodes[0] = 1.0;
  nodes[static_cast<std::size_t>(n)] = -1.0;
  if (n % 2 == 0) nodes[static_cast<std::size_t>(n) / 2] = 0.0;
  return nodes;
}

std::vector<double> cheb_coeffs_direct(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("cheb_coeffs_direct: empty samples");
  const int n = static_cast<int>(samples.size()) - 1;
  std::vector<double> coeffs(samples.size(), 0.0);
  if (n == 0) {
    coeffs[0] = samples[0];
    return coeffs;
  }
  // c_k = (2/n) * sum'' v_j cos(pi j k / n), first/last terms halved,
  // and c_0, c_n halved once more. Angles reduced mod 2n to keep the cosine
  // argument bounded.
  for (int k = 0; k <= n; ++k) {
    double sum = 0.5 * (samples[0] + (k % 2 == 0 ? 1.0 : -1.0) * samples[static_cast<std::size_t>(n)]);
    for (int j = 1; j < n; ++j) {
      const int phase = (j * k) % (2 * n);
      sum += samples[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * phase / n);
    }
    const double scale = (k == 0 || k == n) ? 1.0 / n : 2.0 / n;
    coeffs[static_cast<std::size_t>(k)] = scale * sum;
  }
  return coeffs;
}

#ifdef POLEXP_HAVE_FFTW
namespace {
// FFTW plan creation/destruction is not thread-safe.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

bool has_fast_transform() { return true; }

std::vector<double> cheb_coeffs_fct(std::span<const double> samples) {
  if (samples.empty()) throw std::domain_error("cheb_coeffs_fct: empty samples");
  const int n = static_cast<int>(samples.size()) - 1;
  if (n == 0) return {samples[0]};

  std::vector<double> in(samples.begin(), samples.end());
  std::vector<double> out(samples.size());
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_plan plan = fftw_plan_r2r_1d(n + 1, in.data(), out.data(), FFTW_REDFT00, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  // REDFT00: Y_k = X_0 + (-1)^k X_n + 2 sum_{j=1}^{n-1} X_j cos(pi j k / n).
  std::vector<double> coeffs(samples.size());
  for (int k = 0; k <= n; ++k) {
    const double scale = (k == 0 || k == n) ? 0.5 / n : 1.0 / n;
    coeffs[static_cast<std::size_t>(k)] = scale * out[static_cast<std::size_t>(k)];
  }
  return coeffs;
}
#else
bool has_fast_transform() { return false; }

std::vector<double> cheb_coeffs_fct(std::span<const double> samples) {
  return cheb_coeffs_direct(samples);
}
#endif

ChebSeries cheb_interp_coeffs(const std::function<double(double)>& f, int n) {
  if (n < 0) throw std::domain_error("cheb_interp_coeffs: need n >= 0");
  const std::vector<double> nodes = cheb_nodes(n);
  std::vector<double> samples(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double v = f(nodes[j]);
    if (!std::isfinite(v)) {
      throw std::domain_error("cheb_interp_coeffs: target not finite at a node");
    }
    samples[j] = v;
  }
  // Plan setup makes the fast transform worthwhile only from medium sizes.
  ChebSeries series;
  series.coeffs = (has_fast_transform() && n >= 32) ? cheb_coeffs_fct(samples)
                                                    : cheb_coeffs_direct(samples);
  return series;
}

ChebSeries rational_series(double t, double sigma, int n) {
  ChebSeries series = cheb_interp_coeffs(TransformedExp{t, sigma}, n);
  series.sigma = sigma;
  series.t = t;
  return series;
}

double cheb_clenshaw(std::span<const double> coeffs, double zhat) {
  if (coeffs.empty()) return 0.0;
  double bk1 = 0.0;
  double bk2 = 0.0;
  for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
    const double bk = coeffs[k] + 2.0 * zhat * bk1 - bk2;
    bk2 = bk1;
    bk1 = bk;
  }
  return coeffs[0] + zhat * bk1 - bk2;
}

double cheb_eval(const ChebSeries& series, double zhat) {
  return cheb_clenshaw(series.coeffs, zhat);
}

double scalar_sup_error(int n, double sigma, double t, int grid_size) {
  if (n < 0) throw std::domain_error("scalar_sup_error: need n >= 0");
  if (grid_size < 2) throw std::domain_error("scalar_sup_error: need grid_size >= 2");
  const ChebSeries series = rational_series(t, sigma, n);
  const TransformedExp target{t, sigma};
  double worst = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double zhat = std::cos(std::numbers::pi * i / (grid_size - 1));
    const double err = std::fabs(cheb_eval(series, zhat) - target(zhat));
    if (err > worst) worst = err;
  }
  return worst;
}

}  // namespace polexp
