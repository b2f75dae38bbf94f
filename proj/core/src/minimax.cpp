#include "polexp/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polexp/errors.hpp"
#include "polexp/parallel.hpp"
#include "polexp/pole_optimizer.hpp"

namespace polexp {

namespace {

constexpr double kDefectTol = 1e-12;
constexpr int kMaxIterations = 50;

// Gaussian elimination with partial pivoting; a is row-major dim x dim,
// rhs is overwritten with the solution.
void solve_dense(std::vector<double>& a, std::vector<double>& rhs, int dim) {
  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    double best = std::fabs(a[static_cast<std::size_t>(col) * dim + col]);
    for (int r = col + 1; r < dim; ++r) {
      const double v = std::fabs(a[static_cast<std::size_t>(r) * dim + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (!(best > 0.0)) throw NumericalError("remez: singular reference system");
    if (pivot != col) {
      for (int c = col; c < dim; ++c) {
        std::swap(a[static_cast<std::size_t>(pivot) * dim + c],
                  a[static_cast<std::size_t>(col) * dim + c]);
      }
      std::swap(rhs[static_cast<std::size_t>(pivot)], rhs[static_cast<std::size_t>(col)]);
    }
    const double d = a[static_cast<std::size_t>(col) * dim + col];
    for (int r = col + 1; r < dim; ++r) {
      const double factor = a[static_cast<std::size_t>(r) * dim + col] / d;
      if (factor == 0.0) continue;
      for (int c = col; c < dim; ++c) {
        a[static_cast<std::size_t>(r) * dim + c] -= factor * a[static_cast<std::size_t>(col) * dim + c];
      }
      rhs[static_cast<std::size_t>(r)] -= factor * rhs[static_cast<std::size_t>(col)];
    }
  }
  for (int r = dim - 1; r >= 0; --r) {
    double s = rhs[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < dim; ++c) {
      s -= a[static_cast<std::size_t>(r) * dim + c] * rhs[static_cast<std::size_t>(c)];
    }
    rhs[static_cast<std::size_t>(r)] = s / a[static_cast<std::size_t>(r) * dim + r];
  }
}

// Solves sum_k c_k T_k(x_j) + (-1)^j h = f(x_j) on the reference; returns
// coefficients (length n+1) with h appended.
std::vector<double> solve_reference_system(const std::function<double(double)>& f,
                                           const std::vector<double>& reference, int n) {
  const int dim = n + 2;
  std::vector<double> a(static_cast<std::size_t>(dim) * dim);
  std::vector<double> rhs(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    const double x = reference[static_cast<std::size_t>(j)];
    double tkm1 = 1.0;
    double tk = x;
    for (int k = 0; k <= n; ++k) {
      double value;
      if (k == 0) {
        value = 1.0;
      } else if (k == 1) {
        value = x;
      } else {
        value = 2.0 * x * tk - tkm1;
        tkm1 = tk;
        tk = value;
      }
      a[static_cast<std::size_t>(j) * dim + k] = value;
    }
    a[static_cast<std::size_t>(j) * dim + n + 1] = (j % 2 == 0) ? 1.0 : -1.0;
    rhs[static_cast<std::size_t>(j)] = f(x);
  }
  solve_dense(a, rhs, dim);
  return rhs;
}

struct Extremum {
  double x;
  double value;  // signed error
};

// Local maxima of |e| within maximal runs of constant sign; consecutive
// entries alternate in sign by construction.
std::vector<Extremum> sign_run_extrema(const std::vector<double>& xs,
                                       const std::vector<double>& errs) {
  std::vector<Extremum> out;
  int run_sign = 0;
  std::size_t best_idx = 0;
  double best_abs = -1.0;
  auto flush = [&] {
    if (run_sign != 0 && best_abs >= 0.0) out.push_back({xs[best_idx], errs[best_idx]});
  };
  for (std::size_t i = 0; i < errs.size(); ++i) {
    const double e = errs[i];
    const int s = (e > 0.0) - (e < 0.0);
    if (s == 0) continue;
    if (s != run_sign) {
      flush();
      run_sign = s;
      best_abs = -1.0;
    }
    if (std::fabs(e) > best_abs) {
      best_abs = std::fabs(e);
      best_idx = i;
    }
  }
  flush();
  return out;
}

// Drops the smallest-magnitude extrema until exactly target remain, keeping
// the alternation of signs intact.
void trim_extrema(std::vector<Extremum>& ext, std::size_t target) {
  while (ext.size() > target) {
    std::size_t smallest = 0;
    for (std::size_t i = 1; i < ext.size(); ++i) {
      if (std::fabs(ext[i].value) < std::fabs(ext[smallest].value)) smallest = i;
    }
    if (ext.size() - target == 1) {
      // One extra point: dropping an interior one would break alternation,
      // so drop the weaker endpoint.
      const std::size_t victim =
          std::fabs(ext.front().value) <= std::fabs(ext.back().value) ? 0 : ext.size() - 1;
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(victim));
      continue;
    }
    if (smallest == 0 || smallest + 1 == ext.size()) {
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(smallest));
      continue;
    }
    // Removing an interior extremum leaves two same-signed neighbors; keep
    // the stronger of the two.
    const std::size_t left = smallest - 1;
    const std::size_t right = smallest + 1;
    const std::size_t second =
        std::fabs(ext[left].value) < std::fabs(ext[right].value) ? left : right;
    const std::size_t hi = std::max(smallest, second);
    const std::size_t lo = std::min(smallest, second);
    ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(hi));
    ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(lo));
  }
}

}  // namespace

TransformedExp transformed_target(double t, double sigma) {
  if (!(t > 0.0)) throw std::domain_error("transformed_target: need t > 0");
  if (!(sigma < 0.0)) throw std::domain_error("transformed_target: need sigma < 0");
  return TransformedExp{t, sigma};
}

MinimaxResult remez_best_poly(const std::function<double(double)>& f, int n) {
  if (n < 0) throw std::domain_error("remez_best_poly: need n >= 0");

  const int m = n + 2;
  // Extreme points of T_{n+1}, sorted ascending.
  std::vector<double> reference(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    reference[static_cast<std::size_t>(j)] = -std::cos(std::numbers::pi * j / (n + 1));
  }

  const int grid_size = 32 * m;
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    grid[static_cast<std::size_t>(i)] = -std::cos(std::numbers::pi * i / (grid_size - 1));
  }

  MinimaxResult result;
  result.reference = reference;
  std::vector<double> errs(grid.size());

  for (int iter = 1; iter <= kMaxIterations; ++iter) {
    std::vector<double> solution = solve_reference_system(f, reference, n);
    const double h = solution[static_cast<std::size_t>(n + 1)];
    solution.resize(static_cast<std::size_t>(n + 1));

    result.coeffs = std::move(solution);
    result.leveled_error = std::fabs(h);
    result.reference = reference;
    result.iterations = iter;

    double fscale = 1.0;
    for (double x : reference) fscale = std::max(fscale, std::fabs(f(x)));

    double grid_max = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      errs[i] = f(grid[i]) - cheb_clenshaw(result.coeffs, grid[i]);
      grid_max = std::max(grid_max, std::fabs(errs[i]));
    }

    // Equioscillation defect: how far the true error max exceeds the
    // leveled reference error. The absolute term keeps the test meaningful
    // when the level sits at rounding noise. The level must also stay
    // consistent with the grid scan: it can top the grid max only by the
    // peak-resolution slack of the 32(n+2)-point grid, anything beyond
    // means the reference chased values the target cannot sustain.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * fscale;
    const bool level_consistent = result.leveled_error <= grid_max * 1.01 + noise;
    if (level_consistent && grid_max - result.leveled_error <= kDefectTol * grid_max + noise) {
      result.converged = true;
      return result;
    }

    std::vector<Extremum> ext = sign_run_extrema(grid, errs);

    // Parabolic refinement of interior grid extrema.
    for (Extremum& e : ext) {
      auto it = std::lower_bound(grid.begin(), grid.end(), e.x);
      const std::size_t i = static_cast<std::size_t>(it - grid.begin());
      if (i == 0 || i + 1 >= grid.size()) continue;
      const double x0 = grid[i - 1], x1 = grid[i], x2 = grid[i + 1];
      const double e0 = errs[i - 1], e1 = errs[i], e2 = errs[i + 1];
      const double num = (x1 - x0) * (x1 - x0) * (e1 - e2) - (x1 - x2) * (x1 - x2) * (e1 - e0);
      const double den = (x1 - x0) * (e1 - e2) - (x1 - x2) * (e1 - e0);
      if (den == 0.0) continue;
      double xv = x1 - 0.5 * num / den;
      // Clamp to half-gap windows so refined extrema on adjacent grid cells
      // cannot cross each other.
      const double lo_lim = x1 - 0.499 * (x1 - x0);
      const double hi_lim = x1 + 0.499 * (x2 - x1);
      if (!(xv > lo_lim) || !(xv < hi_lim)) continue;
      const double ev = f(xv) - cheb_clenshaw(result.coeffs, xv);
      if (std::fabs(ev) > std::fabs(e.value) && (ev > 0) == (e.value > 0)) {
        e.x = xv;
        e.value = ev;
      }
    }

    if (ext.size() < static_cast<std::size_t>(m)) {
      // Error has fewer alternations than the theory guarantees; this only
      // happens when f - p is numerically indistinguishable from zero.
      result.converged = grid_max <= noise + result.leveled_error * (1.0 + kDefectTol);
      return result;
    }
    trim_extrema(ext, static_cast<std::size_t>(m));

    for (int j = 0; j < m; ++j) reference[static_cast<std::size_t>(j)] = ext[static_cast<std::size_t>(j)].x;
  }

  result.converged = false;
  return result;
}

MinimaxResult best_poly_at(int n, double q, double t) {
  if (n < 0) throw std::domain_error("best_poly_at: need n >= 0");
  if (!(q > 0.0)) throw std::domain_error("best_poly_at: need q > 0");
  if (n == 0) {
    // Degree zero has no pole; the best constant for exp(-t z) on [0, inf)
    // is the midpoint of its range, with error 1/2 attained at both ends.
    MinimaxResult constant;
    constant.coeffs = {0.5};
    constant.leveled_error = 0.5;
    constant.reference = {-1.0, 1.0};
    constant.converged = true;
    return constant;
  }
  const double sigma = -static_cast<double>(n) * q;
  return remez_best_poly(transformed_target(t, sigma), n);
}

double best_error_at(int n, double q, double t) { return best_poly_at(n, q, t).leveled_error; }

ErrorProfile time_uniform_error(int n, double q, const TimeInterval& interval, int grid_size) {
  ErrorProfile profile;
  profile.times = interval.log_grid(grid_size);
  profile.errors.assign(profile.times.size(), 0.0);
  std::vector<char> converged(profile.times.size(), 1);
  parallel_for(profile.times.size(), [&](std::size_t j) {
    const MinimaxResult r = best_poly_at(n, q, profile.times[j]);
    profile.errors[j] = r.leveled_error;
    converged[j] = r.converged ? 1 : 0;
  });
  profile.sup = *std::max_element(profile.errors.begin(), profile.errors.end());
  profile.all_converged =
      std::all_of(converged.begin(), converged.end(), [](char c) { return c != 0; });
  return profile;
}

QStarResult find_qstar(int n, const TimeInterval& interval) {
  if (n < 1) throw std::domain_error("find_qstar: need n >= 1");
  const double qhat = find_qhat(interval);

  bool all_converged = true;
  auto objective = [&](double logq) {
    const ErrorProfile profile = time_uniform_error(n, std::exp(logq), interval);
    if (!profile.all_converged) all_converged = false;
    return profile.sup;
  };

  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(qhat) - std::log(4.0);
  double b = std::log(qhat) + std::log(4.0);

  double fa = objective(a);
  double fb = objective(b);
  double x1 = b - golden * (b - a);
  double x2 = a + golden * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);

  if (std::min(f1, f2) > std::min(fa, fb)) {
    // No interior decrease: widen the bracket once.
    a -= std::log(4.0);
    b += std::log(4.0);
    fa = objective(a);
    fb = objective(b);
    x1 = b - golden * (b - a);
    x2 = a + golden * (b - a);
    f1 = objective(x1);
    f2 = objective(x2);
    if (std::min(f1, f2) > std::min(fa, fb)) {
      throw NumericalError("find_qstar: no interior decrease in widened bracket");
    }
  }

  double best_x = f1 <= f2 ? x1 : x2;
  double best_f = std::min(f1, f2);
  if (fa < best_f) {
    best_x = a;
    best_f = fa;
  }
  if (fb < best_f) {
    best_x = b;
    best_f = fb;
  }

  while (b - a > 1e-3) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = objective(x2);
    }
    if (f1 < best_f) {
      best_f = f1;
      best_x = x1;
    }
    if (f2 < best_f) {
      best_f = f2;
      best_x = x2;
    }
  }

  return QStarResult{std::exp(best_x), best_f, all_converged};
}

}  // namespace polexp
