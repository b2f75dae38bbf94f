#include "polexp/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "polexp/errors.hpp"

namespace polexp {

SpdOperator::SpdOperator(int dim, std::vector<Triplet> entries,
                         std::optional<int> bandwidth_hint)
    : dim_(dim), bandwidth_hint_(bandwidth_hint) {
  if (dim < 1) throw std::domain_error("SpdOperator: need dim >= 1");
  for (Triplet& e : entries) {
    if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim) {
      throw std::domain_error("SpdOperator: entry index out of range");
    }
    if (e.row < e.col) std::swap(e.row, e.col);
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  // Sum duplicates.
  entries_.reserve(entries.size());
  for (const Triplet& e : entries) {
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
  int width = 0;
  for (const Triplet& e : entries_) width = std::max(width, e.row - e.col);
  bandwidth_ = bandwidth_hint_ ? std::max(*bandwidth_hint_, width) : width;
}

void SpdOperator::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != static_cast<std::size_t>(dim_) || y.size() != x.size()) {
    throw std::domain_error("SpdOperator::apply: dimension mismatch");
  }
  std::fill(y.begin(), y.end(), 0.0);
  for (const Triplet& e : entries_) {
    y[static_cast<std::size_t>(e.row)] += e.value * x[static_cast<std::size_t>(e.col)];
    if (e.row != e.col) {
      y[static_cast<std::size_t>(e.col)] += e.value * x[static_cast<std::size_t>(e.row)];
    }
  }
}

std::vector<double> SpdOperator::apply(std::span<const double> x) const {
  std::vector<double> y(x.size());
  apply(x, y);
  return y;
}

SpdOperator load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_matrix_market: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_matrix_market: empty file");

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  for (auto* s : {&object, &format, &field, &symmetry}) {
    std::transform(s->begin(), s->end(), s->begin(), [](unsigned char c) { return std::tolower(c); });
  }
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate" ||
      field != "real" || symmetry != "symmetric") {
    throw std::runtime_error("load_matrix_market: need 'matrix coordinate real symmetric'");
  }

  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream sizes(line);
  int rows = 0, cols = 0;
  long nnz = 0;
  if (!(sizes >> rows >> cols >> nnz) || rows != cols || rows < 1) {
    throw std::runtime_error("load_matrix_market: bad size line");
  }

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (long k = 0; k < nnz; ++k) {
    int i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) throw std::runtime_error("load_matrix_market: truncated entries");
    entries.push_back({i - 1, j - 1, v});
  }
  return SpdOperator(rows, std::move(entries));
}

SpdFactor::SpdFactor(const SpdOperator& a, double sigma)
    : dim_(a.dim()), width_(a.bandwidth()), sigma_(sigma) {
  if (!(sigma < 0.0)) throw std::domain_error("spd_factorize: need sigma < 0");
  const std::size_t n = static_cast<std::size_t>(dim_);
  const std::size_t w = static_cast<std::size_t>(width_);
  band_.assign((w + 1) * n, 0.0);

  for (const Triplet& e : a.entries()) {
    band_[static_cast<std::size_t>(e.row - e.col) * n + static_cast<std::size_t>(e.col)] += e.value;
  }
  for (std::size_t j = 0; j < n; ++j) band_[j] -= sigma;

  // In-place banded Cholesky: band_[d*n + j] holds L(j+d, j) afterwards.
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t kmin = j > w ? j - w : 0;
    for (std::size_t k = kmin; k < j; ++k) {
      const double ljk = band_[(j - k) * n + k];
      if (ljk == 0.0) continue;
      const std::size_t imax = std::min(n - 1, k + w);
      for (std::size_t i = j; i <= imax; ++i) {
        band_[(i - j) * n + j] -= ljk * band_[(i - k) * n + k];
      }
    }
    const double diag = band_[j];
    if (!(diag > 0.0)) {
      throw NotSpdError("spd_factorize: non-positive pivot, matrix is not SPD after shift");
    }
    const double root = std::sqrt(diag);
    band_[j] = root;
    const std::size_t dmax = std::min(w, n - 1 - j);
    for (std::size_t d = 1; d <= dmax; ++d) band_[d * n + j] /= root;
  }
}

void SpdFactor::solve_inplace(std::span<double> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) {
    throw std::domain_error("SpdFactor::solve: dimension mismatch");
  }
  const std::size_t n = static_cast<std::size_t>(dim_);
  const std::size_t w = static_cast<std::size_t>(width_);
  // Forward substitution L y = b.
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t kmin = j > w ? j - w : 0;
    double s = x[j];
    for (std::size_t k = kmin; k < j; ++k) s -= band_[(j - k) * n + k] * x[k];
    x[j] = s / band_[j];
  }
  // Back substitution L^T x = y.
  for (std::size_t jj = n; jj-- > 0;) {
    const std::size_t imax = std::min(n - 1, jj + w);
    double s = x[jj];
    for (std::size_t i = jj + 1; i <= imax; ++i) s -= band_[(i - jj) * n + jj] * x[i];
    x[jj] = s / band_[jj];
  }
  solves_.fetch_add(1);
}

std::vector<double> SpdFactor::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.begin(), rhs.end());
  solve_inplace(x);
  return x;
}

SpdFactor spd_factorize(const SpdOperator& a, double sigma) { return SpdFactor(a, sigma); }

std::vector<double> factor_solve(const SpdFactor& factor, std::span<const double> rhs) {
  return factor.solve(rhs);
}

TridiagEig tridiag_eig(std::span<const double> alpha, std::span<const double> beta) {
  const int n = static_cast<int>(alpha.size());
  if (n < 1) throw std::domain_error("tridiag_eig: empty diagonal");
  if (beta.size() + 1 != alpha.size()) {
    throw std::domain_error("tridiag_eig: beta must have length n-1");
  }

  std::vector<double> d(alpha.begin(), alpha.end());
  std::vector<double> e(beta.begin(), beta.end());
  e.push_back(0.0);
  std::vector<double> z(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) z[static_cast<std::size_t>(i) * n + i] = 1.0;  // row-major identity

  // Implicit-shift QL with eigenvector accumulation, after EISPACK tql2.
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::fabs(d[static_cast<std::size_t>(m)]) +
                          std::fabs(d[static_cast<std::size_t>(m) + 1]);
        if (std::fabs(e[static_cast<std::size_t>(m)]) <= eps * dd) break;
      }
      if (m != l) {
        if (++iter > 50) throw NumericalError("tridiag_eig: QL iteration did not converge");
        double g = (d[static_cast<std::size_t>(l) + 1] - d[static_cast<std::size_t>(l)]) /
                   (2.0 * e[static_cast<std::size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
            e[static_cast<std::size_t>(l)] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[static_cast<std::size_t>(i)];
          const double b = c * e[static_cast<std::size_t>(i)];
          r = std::hypot(f, g);
          e[static_cast<std::size_t>(i) + 1] = r;
          if (r == 0.0) {
            d[static_cast<std::size_t>(i) + 1] -= p;
            e[static_cast<std::size_t>(m)] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<std::size_t>(i) + 1] - p;
          r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<std::size_t>(i) + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z[static_cast<std::size_t>(k) * n + i + 1];
            z[static_cast<std::size_t>(k) * n + i + 1] =
                s * z[static_cast<std::size_t>(k) * n + i] + c * f;
            z[static_cast<std::size_t>(k) * n + i] =
                c * z[static_cast<std::size_t>(k) * n + i] - s * f;
          }
        }
        if (underflow) continue;
        d[static_cast<std::size_t>(l)] -= p;
        e[static_cast<std::size_t>(l)] = g;
        e[static_cast<std::size_t>(m)] = 0.0;
      }
    } while (m != l);
  }

  // Sort ascending, permuting eigenvector columns alongside.
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return d[static_cast<std::size_t>(a)] < d[static_cast<std::size_t>(b)]; });

  TridiagEig out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<std::size_t>(k)];
    out.values[static_cast<std::size_t>(k)] = d[static_cast<std::size_t>(src)];
    for (int i = 0; i < n; ++i) {
      out.vectors[static_cast<std::size_t>(k) * n + i] = z[static_cast<std::size_t>(i) * n + src];
    }
  }
  return out;
}

std::vector<double> expm_shifted_inverse_action(std::span<const double> alpha,
                                                std::span<const double> beta, double sigma,
                                                double t, std::span<const double> v) {
  const std::size_t n = alpha.size();
  if (v.size() != n) throw std::domain_error("expm_shifted_inverse_action: dimension mismatch");
  const TridiagEig eig = tridiag_eig(alpha, beta);
  for (double theta : eig.values) {
    if (!(theta > 0.0)) {
      throw NotSpdError("expm_shifted_inverse_action: tridiagonal matrix is not positive definite");
    }
  }
  // y = Q^T v, scaled by exp(-t (1/theta + sigma)), then back to Q basis.
  std::vector<double> y(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += eig.vectors[k * n + i] * v[i];
    y[k] = dot * std::exp(-t * (1.0 / eig.values[k] + sigma));
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) out[i] += eig.vectors[k * n + i] * y[k];
  }
  return out;
}

}  // namespace polexp
