#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "polexp/errors.hpp"
#include "polexp/linalg.hpp"

using namespace polexp;

namespace {

std::vector<Triplet> tridiag_triplets(int n, double diag, double off) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, diag});
    if (i > 0) t.push_back({i, i - 1, off});
  }
  return t;
}

// random symmetric banded diagonally dominant matrix
SpdOperator random_spd(int n, int w, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Triplet> t;
  std::vector<double> rowsum(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - w); j < i; ++j) {
      const double v = u(rng);
      t.push_back({i, j, v});
      rowsum[static_cast<std::size_t>(i)] += std::fabs(v);
      rowsum[static_cast<std::size_t>(j)] += std::fabs(v);
    }
  }
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, rowsum[static_cast<std::size_t>(i)] + 0.5 + 0.1 * u(rng)});
  }
  return SpdOperator(n, std::move(t));
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("SpdOperator canonicalizes and mirrors the stored triangle") {
  // upper-triangle input lands in the lower triangle; duplicates are summed
  SpdOperator a(3, {{0, 1, 2.0}, {1, 0, 1.0}, {2, 2, 4.0}});
  const std::vector<double> y = a.apply(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(y[0] == doctest::Approx(3.0));  // (2+1) mirrored
  CHECK(y[1] == doctest::Approx(3.0));
  CHECK(y[2] == doctest::Approx(4.0));
  CHECK(a.bandwidth() == 1);
  CHECK_THROWS_AS(SpdOperator(2, {{0, 5, 1.0}}), std::domain_error);
}

TEST_CASE("factorization of the identity and of the zero matrix") {
  SpdOperator eye(4, tridiag_triplets(4, 1.0, 0.0));
  const SpdFactor f = spd_factorize(eye, -1.0);
  const std::vector<double> x = f.solve(std::vector<double>{2.0, 4.0, 6.0, 8.0});
  for (int i = 0; i < 4; ++i) CHECK(x[static_cast<std::size_t>(i)] == doctest::Approx((i + 1.0)));

  SpdOperator zero(3, {});
  const SpdFactor fz = spd_factorize(zero, -4.0);
  const std::vector<double> xz = fz.solve(std::vector<double>{4.0, 8.0, 12.0});
  CHECK(xz[0] == doctest::Approx(1.0));
  CHECK(xz[1] == doctest::Approx(2.0));
  CHECK(xz[2] == doctest::Approx(3.0));
}

TEST_CASE("1D Laplacian solve matches the dense elimination oracle") {
  const int n = 50;
  SpdOperator lap(n, tridiag_triplets(n, 2.0, -1.0));
  const SpdFactor f = spd_factorize(lap, -1.0);

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> b(static_cast<std::size_t>(n));
  for (double& v : b) v = u(rng);

  // dense A - sigma I
  std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    dense[static_cast<std::size_t>(i) * n + i] = 3.0;
    if (i > 0) {
      dense[static_cast<std::size_t>(i) * n + i - 1] = -1.0;
      dense[static_cast<std::size_t>(i - 1) * n + i] = -1.0;
    }
  }
  const std::vector<double> expect = oracles::dense_solve(dense, b, n);
  const std::vector<double> got = factor_solve(f, b);
  for (int i = 0; i < n; ++i) {
    REQUIRE(got[static_cast<std::size_t>(i)] ==
            doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }
}

TEST_CASE("solve residual stays below 1e-12 on random instances") {
  for (auto [n, w, seed] : {std::tuple{200, 6, 1u}, std::tuple{1000, 3, 2u}, std::tuple{5000, 2, 3u}}) {
    const SpdOperator a = random_spd(n, w, seed);
    const SpdFactor f = spd_factorize(a, -1.5);
    std::mt19937 rng(seed + 10);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> b(static_cast<std::size_t>(n));
    for (double& v : b) v = u(rng);
    const std::vector<double> x = f.solve(b);
    // residual (A - sigma I) x - b
    std::vector<double> r = a.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += 1.5 * x[i] - b[i];
    REQUIRE(norm2(r) <= 1e-12 * norm2(b));
  }
}

TEST_CASE("repeated solves are bitwise deterministic") {
  const SpdOperator a = random_spd(300, 4, 9);
  const SpdFactor f = spd_factorize(a, -0.7);
  std::vector<double> b(300, 1.0);
  const std::vector<double> x1 = f.solve(b);
  const std::vector<double> x2 = f.solve(b);
  CHECK(x1 == x2);
}

TEST_CASE("solve counter increments per solve") {
  const SpdOperator a = random_spd(50, 2, 12);
  const SpdFactor f = spd_factorize(a, -1.0);
  CHECK(f.solve_count() == 0);
  std::vector<double> b(50, 1.0);
  (void)f.solve(b);
  (void)f.solve(b);
  CHECK(f.solve_count() == 2);
  f.reset_solve_count();
  CHECK(f.solve_count() == 0);
}

TEST_CASE("non-SPD matrices are rejected") {
  SpdOperator negative(2, {{0, 0, -5.0}, {1, 1, -5.0}});
  CHECK_THROWS_AS((void)spd_factorize(negative, -1.0), NotSpdError);
  SpdOperator fine(2, {{0, 0, 1.0}, {1, 1, 1.0}});
  CHECK_THROWS_AS((void)spd_factorize(fine, 1.0), std::domain_error);  // shift must be negative
}

TEST_CASE("tridiagonal eigensolver: diagonal and 2x2 anchors") {
  {
    const std::vector<double> alpha{3.0, 1.0, 2.0};
    const std::vector<double> beta{0.0, 0.0};
    const TridiagEig eig = tridiag_eig(alpha, beta);
    CHECK(eig.values[0] == doctest::Approx(1.0));
    CHECK(eig.values[1] == doctest::Approx(2.0));
    CHECK(eig.values[2] == doctest::Approx(3.0));
  }
  {
    const std::vector<double> alpha{2.0, 2.0};
    const std::vector<double> beta{1.0};
    const TridiagEig eig = tridiag_eig(alpha, beta);
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(eig.values[1] == doctest::Approx(3.0).epsilon(1e-14));
    // eigenvector of 1 is (1,-1)/sqrt(2) up to sign
    CHECK(std::fabs(eig.vectors[0] * eig.vectors[1]) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("tridiagonal eigensolver matches the Jacobi oracle") {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 10;
  std::vector<double> alpha(static_cast<std::size_t>(n));
  std::vector<double> beta(static_cast<std::size_t>(n) - 1);
  for (double& v : alpha) v = 2.0 + u(rng);
  for (double& v : beta) v = u(rng);

  const TridiagEig eig = tridiag_eig(alpha, beta);

  std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    dense[static_cast<std::size_t>(i) * n + i] = alpha[static_cast<std::size_t>(i)];
    if (i > 0) {
      dense[static_cast<std::size_t>(i) * n + i - 1] = beta[static_cast<std::size_t>(i) - 1];
      dense[static_cast<std::size_t>(i - 1) * n + i] = beta[static_cast<std::size_t>(i) - 1];
    }
  }
  const oracles::DenseEig oracle = oracles::jacobi_eig(dense, n);
  const double scale = std::max(std::fabs(oracle.values.front()), std::fabs(oracle.values.back()));
  for (int k = 0; k < n; ++k) {
    REQUIRE(std::fabs(eig.values[static_cast<std::size_t>(k)] -
                      oracle.values[static_cast<std::size_t>(k)]) <= 1e-12 * scale);
  }

  // residual H Q - Q diag and orthogonality
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      double hq = alpha[static_cast<std::size_t>(i)] * eig.vectors[static_cast<std::size_t>(k) * n + i];
      if (i > 0) hq += beta[static_cast<std::size_t>(i) - 1] * eig.vectors[static_cast<std::size_t>(k) * n + i - 1];
      if (i + 1 < n) hq += beta[static_cast<std::size_t>(i)] * eig.vectors[static_cast<std::size_t>(k) * n + i + 1];
      REQUIRE(std::fabs(hq - eig.values[static_cast<std::size_t>(k)] *
                                 eig.vectors[static_cast<std::size_t>(k) * n + i]) <= 1e-12 * scale);
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b <= a; ++b) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) {
        dot += eig.vectors[static_cast<std::size_t>(a) * n + i] *
               eig.vectors[static_cast<std::size_t>(b) * n + i];
      }
      REQUIRE(std::fabs(dot - (a == b ? 1.0 : 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("tridiagonal eigensolver residuals at size 40") {
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 40;
  std::vector<double> alpha(static_cast<std::size_t>(n));
  std::vector<double> beta(static_cast<std::size_t>(n) - 1);
  for (double& v : alpha) v = 3.0 + u(rng);
  for (double& v : beta) v = u(rng);

  const TridiagEig eig = tridiag_eig(alpha, beta);
  const double scale =
      std::max(std::fabs(eig.values.front()), std::fabs(eig.values.back()));
  for (int k = 0; k < n; ++k) {
    const bool ordered =
        k == 0 || eig.values[static_cast<std::size_t>(k)] >= eig.values[static_cast<std::size_t>(k) - 1];
    REQUIRE(ordered);
    for (int i = 0; i < n; ++i) {
      double hq = alpha[static_cast<std::size_t>(i)] *
                  eig.vectors[static_cast<std::size_t>(k) * n + i];
      if (i > 0) {
        hq += beta[static_cast<std::size_t>(i) - 1] *
              eig.vectors[static_cast<std::size_t>(k) * n + i - 1];
      }
      if (i + 1 < n) {
        hq += beta[static_cast<std::size_t>(i)] *
              eig.vectors[static_cast<std::size_t>(k) * n + i + 1];
      }
      REQUIRE(std::fabs(hq - eig.values[static_cast<std::size_t>(k)] *
                                 eig.vectors[static_cast<std::size_t>(k) * n + i]) <=
              1e-12 * scale);
    }
  }
  for (int a2 = 0; a2 < n; ++a2) {
    for (int b2 = 0; b2 <= a2; ++b2) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) {
        dot += eig.vectors[static_cast<std::size_t>(a2) * n + i] *
               eig.vectors[static_cast<std::size_t>(b2) * n + i];
      }
      REQUIRE(std::fabs(dot - (a2 == b2 ? 1.0 : 0.0)) <= 1e-12);
    }
  }
}

TEST_CASE("expm action anchors") {
  // 1x1: exp(-t (1/h + sigma)) v
  {
    const std::vector<double> alpha{0.4};
    const std::vector<double> beta{};
    const std::vector<double> v{3.0};
    const auto out = expm_shifted_inverse_action(alpha, beta, -2.0, 0.7, v);
    CHECK(out[0] == doctest::Approx(3.0 * std::exp(-0.7 * (1.0 / 0.4 - 2.0))).epsilon(1e-14));
  }
  // t = 0 returns v
  {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> alpha(6), v(6), beta(5);
    for (double& x : alpha) x = 2.0 + u(rng);
    for (double& x : beta) x = 0.3 * u(rng);
    for (double& x : v) x = u(rng);
    const auto out = expm_shifted_inverse_action(alpha, beta, -1.3, 0.0, v);
    for (int i = 0; i < 6; ++i) {
      REQUIRE(out[static_cast<std::size_t>(i)] ==
              doctest::Approx(v[static_cast<std::size_t>(i)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("expm action matches the dense eigen oracle on a random 8x8") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 8;
  std::vector<double> alpha(static_cast<std::size_t>(n)), beta(static_cast<std::size_t>(n) - 1),
      v(static_cast<std::size_t>(n));
  for (double& x : alpha) x = 2.0 + 0.5 * u(rng);
  for (double& x : beta) x = 0.4 * u(rng);
  for (double& x : v) x = u(rng);

  const double sigma = -1.1;
  const double t = 0.9;
  const auto got = expm_shifted_inverse_action(alpha, beta, sigma, t, v);

  // oracle: dense H, invert through Jacobi eigen, exponentiate H^{-1}+sigma I
  std::vector<double> dense(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    dense[static_cast<std::size_t>(i) * n + i] = alpha[static_cast<std::size_t>(i)];
    if (i > 0) {
      dense[static_cast<std::size_t>(i) * n + i - 1] = beta[static_cast<std::size_t>(i) - 1];
      dense[static_cast<std::size_t>(i - 1) * n + i] = beta[static_cast<std::size_t>(i) - 1];
    }
  }
  const oracles::DenseEig eig = oracles::jacobi_eig(dense, n);
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);  // H^{-1} + sigma I
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m[static_cast<std::size_t>(i) * n + j] += eig.vectors[static_cast<std::size_t>(k) * n + i] *
                                                  eig.vectors[static_cast<std::size_t>(k) * n + j] /
                                                  eig.values[static_cast<std::size_t>(k)];
      }
    }
  }
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i) * n + i] += sigma;
  const auto expect = oracles::dense_expm_action(m, n, t, v);
  for (int i = 0; i < n; ++i) {
    REQUIRE(got[static_cast<std::size_t>(i)] ==
            doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }
}

TEST_CASE("expm action rejects indefinite tridiagonal matrices") {
  const std::vector<double> alpha{1.0, -2.0};
  const std::vector<double> beta{0.1};
  const std::vector<double> v{1.0, 1.0};
  CHECK_THROWS_AS((void)expm_shifted_inverse_action(alpha, beta, -1.0, 1.0, v), NotSpdError);
}

TEST_CASE("matrix market round trip") {
  const char* path = "test_linalg_tmp.mtx";
  {
    std::ofstream out(path);
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << "% comment line\n";
    out << "3 3 4\n";
    out << "1 1 2.0\n";
    out << "2 2 2.5\n";
    out << "3 3 3.0\n";
    out << "3 1 -0.5\n";
  }
  const SpdOperator a = load_matrix_market(path);
  CHECK(a.dim() == 3);
  const std::vector<double> y = a.apply(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(y[0] == doctest::Approx(2.0 - 1.5));
  CHECK(y[1] == doctest::Approx(5.0));
  CHECK(y[2] == doctest::Approx(9.0 - 0.5));
  std::remove(path);

  {
    std::ofstream out(path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << "2 2 1\n";
    out << "1 1 1.0\n";
  }
  CHECK_THROWS(load_matrix_market(path));
  std::remove(path);
  CHECK_THROWS(load_matrix_market("does_not_exist.mtx"));
}
