#pragma once

#include <atomic>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace polexp {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

/// Sparse symmetric positive semidefinite operator. Only the lower triangle
/// is stored; the matrix-vector product mirrors it, so the operator is
/// symmetric to the exact storage.
class SpdOperator {
 public:
  /// Entries may address either triangle; they are canonicalized to the
  /// lower one and duplicates are summed.
  SpdOperator(int dim, std::vector<Triplet> entries,
              std::optional<int> bandwidth_hint = std::nullopt);

  int dim() const { return dim_; }
  std::optional<int> bandwidth_hint() const { return bandwidth_hint_; }
  /// Hint when present, otherwise max |i - j| over stored entries.
  int bandwidth() const { return bandwidth_; }
  const std::vector<Triplet>& entries() const { return entries_; }

  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

 private:
  int dim_;
  std::optional<int> bandwidth_hint_;
  int bandwidth_;
  std::vector<Triplet> entries_;  // lower triangle, sorted, deduplicated
};

/// Reads a Matrix Market coordinate file (real, symmetric).
SpdOperator load_matrix_market(const std::string& path);

/// Banded Cholesky factorization of A - sigma*I for sigma < 0. One factor
/// serves every shifted solve of a family evaluation; solves are counted
/// for cost accounting.
class SpdFactor {
 public:
  SpdFactor(const SpdOperator& a, double sigma);

  int dim() const { return dim_; }
  int bandwidth() const { return width_; }
  double shift() const { return sigma_; }

  void solve_inplace(std::span<double> x) const;
  std::vector<double> solve(std::span<const double> rhs) const;

  long solve_count() const { return solves_.load(); }
  void reset_solve_count() const { solves_.store(0); }

 private:
  int dim_;
  int width_;
  double sigma_;
  std::vector<double> band_;  // band_[d*dim + j] = L(j+d, j)
  mutable std::atomic<long> solves_{0};
};

SpdFactor spd_factorize(const SpdOperator& a, double sigma);
std::vector<double> factor_solve(const SpdFactor& factor, std::span<const double> rhs);

/// Eigendecomposition of a symmetric tridiagonal matrix with diagonal alpha
/// (length n) and off-diagonal beta (length n-1). Implicit-shift QL with
/// eigenvector accumulation.
struct TridiagEig {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // n x n column-major; column k pairs values[k]
};

TridiagEig tridiag_eig(std::span<const double> alpha, std::span<const double> beta);

/// Shift-and-invert Lanczos decomposition:
/// (A - sigma I)^{-1} V = V H + h_next * v_next * e_n^T, V orthonormal up to
/// full reorthogonalization, H symmetric tridiagonal with diagonal alpha and
/// off-diagonal beta, positive definite.
struct LanczosDecomp {
  std::vector<double> basis;   // dim x size, column-major
  std::vector<double> alpha;   // size
  std::vector<double> beta;    // size - 1
  double h_next = 0.0;         // residual coupling h_{size+1,size}
  std::vector<double> v_next;  // next basis vector (zero after breakdown)
  double b_norm = 0.0;
  int dim = 0;
  int size = 0;           // columns actually built
  bool breakdown = false;  // basis truncated early: Krylov space is invariant
  long solves_performed = 0;
};

/// Given the SPD tridiagonal H = (alpha, beta), computes
/// exp(-t*(H^{-1} + sigma*I)) * v through the eigendecomposition of H,
/// without forming H^{-1}.
std::vector<double> expm_shifted_inverse_action(std::span<const double> alpha,
                                                std::span<const double> beta, double sigma,
                                                double t, std::span<const double> v);

}  // namespace polexp
