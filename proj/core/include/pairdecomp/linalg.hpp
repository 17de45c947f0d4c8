#pragma once

#include <cstddef>
#include <vector>

#include "pairdecomp/matrix.hpp"

namespace pairdecomp {

/// Relative rank tolerance: eigenvalues at or below rank_tol * lambda_max count as zero.
inline constexpr double kDefaultRankTol = 1e-10;

/// Negative eigenvalues down to -kNegativeClamp * lambda_max are treated as round-off.
inline constexpr double kNegativeClamp = 1e-10;

/// Maximum accepted 2-norm condition number for operators that must be inverted.
inline constexpr double kMaxCondition = 1e12;

struct HermitianEig {
  std::vector<double> eigenvalues;  // decreasing
  Matrix eigenvectors;              // columns, orthonormal
};

struct RankInfo {
  std::size_t rank = 0;
  Matrix support_projection;
  Matrix null_projection;
  /// Orthonormal basis of the support, ordered by decreasing eigenvalue.
  std::vector<Vector> basis;
};

/// Eigenvalues at or below this level are indistinguishable from zero.
double round_off_floor(std::size_t n, double scale);

/// #{lambda > rank_tol * lambda_max} for a decreasing list.
std::size_t numerical_rank(const std::vector<double>& eigenvalues, double rank_tol = kDefaultRankTol);

bool is_hermitian(const Matrix& a, double rel_tol = 1e-10);

/// Cyclic complex Jacobi. Sweep order is fixed, so identical input gives
/// bit-identical output. Ties keep solver order.
HermitianEig hermitian_eig(const Matrix& a);

/// Principal square root of a positive semidefinite matrix. Eigenvalues at
/// round-off level (|lambda| <= 32 n eps lambda_max) are set to exactly zero.
Matrix psd_sqrt(const Matrix& a);

RankInfo support_info(const Matrix& a, double rank_tol = kDefaultRankTol);

/// A # B = A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}, the positive solution of
/// G A^{-1} G = B. Both operands must be strictly positive definite.
Matrix geometric_mean(const Matrix& a, const Matrix& b, double rank_tol = kDefaultRankTol);

/// Square root of the Moore-Penrose inverse, restricted to the support.
Matrix pinv_sqrt(const Matrix& a, double rank_tol = kDefaultRankTol);

/// Moore-Penrose inverse of a positive semidefinite matrix.
Matrix psd_pinv(const Matrix& a, double rank_tol = kDefaultRankTol);

/// Singular values in decreasing order (one-sided Jacobi).
std::vector<double> singular_values(const Matrix& a);

double condition_number(const Matrix& a);

/// Gauss-Jordan with partial pivoting. Throws Singular on an exactly zero pivot or when
/// the condition number exceeds kMaxCondition.
Matrix inverse(const Matrix& a);

/// Apply f to the eigenvalues of a Hermitian matrix.
template <class F>
Matrix hermitian_function(const HermitianEig& eig, F&& f) {
  const std::size_t n = eig.eigenvectors.rows();
  const std::size_t k = eig.eigenvalues.size();
  Matrix out(n, n);
  for (std::size_t e = 0; e < k; ++e) {
    const double fv = f(eig.eigenvalues[e]);
    if (fv == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const complex vi = eig.eigenvectors(i, e) * fv;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.eigenvectors(j, e));
    }
  }
  return out;
}

}  // namespace pairdecomp
