#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pairdecomp/linalg.hpp"
#include "pairdecomp/matrix.hpp"

namespace pairdecomp {

/// Positive semidefinite operator. Trace normalization is not required.
class StateOperator {
 public:
  /// Validates Hermiticity (1e-10 relative) and positivity (eigenvalues above
  /// -1e-10 lambda_max); stores the Hermitian part.
  explicit StateOperator(const Matrix& m);

  static StateOperator zero(std::size_t dim);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.rows(); }
  double trace() const { return m_.trace().real(); }

 private:
  struct Unchecked {};
  StateOperator(Matrix m, Unchecked) : m_(std::move(m)) {}
  friend StateOperator make_state_unchecked(Matrix m);

  Matrix m_;
};

/// For operators that are PSD by construction (sums of outer products,
/// congruences); only Hermitizes.
StateOperator make_state_unchecked(Matrix m);

/// Ordered list of (unnormalized) vectors. Order matters: objectives pair by index.
class Decomposition {
 public:
  Decomposition() = default;
  explicit Decomposition(std::size_t dim, std::vector<Vector> vectors = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t length() const noexcept { return vectors_.size(); }
  const std::vector<Vector>& vectors() const noexcept { return vectors_; }
  const Vector& operator[](std::size_t j) const { return vectors_[j]; }

  void push_back(Vector v);
  double norm_squared(std::size_t j) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Vector> vectors_;
};

using WeightVector = std::vector<double>;

using Rng = std::mt19937_64;

/// Deterministic generator for (seed, stream); independent streams per sample.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

StateOperator reconstruct(const Decomposition& d);

bool is_decomposition_of(const Decomposition& d, const StateOperator& tau, double tol = 1e-9);

/// sqrt(lambda_j) e_j for the decreasing spectrum; length dim, null directions
/// give exact zero vectors.
Decomposition spectral_decomposition(const StateOperator& tau);

/// chi_j = sum_k U[j,k] sqrt(lambda_k) e_k over the rank-r spectral data; U is
/// an n x r isometry.
Decomposition mix_decomposition(const StateOperator& tau, const Matrix& isometry,
                                double rank_tol = kDefaultRankTol);

Decomposition random_decomposition(const StateOperator& tau, std::size_t length, Rng& rng,
                                   double rank_tol = kDefaultRankTol);
Decomposition random_decomposition(const StateOperator& tau, std::size_t length,
                                   std::uint64_t seed, double rank_tol = kDefaultRankTol);

Decomposition pad_to_length(const Decomposition& d, std::size_t n);

/// M[j,k] = |<a_j|b_k>|
RealMatrix overlap_values(const Decomposition& a, const Decomposition& b);

/// Complex Gaussian matrix (entries with unit variance).
Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary: Gram-Schmidt of a Ginibre matrix, positive R diagonal.
Matrix haar_unitary(std::size_t n, Rng& rng);

/// B B* / tr(B B*) for a dim x columns Ginibre B; rank min(dim, columns).
StateOperator random_state(std::size_t dim, std::size_t columns, Rng& rng);

/// Sum of the m largest entries; m beyond the size sums everything.
double top_sum(std::span<const double> values, std::size_t m);

}  // namespace pairdecomp
