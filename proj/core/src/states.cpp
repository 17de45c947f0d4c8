#include "pairdecomp/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "pairdecomp/error.hpp"

namespace pairdecomp {

StateOperator::StateOperator(const Matrix& m) {
  if (m.empty() || !m.square()) throw Error(ErrorCode::DimensionMismatch, "state must be square");
  if (!is_hermitian(m)) throw Error(ErrorCode::NotHermitian, "state operator");
  m_ = m.hermitian_part();
  const HermitianEig eig = hermitian_eig(m_);
  const double scale = std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
  if (eig.eigenvalues.back() < -kNegativeClamp * scale) {
    throw Error(ErrorCode::NotPSD, "state operator has a negative eigenvalue");
  }
}

StateOperator StateOperator::zero(std::size_t dim) { return StateOperator(Matrix(dim, dim), Unchecked{}); }

StateOperator make_state_unchecked(Matrix m) {
  return StateOperator(m.hermitian_part(), StateOperator::Unchecked{});
}

Decomposition::Decomposition(std::size_t dim, std::vector<Vector> vectors)
    : dim_(dim), vectors_(std::move(vectors)) {
  for (const auto& v : vectors_) {
    if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "decomposition vector length");
  }
}

void Decomposition::push_back(Vector v) {
  if (v.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "decomposition vector length");
  vectors_.push_back(std::move(v));
}

double Decomposition::norm_squared(std::size_t j) const {
  double s = 0.0;
  for (const auto& z : vectors_[j]) s += std::norm(z);
  return s;
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

StateOperator reconstruct(const Decomposition& d) {
  Matrix m(d.dim(), d.dim());
  for (const auto& v : d.vectors()) m += Matrix::outer(v, v);
  return make_state_unchecked(std::move(m));
}

bool is_decomposition_of(const Decomposition& d, const StateOperator& tau, double tol) {
  if (d.dim() != tau.dim()) throw Error(ErrorCode::DimensionMismatch, "decomposition vs state");
  const double residual = (reconstruct(d).matrix() - tau.matrix()).frobenius_norm();
  return residual <= tol * std::max(1.0, tau.matrix().frobenius_norm());
}

Decomposition spectral_decomposition(const StateOperator& tau) {
  const HermitianEig eig = hermitian_eig(tau.matrix());
  const std::size_t n = tau.dim();
  const double floor = round_off_floor(n, std::max(eig.eigenvalues.front(), 0.0));
  Decomposition d(n);
  for (std::size_t e = 0; e < n; ++e) {
    const double l = eig.eigenvalues[e];
    d.push_back(l > floor ? scaled(eig.eigenvectors.column(e), std::sqrt(l)) : Vector(n));
  }
  return d;
}

Decomposition mix_decomposition(const StateOperator& tau, const Matrix& isometry, double rank_tol) {
  const HermitianEig eig = hermitian_eig(tau.matrix());
  const std::size_t r = numerical_rank(eig.eigenvalues, rank_tol);
  const std::size_t n = isometry.rows();
  if (n < r) throw Error(ErrorCode::LengthTooShort, "decomposition shorter than the rank");
  if (r > 0 && isometry.cols() < r) throw Error(ErrorCode::DimensionMismatch, "isometry has too few columns");

  Decomposition d(tau.dim());
  for (std::size_t j = 0; j < n; ++j) {
    Vector chi(tau.dim());
    for (std::size_t k = 0; k < r; ++k) {
      const complex w = isometry(j, k) * std::sqrt(eig.eigenvalues[k]);
      for (std::size_t i = 0; i < tau.dim(); ++i) chi[i] += w * eig.eigenvectors(i, k);
    }
    d.push_back(std::move(chi));
  }
  return d;
}

Decomposition random_decomposition(const StateOperator& tau, std::size_t length, Rng& rng,
                                   double rank_tol) {
  const std::size_t r = support_info(tau.matrix(), rank_tol).rank;
  if (length < r) throw Error(ErrorCode::LengthTooShort, "decomposition shorter than the rank");
  if (length == 0) return Decomposition(tau.dim());
  return mix_decomposition(tau, haar_unitary(length, rng), rank_tol);
}

Decomposition random_decomposition(const StateOperator& tau, std::size_t length, std::uint64_t seed,
                                   double rank_tol) {
  Rng rng = make_rng(seed);
  return random_decomposition(tau, length, rng, rank_tol);
}

Decomposition pad_to_length(const Decomposition& d, std::size_t n) {
  if (n < d.length()) throw Error(ErrorCode::TooShort, "padding target below current length");
  std::vector<Vector> vectors = d.vectors();
  vectors.resize(n, Vector(d.dim()));
  return Decomposition(d.dim(), std::move(vectors));
}

RealMatrix overlap_values(const Decomposition& a, const Decomposition& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "overlap of decompositions");
  RealMatrix m(a.length(), b.length());
  for (std::size_t j = 0; j < a.length(); ++j)
    for (std::size_t k = 0; k < b.length(); ++k) m(j, k) = std::abs(inner(a[j], b[k]));
  return m;
}

Matrix ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = complex{re, im};
    }
  return g;
}

Matrix haar_unitary(std::size_t n, Rng& rng) {
  Matrix q = ginibre(n, n, rng);
  // Modified Gram-Schmidt; dividing by the positive column norm keeps diag(R) > 0.
  for (std::size_t j = 0; j < n; ++j) {
    Vector v = q.column(j);
    for (std::size_t k = 0; k < j; ++k) {
      const Vector u = q.column(k);
      const complex proj = inner(u, v);
      for (std::size_t i = 0; i < n; ++i) v[i] -= proj * u[i];
    }
    q.set_column(j, scaled(v, 1.0 / norm(v)));
  }
  return q;
}

StateOperator random_state(std::size_t dim, std::size_t columns, Rng& rng) {
  const Matrix b = ginibre(dim, columns, rng);
  Matrix m = b * b.adjoint();
  m *= 1.0 / m.trace().real();
  return make_state_unchecked(std::move(m));
}

double top_sum(std::span<const double> values, std::size_t m) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t j = 0; j < std::min(m, sorted.size()); ++j) s += sorted[j];
  return s;
}

}  // namespace pairdecomp
