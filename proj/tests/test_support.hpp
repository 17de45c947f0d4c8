#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "pairdecomp/pairdecomp.hpp"

namespace pairdecomp::testing {

inline StateOperator random_pd(std::size_t d, Rng& rng) { return random_state(d, 2 * d, rng); }

inline StateOperator random_rank(std::size_t d, std::size_t r, Rng& rng) {
  return random_state(d, r, rng);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    m = std::max(m, std::abs(x - y));
  }
  return m;
}

inline double distance(const Matrix& a, const Matrix& b) { return (a - b).frobenius_norm(); }

inline StateOperator diag_state(std::vector<double> v) {
  return StateOperator(Matrix::diagonal(v));
}

inline StateOperator pure_state(const Vector& v) { return StateOperator(Matrix::outer(v, v)); }

/// Gram matrix <psi_k|phi_j>.
inline Matrix cross_gram(const Decomposition& psi, const Decomposition& phi) {
  Matrix g(psi.length(), phi.length());
  for (std::size_t k = 0; k < psi.length(); ++k)
    for (std::size_t j = 0; j < phi.length(); ++j) g(k, j) = inner(psi[k], phi[j]);
  return g;
}

/// Weights majorized by `lambda`: a random product of T-transforms.
inline std::vector<double> random_averaging(std::vector<double> lambda, Rng& rng, int rounds = 12) {
  std::uniform_int_distribution<std::size_t> pick(0, lambda.size() - 1);
  std::uniform_real_distribution<double> mix(0.0, 1.0);
  for (int r = 0; r < rounds; ++r) {
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    if (i == j) continue;
    const double t = mix(rng);
    const double a = lambda[i];
    const double b = lambda[j];
    lambda[i] = t * a + (1 - t) * b;
    lambda[j] = (1 - t) * a + t * b;
  }
  return lambda;
}

}  // namespace pairdecomp::testing
