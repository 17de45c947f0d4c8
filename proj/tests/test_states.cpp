#include <cmath>

#include "doctest.h"
#include "test_support.hpp"

using namespace pairdecomp;
using namespace pairdecomp::testing;

TEST_CASE("StateOperator validation") {
  CHECK_NOTHROW(StateOperator(Matrix::diagonal(std::vector{2.0, 0.0})));
  CHECK_THROWS_AS(StateOperator(Matrix::diagonal(std::vector{1.0, -0.2})), Error);
  Matrix nh(2, 2);
  nh(0, 1) = complex{0.0, 1.0};
  CHECK_THROWS_AS(StateOperator{nh}, Error);
  // Trace need not be one.
  CHECK(StateOperator(Matrix::identity(3)).trace() == 3.0);
}

TEST_CASE("reconstruct") {
  const Decomposition basis(2, {Vector{1.0, 0.0}, Vector{0.0, 1.0}});
  CHECK(distance(reconstruct(basis).matrix(), Matrix::identity(2)) == 0.0);

  const double a = std::sqrt(0.375);
  const double b = std::sqrt(0.125);
  const Decomposition two(2, {Vector{a, b}, Vector{a, -b}});
  CHECK(distance(reconstruct(two).matrix(), Matrix::diagonal(std::vector{0.75, 0.25})) <= 1e-15);

  CHECK(reconstruct(Decomposition(3)).matrix().frobenius_norm() == 0.0);
}

TEST_CASE("is_decomposition_of") {
  Rng rng = make_rng(3);
  const StateOperator tau = random_pd(4, rng);
  const Decomposition spectral = spectral_decomposition(tau);
  CHECK(is_decomposition_of(spectral, tau));
  CHECK_FALSE(is_decomposition_of(spectral, StateOperator(tau.matrix() * complex{2.0})));
  CHECK(is_decomposition_of(random_decomposition(tau, 7, std::uint64_t{9}), tau));
  CHECK_THROWS_AS(is_decomposition_of(spectral, StateOperator(Matrix::identity(3))), Error);
}

TEST_CASE("random_decomposition") {
  Rng rng = make_rng(4);
  const StateOperator tau = random_rank(5, 3, rng);

  // An identity isometry reproduces the spectral decomposition.
  const Decomposition spectral = spectral_decomposition(tau);
  const Decomposition mixed = mix_decomposition(tau, Matrix::identity(3));
  for (std::size_t j = 0; j < 3; ++j) CHECK(norm(mixed[j] - spectral[j]) <= 1e-15);

  const StateOperator half(Matrix::identity(2) * complex{0.5});
  const Decomposition four = random_decomposition(half, 4, std::uint64_t{1});
  CHECK(four.length() == 4);
  CHECK(is_decomposition_of(four, half));
  double total = 0.0;
  for (std::size_t j = 0; j < 4; ++j) total += four.norm_squared(j);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));

  const Decomposition d1 = random_decomposition(tau, 3, std::uint64_t{1});
  const Decomposition d2 = random_decomposition(tau, 3, std::uint64_t{2});
  CHECK(is_decomposition_of(d1, tau));
  CHECK(is_decomposition_of(d2, tau));
  CHECK(norm(d1[0] - d2[0]) > 1e-3);

  try {
    random_decomposition(tau, 2, std::uint64_t{1});
    FAIL("expected LengthTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LengthTooShort);
  }
}

TEST_CASE("haar_unitary is unitary and seeded") {
  Rng a = make_rng(5);
  Rng b = make_rng(5);
  const Matrix u = haar_unitary(6, a);
  CHECK(distance(u.adjoint() * u, Matrix::identity(6)) <= 1e-13);
  CHECK(distance(u, haar_unitary(6, b)) == 0.0);
}

TEST_CASE("pad_to_length") {
  const Decomposition d(2, {Vector{1.0, 0.0}, Vector{0.5, 0.5}});
  const Decomposition p = pad_to_length(d, 4);
  CHECK(p.length() == 4);
  CHECK(norm(p[2]) == 0.0);
  CHECK(norm(p[3]) == 0.0);
  CHECK(distance(reconstruct(p).matrix(), reconstruct(d).matrix()) == 0.0);
  CHECK(pad_to_length(d, 2).vectors() == d.vectors());
  CHECK_THROWS_AS(pad_to_length(d, 1), Error);
}

TEST_CASE("overlap_values") {
  const Decomposition basis(3, {Vector{1.0, 0.0, 0.0}, Vector{0.0, 1.0, 0.0}, Vector{0.0, 0.0, 1.0}});
  const RealMatrix ones = overlap_values(basis, basis);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) CHECK(ones(j, k) == (j == k ? 1.0 : 0.0));

  const RealMatrix zeros = overlap_values(basis, Decomposition(3, {Vector(3), Vector(3)}));
  CHECK(zeros.rows == 3);
  CHECK(zeros.cols == 2);
  for (double v : zeros.values) CHECK(v == 0.0);

  Rng rng = make_rng(6);
  const StateOperator tau = random_pd(3, rng);
  const Decomposition a = random_decomposition(tau, 4, rng);
  const Decomposition b = random_decomposition(tau, 5, rng);
  const RealMatrix m = overlap_values(a, b);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 5; ++k) {
      complex s{};
      for (std::size_t i = 0; i < 3; ++i) s += std::conj(a[j][i]) * b[k][i];
      CHECK(std::abs(m(j, k) - std::abs(s)) <= 1e-12);
    }
}

TEST_CASE("norm partial sums never exceed the spectrum's") {
  Rng rng = make_rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 2 + trial % 7;
    const StateOperator tau = random_state(d, 1 + trial % (d + 2), rng);
    const std::size_t n = d + trial % 4;
    const Decomposition dec = random_decomposition(tau, n, rng);
    std::vector<double> norms;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      norms.push_back(dec.norm_squared(j));
      total += norms.back();
    }
    CHECK(std::abs(total - tau.trace()) <= 1e-10);
    const auto lambda = hermitian_eig(tau.matrix()).eigenvalues;
    for (std::size_t m = 1; m <= d; ++m) CHECK(top_sum(norms, m) <= top_sum(lambda, m) + 1e-12);
  }
  // Equality for the sorted spectral decomposition.
  const StateOperator tau = random_pd(5, rng);
  const Decomposition spectral = spectral_decomposition(tau);
  const auto lambda = hermitian_eig(tau.matrix()).eigenvalues;
  double s = 0.0;
  for (std::size_t m = 0; m < 5; ++m) {
    s += spectral.norm_squared(m);
    CHECK(std::abs(s - top_sum(lambda, m + 1)) <= 1e-14);
  }
}
