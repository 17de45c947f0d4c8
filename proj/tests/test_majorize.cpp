#include <algorithm>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "test_support.hpp"

using namespace pairdecomp;
using namespace pairdecomp::testing;

namespace {

std::vector<double> norms_squared(const Decomposition& d) {
  std::vector<double> out;
  for (std::size_t j = 0; j < d.length(); ++j) out.push_back(d.norm_squared(j));
  return out;
}

// Brute-force majorization check with sorting done here rather than in the library.
bool majorizes_naive(std::vector<double> lambda, std::vector<double> p) {
  const std::size_t n = std::max(lambda.size(), p.size());
  lambda.resize(n, 0.0);
  p.resize(n, 0.0);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  std::sort(p.begin(), p.end(), std::greater<>());
  double a = 0.0, b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    a += lambda[i];
    b += p[i];
    if (b > a + 1e-10) return false;
  }
  return std::abs(a - b) <= 1e-10;
}

Decomposition random_remix(const StateOperator& tau, std::size_t length, Rng& rng) {
  return random_decomposition(tau, length, rng);
}

}  // namespace

TEST_CASE("partial sums") {
  const PartialSums s = partial_sums(std::vector{0.2, 0.5, 0.3});
  REQUIRE(s.sums.size() == 4);
  CHECK(s.sums[0] == 0.0);
  CHECK(s.sums[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.sums[2] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(s.sums[3] == doctest::Approx(1.0).epsilon(1e-15));

  Rng rng = make_rng(20);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(1 + trial % 9);
    for (double& x : v) x = u(rng);
    const auto ps = partial_sums(v).sums;
    for (std::size_t m = 1; m < ps.size(); ++m) {
      CHECK(ps[m] >= ps[m - 1]);
      if (m >= 2) CHECK(ps[m] - ps[m - 1] <= ps[m - 1] - ps[m - 2] + 1e-15);
    }
  }
}

TEST_CASE("majorizes examples") {
  CHECK(majorizes(std::vector{0.75, 0.25}, std::vector{0.5, 0.5}));
  CHECK_FALSE(majorizes(std::vector{0.5, 0.5}, std::vector{0.75, 0.25}));
  CHECK(majorization_violation(std::vector{0.5, 0.5}, std::vector{0.75, 0.25}) == std::size_t{1});
  const std::vector<double> any{0.1, 0.6, 0.3};
  CHECK(majorizes(any, any));
  // different totals
  CHECK(majorization_violation(std::vector{0.5, 0.5}, std::vector{0.4, 0.4}) == std::size_t{2});
  // zero padding: a length-4 list can be majorized by a length-2 spectrum
  CHECK(majorizes(std::vector{0.6, 0.4}, std::vector{0.3, 0.3, 0.2, 0.2}));
  CHECK_FALSE(majorizes(std::vector{0.3, 0.3, 0.2, 0.2}, std::vector{0.6, 0.4}));

  try {
    majorizes(std::vector{1.2, -0.2}, std::vector{0.5, 0.5});
    FAIL("expected NegativeEntry");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeEntry);
  }
}

TEST_CASE("majorizes agrees with a direct check and with partial sums") {
  Rng rng = make_rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<double> lambda(n);
    for (double& x : lambda) x = u(rng);
    const double total = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    for (double& x : lambda) x /= total;
    std::vector<double> p = trial % 2 ? random_averaging(lambda, rng) : lambda;
    if (trial % 3 == 0) {
      for (double& x : p) x = u(rng);
      const double t = std::accumulate(p.begin(), p.end(), 0.0);
      for (double& x : p) x /= t;
    }
    const bool m = majorizes(lambda, p);
    CHECK(m == majorizes_naive(lambda, p));
    if (m) {
      const auto a = partial_sums(lambda).sums;
      const auto b = partial_sums(p).sums;
      for (std::size_t k = 0; k < a.size(); ++k) CHECK(b[k] <= a[k] + 1e-10);
    }
  }
}

TEST_CASE("nielsen_decomposition examples") {
  const StateOperator tau = diag_state({0.75, 0.25});
  const Decomposition half = nielsen_decomposition(tau, std::vector{0.5, 0.5});
  REQUIRE(half.length() == 2);
  CHECK(max_abs_diff(norms_squared(half), {0.5, 0.5}) <= 1e-14);
  CHECK(is_decomposition_of(half, tau, 1e-14));
  // hand-checked form: (sqrt .375, +-sqrt .125) up to phases
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(std::abs(std::abs(half[j][0]) - std::sqrt(0.375)) <= 1e-14);
    CHECK(std::abs(std::abs(half[j][1]) - std::sqrt(0.125)) <= 1e-14);
  }

  // p = spectrum: scaled eigenvectors, no rotation
  Rng rng = make_rng(22);
  const StateOperator t5 = random_pd(5, rng);
  const auto eig = hermitian_eig(t5.matrix());
  const Decomposition spectral = nielsen_decomposition(t5, eig.eigenvalues);
  const Decomposition reference = spectral_decomposition(t5);
  for (std::size_t j = 0; j < 5; ++j) CHECK(norm(spectral[j] - reference[j]) <= 1e-14);

  try {
    nielsen_decomposition(tau, std::vector{0.9, 0.1});
    FAIL("expected NotMajorized");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMajorized);
    CHECK(std::string(e.what()).find('1') != std::string::npos);
  }
}

TEST_CASE("nielsen round trip") {
  Rng rng = make_rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 2 + trial % 5;
    const StateOperator tau = trial % 4 == 0 ? random_rank(d, 1 + trial % d, rng) : random_pd(d, rng);
    std::vector<double> lambda = hermitian_eig(tau.matrix()).eigenvalues;
    lambda.resize(d + trial % 4, 0.0);
    std::vector<double> p = random_averaging(lambda, rng, 20);
    std::shuffle(p.begin(), p.end(), rng);
    const Decomposition out = nielsen_decomposition(tau, p);
    CHECK(out.length() == p.size());
    CHECK(max_abs_diff(norms_squared(out), p) <= 1e-9);
    CHECK(is_decomposition_of(out, tau, 1e-9));
    CHECK(majorizes(lambda, norms_squared(out), 1e-9));
  }

  // uniform weights are always reachable
  for (std::size_t d = 2; d <= 6; ++d) {
    const StateOperator tau = random_pd(d, rng);
    const std::vector<double> uniform(d, tau.trace() / static_cast<double>(d));
    const Decomposition out = nielsen_decomposition(tau, uniform);
    CHECK(max_abs_diff(norms_squared(out), uniform) <= 1e-12);
    CHECK(is_decomposition_of(out, tau, 1e-12));
  }
}

TEST_CASE("overlap_gap") {
  Rng rng = make_rng(24);
  const StateOperator tau = random_pd(4, rng);
  const Decomposition eig = spectral_decomposition(tau);
  for (std::size_t m = 1; m <= 4; ++m) CHECK(std::abs(overlap_gap(eig, eig, tau, m)) <= 1e-12);

  std::vector<Vector> twisted;
  for (std::size_t j = 0; j < 4; ++j) twisted.push_back(scaled(eig[j], std::polar(1.0, 0.7 * j)));
  const Decomposition twist(4, twisted);
  for (std::size_t m = 1; m <= 4; ++m) CHECK(std::abs(overlap_gap(eig, twist, tau, m)) <= 1e-12);

  double worst = 1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + trial % 6;
    const StateOperator t = trial % 5 == 0 ? random_rank(d, 1 + trial % d, rng) : random_pd(d, rng);
    const Decomposition a = random_remix(t, d + trial % 3, rng);
    const Decomposition b = random_remix(t, d + (trial / 3) % 3, rng);
    const std::size_t top = std::min(a.length(), b.length());
    for (std::size_t m = 1; m <= top; ++m) worst = std::min(worst, overlap_gap(a, b, t, m));
    // at full length the bound is the fidelity of the state with itself
    const RealMatrix ov = overlap_values(a, b);
    double diag = 0.0;
    for (std::size_t j = 0; j < top; ++j) diag += ov(j, j);
    CHECK(std::abs(fidelity(t, t) - t.trace()) <= 1e-9);
    CHECK(diag <= fidelity(t, t) + 1e-8);
    // single-decomposition case: sum of the m largest norms is bounded by the spectrum
    CHECK(overlap_gap(a, a, t, top) >= -1e-8);
  }
  CHECK(worst >= -1e-8);

  const Decomposition bogus(2, {Vector{1.0, 0.0}, Vector{0.0, 0.0}});
  try {
    overlap_gap(bogus, bogus, diag_state({0.5, 0.5}), 1);
    FAIL("expected NotADecomposition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotADecomposition);
  }
}

TEST_CASE("certify_equality") {
  Rng rng = make_rng(25);
  const StateOperator tau = random_pd(3, rng);
  const Decomposition eig = spectral_decomposition(tau);
  const EqualityCertificate self = certify_equality(eig, eig, tau, 3);
  CHECK(self.holds);
  REQUIRE(self.phases.size() == 3);
  for (const complex& e : self.phases) CHECK(std::abs(e - complex{1.0}) <= 1e-10);

  std::vector<Vector> rotated;
  for (std::size_t j = 0; j < 3; ++j) rotated.push_back(scaled(eig[j], complex{0.0, 1.0}));
  const EqualityCertificate twist = certify_equality(eig, Decomposition(3, rotated), tau, 3);
  CHECK(twist.holds);
  for (const complex& e : twist.phases) {
    CHECK(std::abs(e - complex{0.0, 1.0}) <= 1e-10);
    CHECK(std::abs(std::abs(e) - 1.0) <= 1e-10);
  }

  int generic = 0;
  for (int trial = 0; trial < 200 && generic < 20; ++trial) {
    const Decomposition a = random_remix(tau, 3, rng);
    const Decomposition b = random_remix(tau, 3, rng);
    const EqualityCertificate c = certify_equality(a, b, tau, 3);
    if (c.gap <= 0.01) continue;
    ++generic;
    CHECK_FALSE(c.holds);
    CHECK(c.phases.empty());
  }
  CHECK(generic == 20);

  // zero eigenvalue: excluded from phase recovery, still certified
  const StateOperator singular = diag_state({0.6, 0.4, 0.0});
  const Decomposition se = spectral_decomposition(singular);
  const EqualityCertificate sc = certify_equality(se, se, singular, 3);
  CHECK(sc.holds);
  CHECK(sc.max_residual <= 1e-12);
}
