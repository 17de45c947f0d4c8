#include "pairdecomp/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pairdecomp/error.hpp"

namespace pairdecomp {
namespace {

std::vector<double> sorted_padded(std::span<const double> values, std::size_t n) {
  std::vector<double> out(values.begin(), values.end());
  out.resize(n, 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// entries down to -tol are accepted as round-off zeros
void require_nonnegative(std::span<const double> values, double tol) {
  for (double v : values)
    if (!(v >= -tol)) throw Error(ErrorCode::NegativeEntry, "majorization needs nonnegative entries");
}

std::vector<double> clamped_spectrum(const StateOperator& tau) {
  std::vector<double> l = hermitian_eig(tau.matrix()).eigenvalues;
  for (double& v : l) v = std::max(v, 0.0);
  return l;
}

}  // namespace

PartialSums partial_sums(std::span<const double> values) {
  const std::vector<double> sorted = sorted_padded(values, values.size());
  PartialSums ps;
  ps.sums.reserve(sorted.size() + 1);
  ps.sums.push_back(0.0);
  for (double v : sorted) ps.sums.push_back(ps.sums.back() + v);
  return ps;
}

std::optional<std::size_t> majorization_violation(std::span<const double> lambda,
                                                  std::span<const double> p, double tol) {
  require_nonnegative(lambda, tol);
  require_nonnegative(p, tol);
  const std::size_t n = std::max(lambda.size(), p.size());
  const std::vector<double> l = sorted_padded(lambda, n);
  const std::vector<double> q = sorted_padded(p, n);
  double sl = 0.0;
  double sq = 0.0;
  const double scale = std::max(1.0, std::accumulate(l.begin(), l.end(), 0.0));
  for (std::size_t m = 0; m < n; ++m) {
    sl += l[m];
    sq += q[m];
    if (sq > sl + tol * scale) return m + 1;
  }
  if (std::abs(sq - sl) > tol * scale) return n;
  return std::nullopt;
}

bool majorizes(std::span<const double> lambda, std::span<const double> p, double tol) {
  return !majorization_violation(lambda, p, tol).has_value();
}

Decomposition nielsen_decomposition(const StateOperator& tau, std::span<const double> p) {
  const std::vector<double> spectrum = clamped_spectrum(tau);
  if (auto bad = majorization_violation(spectrum, p)) {
    throw Error(ErrorCode::NotMajorized,
                "weights are not majorized by the spectrum (prefix " + std::to_string(*bad) + ")");
  }
  const std::size_t d = tau.dim();
  const std::size_t n = p.size();
  const std::size_t big_n = std::max(n, d);

  // Working vectors start as the spectral decomposition, zero-padded to big_n.
  std::vector<Vector> v = spectral_decomposition(tau).vectors();
  v.resize(big_n, Vector(d));
  std::vector<double> x(spectrum);
  x.resize(big_n, 0.0);

  std::vector<double> target(p.begin(), p.end());
  target.resize(big_n, 0.0);
  std::vector<std::size_t> order(big_n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return target[i] > target[j]; });
  std::vector<double> y(big_n);
  for (std::size_t i = 0; i < big_n; ++i) y[i] = target[order[i]];

  const double total = std::accumulate(x.begin(), x.end(), 0.0);
  const double eps = 64.0 * std::numeric_limits<double>::epsilon() * std::max(total, 1e-300);

  // j: last index still above its target; k: first later index below its
  // target. Moving min(x_j - y_j, y_k - x_k) from j to k fixes one of them and
  // keeps x sorted and majorizing y. Unfixed vectors stay mutually orthogonal,
  // so each move is a plane rotation of the pair.
  for (std::size_t iter = 0; iter < 2 * big_n; ++iter) {
    std::size_t j = big_n;
    for (std::size_t i = big_n; i-- > 0;) {
      if (x[i] - y[i] > eps) {
        j = i;
        break;
      }
    }
    if (j == big_n) break;
    std::size_t k = big_n;
    for (std::size_t i = j + 1; i < big_n; ++i) {
      if (y[i] - x[i] > eps) {
        k = i;
        break;
      }
    }
    if (k == big_n) break;

    const double a = x[j];
    const double b = x[k];
    const double delta = std::min(a - y[j], y[k] - b);
    const double new_j = a - delta;
    const double cos2 = std::clamp((new_j - b) / (a - b), 0.0, 1.0);
    const double c = std::sqrt(cos2);
    const double s = std::sqrt(1.0 - cos2);
    const Vector vj = v[j];
    const Vector vk = v[k];
    v[j] = scaled(vj, c) + scaled(vk, s);
    v[k] = scaled(vk, c) - scaled(vj, s);
    x[j] = new_j;
    x[k] = a + b - new_j;
  }

  std::vector<Vector> out(n, Vector(d));
  for (std::size_t i = 0; i < big_n; ++i) {
    if (order[i] < n) out[order[i]] = v[i];
  }
  return Decomposition(d, std::move(out));
}

double overlap_gap(const Decomposition& d, const Decomposition& d_prime,
                   const StateOperator& tau, std::size_t m, double tol) {
  if (d.dim() != tau.dim() || d_prime.dim() != tau.dim())
    throw Error(ErrorCode::DimensionMismatch, "overlap_gap dimensions");
  if (m == 0) throw Error(ErrorCode::InvalidArgument, "m must be at least 1");
  if (!is_decomposition_of(d, tau, tol) || !is_decomposition_of(d_prime, tau, tol))
    throw Error(ErrorCode::NotADecomposition, "overlap_gap inputs must decompose tau");

  const std::vector<double> lambda = clamped_spectrum(tau);
  const double lhs = top_sum(lambda, m);
  double rhs = 0.0;
  const std::size_t common = std::min({m, d.length(), d_prime.length()});
  for (std::size_t j = 0; j < common; ++j) rhs += std::abs(inner(d[j], d_prime[j]));
  return lhs - rhs;
}

EqualityCertificate certify_equality(const Decomposition& d, const Decomposition& d_prime,
                                     const StateOperator& tau, std::size_t m, double tol,
                                     double rank_tol) {
  EqualityCertificate cert;
  cert.m = m;
  cert.gap = overlap_gap(d, d_prime, tau, m, tol);

  const std::vector<double> lambda = clamped_spectrum(tau);
  const double lmax = lambda.front();
  const double scale = std::max(1.0, lmax);
  const Vector zero(tau.dim());
  double residual = 0.0;
  bool phases_ok = true;

  for (std::size_t j = 0; j < m; ++j) {
    const Vector& chi = j < d.length() ? d[j] : zero;
    const Vector& chi_p = j < d_prime.length() ? d_prime[j] : zero;
    const double lj = j < lambda.size() ? lambda[j] : 0.0;

    residual = std::max(residual, norm(tau.matrix() * chi - scaled(chi, lj)) / scale);
    if (lmax > 0.0 && lj > rank_tol * lmax) {
      const complex eps = inner(chi, chi_p) / lj;
      residual = std::max(residual, norm(chi_p - scaled(chi, eps)) / scale);
      phases_ok = phases_ok && std::abs(std::abs(eps) - 1.0) <= tol;
      cert.phases.push_back(eps);
    } else {
      // Zero eigenvalue: both vectors must vanish; no phase to recover.
      residual = std::max({residual, norm(chi) / scale, norm(chi_p) / scale});
      cert.phases.push_back(1.0);
    }
  }
  cert.max_residual = residual;
  cert.holds = cert.gap <= tol * scale && residual <= tol && phases_ok;
  if (!cert.holds) cert.phases.clear();
  return cert;
}

}  // namespace pairdecomp
