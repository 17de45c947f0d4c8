#include "pairdecomp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pairdecomp/error.hpp"

namespace pairdecomp {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

void require_square(const Matrix& a, const char* what) {
  if (a.empty() || !a.square()) throw Error(ErrorCode::DimensionMismatch, what);
}

double spectral_scale(const std::vector<double>& values) {
  double s = 0.0;
  for (double v : values) s = std::max(s, std::abs(v));
  return s;
}

// Rejects eigenvalues below -kNegativeClamp * scale.
void require_psd(const HermitianEig& eig, const char* what) {
  const double scale = spectral_scale(eig.eigenvalues);
  if (!eig.eigenvalues.empty() && eig.eigenvalues.back() < -kNegativeClamp * scale) {
    throw Error(ErrorCode::NotPSD, what);
  }
}

}  // namespace

double round_off_floor(std::size_t n, double scale) {
  return 32.0 * static_cast<double>(n) * kEps * scale;
}

std::size_t numerical_rank(const std::vector<double>& eigenvalues, double rank_tol) {
  if (eigenvalues.empty() || !(eigenvalues.front() > 0.0)) return 0;
  const double cut = rank_tol * eigenvalues.front();
  return static_cast<std::size_t>(
      std::count_if(eigenvalues.begin(), eigenvalues.end(), [&](double l) { return l > cut; }));
}

bool is_hermitian(const Matrix& a, double rel_tol) {
  if (a.empty() || !a.square()) return false;
  const double scale = std::max(1.0, a.frobenius_norm());
  return (a - a.adjoint()).frobenius_norm() <= rel_tol * scale;
}

HermitianEig hermitian_eig(const Matrix& input) {
  require_square(input, "hermitian_eig needs a square matrix");
  if (!is_hermitian(input)) throw Error(ErrorCode::NotHermitian, "hermitian_eig input");

  const std::size_t n = input.rows();
  Matrix a = input.hermitian_part();
  Matrix v = Matrix::identity(n);
  const double tiny = kEps * kEps * a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double mod = std::abs(apq);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        if (mod <= tiny || mod <= kEps * std::sqrt(std::abs(app * aqq))) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const complex phase = apq / mod;
        const double theta = (aqq - app) / (2.0 * mod);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = diag(1, conj(phase)) R restricted to (p, q).
        const complex jpp = c;
        const complex jpq = s;
        const complex jqp = -s * std::conj(phase);
        const complex jqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p);
          const complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k);
          const complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mod;
        a(q, q) = aqq + t * mod;
        for (std::size_t k = 0; k < n; ++k) {
          const complex vkp = v(k, p);
          const complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi sweep budget exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t e = 0; e < n; ++e) {
    out.eigenvalues[e] = a(order[e], order[e]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, e) = v(i, order[e]);
  }
  return out;
}

Matrix psd_sqrt(const Matrix& a) {
  const HermitianEig eig = hermitian_eig(a);
  require_psd(eig, "psd_sqrt input has a negative eigenvalue");
  const double floor = round_off_floor(a.rows(), std::max(eig.eigenvalues.front(), 0.0));
  return hermitian_function(eig, [&](double l) { return l > floor ? std::sqrt(l) : 0.0; });
}

RankInfo support_info(const Matrix& a, double rank_tol) {
  const HermitianEig eig = hermitian_eig(a);
  const std::size_t n = a.rows();
  const double lmax = eig.eigenvalues.front();

  RankInfo info;
  info.support_projection = Matrix(n, n);
  info.null_projection = Matrix(n, n);
  for (std::size_t e = 0; e < n; ++e) {
    const Vector v = eig.eigenvectors.column(e);
    const bool in_support = lmax > 0.0 && eig.eigenvalues[e] > rank_tol * lmax;
    if (in_support) {
      ++info.rank;
      info.support_projection += Matrix::outer(v, v);
      info.basis.push_back(v);
    } else {
      info.null_projection += Matrix::outer(v, v);
    }
  }
  return info;
}

Matrix geometric_mean(const Matrix& a, const Matrix& b, double rank_tol) {
  require_square(a, "geometric_mean operand");
  if (a.rows() != b.rows() || !b.square())
    throw Error(ErrorCode::DimensionMismatch, "geometric_mean operands differ in size");

  const HermitianEig ea = hermitian_eig(a);
  const HermitianEig eb = hermitian_eig(b);
  for (const HermitianEig* e : {&ea, &eb}) {
    const double lmax = e->eigenvalues.front();
    if (!(lmax > 0.0) || e->eigenvalues.back() <= rank_tol * lmax) {
      throw Error(ErrorCode::Singular, "geometric_mean needs positive definite operands");
    }
  }
  const Matrix a_half = hermitian_function(ea, [](double l) { return std::sqrt(l); });
  const Matrix a_inv_half = hermitian_function(ea, [](double l) { return 1.0 / std::sqrt(l); });
  const Matrix inner_sqrt = psd_sqrt((a_inv_half * b * a_inv_half).hermitian_part());
  return (a_half * inner_sqrt * a_half).hermitian_part();
}

Matrix pinv_sqrt(const Matrix& a, double rank_tol) {
  const HermitianEig eig = hermitian_eig(a);
  const double lmax = eig.eigenvalues.front();
  return hermitian_function(eig, [&](double l) {
    return (lmax > 0.0 && l > rank_tol * lmax) ? 1.0 / std::sqrt(l) : 0.0;
  });
}

Matrix psd_pinv(const Matrix& a, double rank_tol) {
  const HermitianEig eig = hermitian_eig(a);
  const double lmax = eig.eigenvalues.front();
  return hermitian_function(eig, [&](double l) {
    return (lmax > 0.0 && l > rank_tol * lmax) ? 1.0 / l : 0.0;
  });
}

std::vector<double> singular_values(const Matrix& input) {
  Matrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t n = a.cols();
  const double tiny = kEps * kEps * a.frobenius_norm();

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0;
        double beta = 0.0;
        complex gamma{};
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += std::norm(a(k, i));
          beta += std::norm(a(k, j));
          gamma += std::conj(a(k, i)) * a(k, j);
        }
        const double mod = std::abs(gamma);
        if (mod <= tiny || mod <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Rotate the phase out of column j, then a real Hestenes rotation.
        const complex phase = std::conj(gamma / mod);
        const double zeta = (beta - alpha) / (2.0 * mod);
        double t = 1.0 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        if (zeta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const complex ai = a(k, i);
          const complex aj = a(k, j) * phase;
          a(k, i) = c * ai - s * aj;
          a(k, j) = s * ai + c * aj;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "one-sided Jacobi sweep budget exhausted");

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < rows; ++k) s += std::norm(a(k, j));
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  if (sv.size() > rows) sv.resize(rows);
  return sv;
}

double condition_number(const Matrix& a) {
  const std::vector<double> sv = singular_values(a);
  if (sv.back() <= 0.0) return std::numeric_limits<double>::infinity();
  return sv.front() / sv.back();
}

Matrix inverse(const Matrix& a) {
  require_square(a, "inverse needs a square matrix");
  if (!(condition_number(a) <= kMaxCondition)) {
    throw Error(ErrorCode::Singular, "condition number above the invertibility guard");
  }
  const std::size_t n = a.rows();
  Matrix lu = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(lu(r, col)) > std::abs(lu(pivot, col))) pivot = r;
    if (lu(pivot, col) == complex{}) throw Error(ErrorCode::Singular, "zero pivot");
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(lu(pivot, k), lu(col, k));
        std::swap(inv(pivot, k), inv(col, k));
      }
    }
    const complex d = lu(col, col);
    for (std::size_t k = 0; k < n; ++k) {
      lu(col, k) /= d;
      inv(col, k) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const complex f = lu(r, col);
      if (f == complex{}) continue;
      for (std::size_t k = 0; k < n; ++k) {
        lu(r, k) -= f * lu(col, k);
        inv(r, k) -= f * inv(col, k);
      }
    }
  }
  return inv;
}

}  // namespace pairdecomp
