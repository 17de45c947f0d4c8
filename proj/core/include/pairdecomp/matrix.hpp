#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pairdecomp {

using complex = std::complex<double>;
using Vector = std::vector<complex>;

/// Dense complex matrix, row-major. Both dimensions are at least one.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t n) { return Matrix(n, n); }
  static Matrix diagonal(std::span<const double> values);
  /// |a><b|
  static Matrix outer(const Vector& a, const Vector& b);
  /// Matrix whose columns are the given vectors (all of equal length).
  static Matrix from_columns(std::span<const Vector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const complex> entries() const noexcept { return data_; }

  Matrix adjoint() const;
  complex trace() const;
  double frobenius_norm() const;
  /// (A + A*) / 2
  Matrix hermitian_part() const;

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Matrix a, complex s);
Matrix operator*(complex s, Matrix a);
Vector operator*(const Matrix& a, const Vector& v);

/// Conjugate-linear in the first argument: <a|b>.
complex inner(const Vector& a, const Vector& b);
double norm(const Vector& v);
Vector scaled(const Vector& v, complex s);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);

/// Nonnegative real matrix, used for overlap moduli.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

}  // namespace pairdecomp
