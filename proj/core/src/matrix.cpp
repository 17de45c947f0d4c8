#include "pairdecomp/matrix.hpp"

#include <cmath>

#include "pairdecomp/error.hpp"

namespace pairdecomp {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, complex{0.0, 0.0}) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0 || data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows x cols");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> values) {
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

Matrix Matrix::outer(const Vector& a, const Vector& b) {
  Matrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
  if (columns.empty()) throw Error(ErrorCode::DimensionMismatch, "no columns");
  Matrix m(columns.front().size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

complex Matrix::trace() const {
  complex t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

Matrix Matrix::hermitian_part() const {
  Matrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out(i, i) = (*this)(i, i).real();
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const complex z = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
      out(i, j) = z;
      out(j, i) = std::conj(z);
    }
  }
  return out;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "column length");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, complex s) { return a *= s; }
Matrix operator*(complex s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const complex aik = a(i, k);
      if (aik == complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  Vector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    complex s{};
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
    out[i] = s;
  }
  return out;
}

complex inner(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "inner product");
  complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const Vector& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Vector scaled(const Vector& v, complex s) {
  Vector out(v);
  for (auto& z : out) z *= s;
  return out;
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum");
  Vector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference");
  Vector out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

}  // namespace pairdecomp
