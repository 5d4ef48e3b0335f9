#include "specconv/linalg/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "specconv/errors.hpp"

namespace specconv {

Matrix::Matrix(std::size_t rows, std::size_t cols, Vec data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) throw InputError("matrix data size does not match shape");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  return rectangular_diagonal(d.size(), d.size(), d);
}

Matrix Matrix::rectangular_diagonal(std::size_t rows, std::size_t cols, std::span<const double> d) {
  if (d.size() > std::min(rows, cols)) throw InputError("diagonal longer than min(rows, cols)");
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, Vec(v.begin(), v.end()));
}

Vec Matrix::col(std::size_t j) const {
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

bool Matrix::is_symmetric(double rel_tol) const {
  if (rows_ != cols_) return false;
  const double scale = 1.0 + frobenius_norm();
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix shape mismatch in *");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vec operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw InputError("matrix-vector shape mismatch");
  Vec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("dot: length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

Vec add(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("add: length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InputError("sub: length mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec scale(double s, std::span<const double> a) {
  Vec out(a.begin(), a.end());
  for (double& v : out) v *= s;
  return out;
}

Vec partial_sums(std::span<const double> a) {
  Vec out(a.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = (s += a[i]);
  return out;
}

bool solve_linear(Matrix a, Vec b, Vec& x, double pivot_tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw InputError("solve_linear: shape mismatch");
  double amax = 0.0;
  for (double v : a.data()) amax = std::max(amax, std::abs(v));
  if (amax == 0.0) return n == 0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (std::abs(a(p, k)) <= pivot_tol * amax) return false;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(b[k], b[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return true;
}

Matrix orthonormal_basis(const Matrix& a, double tol) {
  double scale_ref = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) scale_ref = std::max(scale_ref, norm2(a.col(j)));
  std::vector<Vec> basis;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Vec v = a.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : basis) {
        const double c = dot(q, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
      }
    const double nv = norm2(v);
    if (nv <= tol * std::max(scale_ref, 1e-300) || nv == 0.0) continue;
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  Matrix q(a.rows(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) q(i, j) = basis[j][i];
  return q;
}

}  // namespace specconv
