#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace specconv {

using Vec = std::vector<double>;

/// Dense row-major matrix. Small and value-semantic; sized for desk-scale work.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, Vec data);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  /// rows x cols matrix with `d` on the main diagonal.
  static Matrix rectangular_diagonal(std::size_t rows, std::size_t cols, std::span<const double> d);
  static Matrix column(std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  Vec col(std::size_t j) const;

  const Vec& data() const { return data_; }
  Vec& data() { return data_; }

  Matrix transpose() const;
  double frobenius_norm() const;
  bool is_symmetric(double rel_tol) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vec data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, std::span<const double> x);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double norm_inf(std::span<const double> a);
Vec add(std::span<const double> a, std::span<const double> b);
Vec sub(std::span<const double> a, std::span<const double> b);
Vec scale(double s, std::span<const double> a);
/// Prefix sums: out[l] = a[0] + ... + a[l].
Vec partial_sums(std::span<const double> a);

/// Solves the square system A x = b by Gaussian elimination with partial pivoting.
/// Returns false when a pivot falls below `pivot_tol` (relative to the largest entry).
bool solve_linear(Matrix a, Vec b, Vec& x, double pivot_tol = 1e-13);

/// Orthonormal columns spanning the columns of `a` (modified Gram-Schmidt, run twice).
/// Columns whose residual norm falls below `tol` times their original norm are dropped.
Matrix orthonormal_basis(const Matrix& a, double tol = 1e-10);

}  // namespace specconv
