#include "specconv/linalg/decompositions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specconv/errors.hpp"

namespace specconv {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;

}  // namespace

SymEigResult sym_eig(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("sym_eig: matrix is not square");
  if (!m.is_symmetric(1e-12)) throw InputError("sym_eig: matrix is not symmetric");
  const std::size_t n = m.rows();
  Matrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
  Matrix q = Matrix::identity(n);
  const double fro = a.frobenius_norm();

  // Sweeping past the 1e-12 relative target is cheap (quadratic convergence) and
  // buys eigenvalues accurate to working precision.
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-15 * fro) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        a(p, r) = a(r, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double qkp = q(k, p), qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  SymEigResult out{Vec(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = q(i, order[k]);
  }
  return out;
}

Matrix complete_orthonormal(const Matrix& q) {
  const std::size_t n = q.rows();
  Matrix aug(n, q.cols() + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < q.cols(); ++j) aug(i, j) = q(i, j);
    aug(i, q.cols() + i) = 1.0;
  }
  Matrix full = orthonormal_basis(aug, 1e-8);
  // orthonormal_basis keeps the leading columns of q unchanged up to rounding.
  if (full.cols() != n) throw std::runtime_error("complete_orthonormal: rank deficiency");
  return full;
}

SvdResult svd(const Matrix& m) {
  if (m.rows() < m.cols()) {
    SvdResult t = svd(m.transpose());
    return {std::move(t.v), std::move(t.singular_values), std::move(t.u)};
  }
  const std::size_t rows = m.rows(), n = m.cols();
  Matrix a = m;
  Matrix v = Matrix::identity(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
          alpha += a(k, p) * a(k, p);
          beta += a(k, r) * a(k, r);
          gamma += a(k, p) * a(k, r);
        }
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < rows; ++k) {
          const double akp = a(k, p), akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkr = v(k, r);
          v(k, p) = c * vkp - s * vkr;
          v(k, r) = s * vkp + c * vkr;
        }
      }
    if (!rotated) break;
  }

  Vec sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = norm2(a.col(j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  const double smax = n > 0 ? sigma[order[0]] : 0.0;
  SvdResult out;
  out.singular_values.resize(n);
  out.v = Matrix(n, n);
  std::vector<Vec> ucols;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.singular_values[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (sigma[j] > 1e-14 * smax * static_cast<double>(rows) && sigma[j] > 0.0) {
      Vec u = a.col(j);
      for (double& x : u) x /= sigma[j];
      ucols.push_back(std::move(u));
    }
  }
  // Columns for (numerically) zero singular values come from completing the basis.
  Matrix partial(rows, ucols.size());
  for (std::size_t k = 0; k < ucols.size(); ++k)
    for (std::size_t i = 0; i < rows; ++i) partial(i, k) = ucols[k][i];
  out.u = complete_orthonormal(partial);
  return out;
}

}  // namespace specconv
