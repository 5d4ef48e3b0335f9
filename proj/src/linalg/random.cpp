#include "specconv/linalg/random.hpp"

#include <cmath>

namespace specconv {

Vec Rng::normal_vector(std::size_t n) {
  Vec v(n);
  for (double& x : v) x = normal();
  return v;
}

Matrix Rng::normal_matrix(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.data()) x = normal();
  return m;
}

Matrix Rng::symmetric_matrix(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = normal();
  return m;
}

Vec Rng::simplex_weights(std::size_t n) {
  Vec w(n);
  double s = 0.0;
  for (double& x : w) {
    x = -std::log(1.0 - uniform());
    s += x;
  }
  for (double& x : w) x /= s;
  return w;
}

Matrix Rng::orthogonal(std::size_t n) {
  // Gram-Schmidt yields R with a positive diagonal, which is exactly the sign fix.
  Matrix g = normal_matrix(n, n);
  Matrix q = orthonormal_basis(g, 1e-12);
  while (q.cols() != n) {
    g = normal_matrix(n, n);
    q = orthonormal_basis(g, 1e-12);
  }
  return q;
}

Matrix Rng::spd(std::size_t n, double lo, double hi) {
  const Matrix q = orthogonal(n);
  Vec d(n);
  for (double& x : d) x = uniform(lo, hi);
  Matrix m = q * Matrix::diagonal(d) * q.transpose();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = 0.5 * (m(i, j) + m(j, i));
  return m;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace specconv
