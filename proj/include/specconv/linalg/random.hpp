#pragma once

#include <cstdint>
#include <random>

#include "specconv/linalg/matrix.hpp"

namespace specconv {

/// Seeded generator. Every random routine takes one explicitly; there is no global state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) { return lo + (hi - lo) * unit_(engine_); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }
  std::uint64_t bits() { return engine_(); }

  Vec normal_vector(std::size_t n);
  Matrix normal_matrix(std::size_t rows, std::size_t cols);
  Matrix symmetric_matrix(std::size_t n);
  /// Uniform point of the standard simplex (flat Dirichlet).
  Vec simplex_weights(std::size_t n);
  /// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with positive diag(R).
  Matrix orthogonal(std::size_t n);
  /// Random symmetric positive definite matrix with eigenvalues in [lo, hi].
  Matrix spd(std::size_t n, double lo = 0.5, double hi = 3.0);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// Derives an independent stream seed for sub-trial `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace specconv
