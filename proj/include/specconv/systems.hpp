#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "specconv/linalg/matrix.hpp"

namespace specconv {

class Rng;

enum class SystemKind { Reorder, Abs, AbsReorder, SymEig, SingVal };

/// One of the five concrete FTvN systems (V, W, spectral map).
///
/// | kind       | V          | W        | spectral map       | range cone K          |
/// |------------|------------|----------|--------------------|-----------------------|
/// | Reorder    | R^n        | R^n      | sort descending    | u1 >= ... >= un       |
/// | Abs        | R^n        | R^n      | entrywise |.|      | R^n_+                 |
/// | AbsReorder | R^n        | R^n      | |.| then sort      | u1 >= ... >= un >= 0  |
/// | SymEig     | S^n        | R^n      | eigenvalues        | u1 >= ... >= un       |
/// | SingVal    | R^{m x n}  | R^min    | singular values    | u1 >= ... >= ud >= 0  |
class SpectralSystem {
 public:
  static SpectralSystem reorder(std::size_t n) { return {SystemKind::Reorder, n, 1}; }
  static SpectralSystem abs(std::size_t n) { return {SystemKind::Abs, n, 1}; }
  static SpectralSystem abs_reorder(std::size_t n) { return {SystemKind::AbsReorder, n, 1}; }
  static SpectralSystem sym_eig(std::size_t n) { return {SystemKind::SymEig, n, n}; }
  static SpectralSystem sing_val(std::size_t m, std::size_t n) { return {SystemKind::SingVal, m, n}; }

  /// Parses "reorder:N", "abs:N", "absreorder:N", "symeig:N" or "singval:MxN".
  static SpectralSystem parse(std::string_view text);
  std::string name() const;

  SystemKind kind() const { return kind_; }
  /// Shape of a point of V; vector systems use n x 1.
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim_v() const;
  std::size_t dim_w() const;
  bool is_vector() const { return kind_ == SystemKind::Reorder || kind_ == SystemKind::Abs || kind_ == SystemKind::AbsReorder; }
  bool has_reduced_system() const { return true; }
  /// Range cone is the sorted nonnegative cone {u1 >= ... >= ud >= 0}.
  bool sorted_nonnegative_range() const { return kind_ == SystemKind::AbsReorder || kind_ == SystemKind::SingVal; }
  /// The vector system on W realizing this system's reduced map
  /// (SymEig -> Reorder, SingVal -> AbsReorder, vector systems -> themselves).
  SpectralSystem reduced() const;

  friend bool operator==(const SpectralSystem&, const SpectralSystem&) = default;

 private:
  SpectralSystem(SystemKind k, std::size_t r, std::size_t c);
  SystemKind kind_;
  std::size_t rows_;
  std::size_t cols_;
};

/// Element of V. Vector systems store an n x 1 matrix.
struct PointV {
  Matrix value;

  static PointV vector(Vec v) { return {Matrix::column(v)}; }
  Vec flat() const { return value.data(); }
};

using PointW = Vec;

double inner(const PointV& a, const PointV& b);
double norm(const PointV& a);
PointV operator+(const PointV& a, const PointV& b);
PointV operator-(const PointV& a, const PointV& b);
PointV operator*(double s, const PointV& a);

/// Homogeneous cone {y : <a, y> <= 0 for every inequality row, <e, y> = 0 for every equality row}.
struct ConeDesc {
  std::vector<Vec> inequalities;
  std::vector<Vec> equalities;

  /// Largest violation: max over positive parts of inequality rows and |equality rows|.
  double violation(std::span<const double> y) const;
  bool contains(std::span<const double> y, double tol) const { return violation(y) <= tol; }
};

/// Global comparison tolerance for cones and sets.
inline constexpr double kTol = 1e-8;

void check_point(const SpectralSystem& sys, const PointV& x);
void check_point(const SpectralSystem& sys, std::span<const double> u);

PointW spectral_map(const SpectralSystem& sys, const PointV& x);
ConeDesc range_cone(const SpectralSystem& sys);
ConeDesc polar_cone(const SpectralSystem& sys);
bool in_range_cone(const SpectralSystem& sys, std::span<const double> u, double tol = kTol);
bool in_polar_cone(const SpectralSystem& sys, std::span<const double> y, double tol = kTol);

/// A point x with spectral_map(x) = u and <c, x> = <spectral_map(c), u>. Requires u in K.
PointV align(const SpectralSystem& sys, const PointV& c, std::span<const double> u);

/// Reduced map on W: sort (Reorder, SymEig), |.| (Abs), |.| sorted (AbsReorder, SingVal).
PointW reduced_map(const SpectralSystem& sys, std::span<const double> u);

/// Number of points in the orbit of u in a vector system (as a double; may be huge).
double orbit_size(SystemKind kind, std::span<const double> u);
/// All points v of the vector system `kind` with the same spectral value as u (u need not be in K).
std::vector<Vec> vector_orbit(SystemKind kind, std::span<const double> u, double limit = 1e6);

/// The full orbit of u in K. Vector systems only; matrix orbits are continua.
std::vector<PointV> orbit_enumerate(const SpectralSystem& sys, std::span<const double> u);

/// `count` random orbit points of u in K, deterministic per seed.
std::vector<PointV> orbit_sample(const SpectralSystem& sys, std::span<const double> u, std::size_t count,
                                 std::uint64_t seed);

/// Standard-normal point of V (symmetrized for SymEig).
PointV random_point(const SpectralSystem& sys, Rng& rng);

}  // namespace specconv
