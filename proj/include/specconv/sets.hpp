#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "specconv/linalg/lp.hpp"
#include "specconv/systems.hpp"

namespace specconv {

struct FinitePoints {
  std::vector<Vec> points;
};

/// {u : A u <= b}. A may have zero rows (the whole space).
struct HPolyhedron {
  Matrix a;
  Vec b;
};

/// {u : ||u||_0 <= k, u' A u <= 1} with A positive definite.
struct SparseEllipsoid {
  Matrix a;
  std::size_t k = 1;
};

/// A subset C of W.
class SetSpec {
 public:
  using Variant = std::variant<FinitePoints, HPolyhedron, SparseEllipsoid>;

  /// Removes exact duplicates, keeping first occurrences. Throws on empty input or ragged points.
  static SetSpec finite(std::vector<Vec> points);
  static SetSpec hpoly(Matrix a, Vec b, std::size_t dim);
  static SetSpec hpoly(Matrix a, Vec b) { const std::size_t d = a.cols(); return hpoly(std::move(a), std::move(b), d); }
  static SetSpec sparse_ellipsoid(Matrix a, std::size_t k);

  const Variant& variant() const { return v_; }
  std::size_t dim() const { return dim_; }

  bool is_finite() const { return std::holds_alternative<FinitePoints>(v_); }
  bool is_hpoly() const { return std::holds_alternative<HPolyhedron>(v_); }
  bool is_ellipsoid() const { return std::holds_alternative<SparseEllipsoid>(v_); }
  const FinitePoints& points() const { return std::get<FinitePoints>(v_); }
  const HPolyhedron& polyhedron() const { return std::get<HPolyhedron>(v_); }
  const SparseEllipsoid& ellipsoid() const { return std::get<SparseEllipsoid>(v_); }

 private:
  SetSpec(Variant v, std::size_t dim) : v_(std::move(v)), dim_(dim) {}
  Variant v_;
  std::size_t dim_;
};

/// conv of finitely many points of K (not necessarily all vertices).
struct VPolytope {
  std::vector<Vec> vertices;
};

/// {u : rows} where the rows already include the cone description of K.
struct ConePolyhedron {
  std::vector<LinearConstraint> rows;
  std::size_t dim = 0;
};

/// {u : u1 >= ... >= uk >= 0, u_{k+1} = ... = u_n = 0, v' Q v <= 1} with v = u_{1..k}.
struct OrderedEllipsoidSlice {
  Matrix q;
  std::size_t k = 1;
  std::size_t n = 1;
};

/// A convex subset of K.
using ConvexBody = std::variant<VPolytope, ConePolyhedron, OrderedEllipsoidSlice>;

std::size_t body_dim(const ConvexBody& d);

/// Rows of {u : Au <= b}, each scaled to unit norm. Zero rows with b >= 0 are dropped;
/// a zero row with b < 0 makes the set empty and is kept as 0 <= -1.
std::vector<LinearConstraint> normalized_rows(const HPolyhedron& p);

/// Rows g.u <= 0 of the range cone as LP constraints.
std::vector<LinearConstraint> cone_rows(const ConeDesc& k);

/// C cap K. Sparse ellipsoids are supported when K is the sorted nonnegative cone.
ConvexBody intersect_with_K(const SpectralSystem& sys, const SetSpec& c);

bool is_feasible(const SpectralSystem& sys, const SetSpec& c);
bool is_nonempty(const ConvexBody& d);

/// Throws InputError when C's dimension differs from dim W, UnsupportedError for a
/// sparse ellipsoid outside the sorted nonnegative cone, InfeasibleSetError when C cap K is empty.
void require_feasible(const SpectralSystem& sys, const SetSpec& c);

struct InnerMembership {
  bool member = false;
  std::optional<Vec> weights;
  double violation = 0.0;
};

/// u in conv(D) for a convex body (for VPolytope, the convex hull of its vertices).
InnerMembership member_body(const ConvexBody& d, std::span<const double> u, double tol = kTol);

/// u in conv(C cap K).
InnerMembership member_conv_CcapK(const SpectralSystem& sys, const SetSpec& c, std::span<const double> u,
                                  double tol = kTol);

/// u in conv(points) by one LP over convex weights, using min-max violation.
InnerMembership member_conv_points(const std::vector<Vec>& points, std::span<const double> u, double tol = kTol);

/// Canonical form for exact set comparison: -0 becomes +0.
Vec canonical(Vec v);

/// Union of the reduced-system orbits of the points of C. Vector-W systems with finite orbits.
FinitePoints orbit_closure(const SpectralSystem& sys, const FinitePoints& c, double limit = 1e6);
bool is_invariant(const SpectralSystem& sys, const FinitePoints& c);

}  // namespace specconv
