#pragma once

#include <cstdint>
#include <optional>

#include "specconv/sets.hpp"
#include "specconv/systems.hpp"

namespace specconv {

struct MembershipCertificate {
  bool verdict = false;
  /// Point of D with lambda(x) - u in the polar cone (present when verdict is true).
  std::optional<Vec> witness_u;
  /// Convex weights over the generators of D (finite sets only).
  std::optional<Vec> weights;
  /// c with <c, x> > spectral_sup(c, C) (present when verdict is false and separation succeeded).
  std::optional<PointV> separator;
  bool closedness_certified = false;
  /// Optimal max-violation of the joint membership program (0 means exact feasibility).
  double violation = 0.0;
};

/// lambda(x) - lambda(y) in the polar cone, i.e. x lies in the convex hull of the orbit of y.
bool majorizes(const SpectralSystem& sys, const PointV& x, const PointV& y);

/// x in conv lambda^{-1}(C), decided as one joint program in (weights or u, violation).
MembershipCertificate member_conv_hull(const SpectralSystem& sys, const SetSpec& c, const PointV& x);

/// lambda(x) in D + K for a nonempty convex D contained in K.
MembershipCertificate member_conv_hull_of_convexD(const SpectralSystem& sys, const ConvexBody& d, const PointV& x);

/// Membership in the closed convex hull. Closedness is certified for every SetSpec variant
/// (finite and ellipsoid sets give compact D, polyhedra give polyhedral D and K).
MembershipCertificate member_clconv(const SpectralSystem& sys, const SetSpec& c, const PointV& x);

struct SupResult {
  bool unbounded = false;
  double value = 0.0;
  std::optional<Vec> argmax_u;
};

/// sup over lambda^{-1}(C) of <c, .>, computed as sup over C cap K of <lambda(c), .>.
SupResult spectral_sup(const SpectralSystem& sys, const PointV& c, const SetSpec& s);

/// sup over D of <w, .>.
SupResult support_of_body(const ConvexBody& d, std::span<const double> w);

/// Maximizes g'v over {v1 >= ... >= vk >= 0, v'Qv <= 1} by enumerating the faces of the ordered cone.
/// Throws ResourceError for k > 15.
SupResult ordered_ellipsoid_support(const Matrix& q, std::span<const double> g);

struct Separation {
  PointV c;
  double margin = 0.0;  ///< <c, x> - spectral_sup(c, C), verified
};

/// A direction strictly separating x from conv lambda^{-1}(C), normalized so that lambda(c) has unit max norm.
/// Throws PreconditionError when x is a member (or within tolerance of the hull).
Separation separate(const SpectralSystem& sys, const SetSpec& c, const PointV& x);

/// lambda(x) in ((conv C) cap K) + polar. Finite and polyhedral C only.
MembershipCertificate member_via_convC(const SpectralSystem& sys, const SetSpec& c, const PointV& x);

struct ConditionA {
  bool holds = true;
  std::optional<Vec> counterexample;
  /// false when the answer comes from randomized refutation (dim W > 3): holds then means "not refuted".
  bool exact = true;
};

/// Tests (conv C) cap K contained in conv(C cap K) + polar, for finite C.
ConditionA check_condition_A(const SpectralSystem& sys, const SetSpec& c, std::uint64_t seed = 1,
                             std::size_t samples = 2000);

/// Vertices of {u : rows} in dimension <= 3, deduplicated. Rows may include equalities.
std::vector<Vec> polytope_vertices(const std::vector<LinearConstraint>& rows, std::size_t dim, double tol = 1e-9);

/// Facet description of conv(points) (plus equalities for its affine hull) in dimension <= 3.
std::vector<LinearConstraint> hull_facets(const std::vector<Vec>& points, double tol = 1e-9);

/// The closed convex set H = {u : u2^2 <= u1^2 - 1, u1 >= 1} inside the sorted cone of reorder:2.
/// H + polar is the open half-plane {u1 + u2 > 0}; this hand-coded routine decides it.
namespace hyperbola {

struct Membership {
  bool member = false;
  std::optional<Vec> witness_u;  ///< point of H with y - u in the polar cone
  double alpha = 0.0;            ///< y - u = (-alpha, alpha)
};

bool in_set(std::span<const double> u);
Membership sum_with_polar(std::span<const double> y);
/// Membership of x in lambda^{-1}(H + polar) for reorder:2; closedness is never certified.
MembershipCertificate member(const PointV& x);

}  // namespace hyperbola

}  // namespace specconv
