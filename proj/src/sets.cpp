#include "specconv/sets.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "specconv/errors.hpp"
#include "specconv/linalg/quadratic.hpp"

namespace specconv {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw InputError(std::string(what) + " has a non-finite entry");
}

}  // namespace

Vec canonical(Vec v) {
  for (double& x : v)
    if (x == 0.0) x = 0.0;
  return v;
}

SetSpec SetSpec::finite(std::vector<Vec> points) {
  if (points.empty()) throw InputError("finite set needs at least one point");
  const std::size_t d = points.front().size();
  if (d == 0) throw InputError("finite set points must be nonempty vectors");
  std::set<Vec> seen;
  std::vector<Vec> kept;
  for (Vec& p : points) {
    if (p.size() != d) throw InputError("finite set points have different lengths");
    require_finite(p, "finite set point");
    p = canonical(std::move(p));
    if (seen.insert(p).second) kept.push_back(std::move(p));
  }
  return {FinitePoints{std::move(kept)}, d};
}

SetSpec SetSpec::hpoly(Matrix a, Vec b, std::size_t dim) {
  if (dim == 0) throw InputError("polyhedron dimension must be positive");
  if (a.rows() == 0) a = Matrix(0, dim);
  if (a.cols() != dim) throw InputError("polyhedron matrix has the wrong number of columns");
  if (a.rows() != b.size()) throw InputError("polyhedron right-hand side length differs from row count");
  require_finite(a.data(), "polyhedron matrix");
  require_finite(b, "polyhedron right-hand side");
  return {HPolyhedron{std::move(a), std::move(b)}, dim};
}

SetSpec SetSpec::sparse_ellipsoid(Matrix a, std::size_t k) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) throw InputError("ellipsoid matrix must be square and nonempty");
  if (k < 1 || k > n) throw InputError("ellipsoid sparsity k must satisfy 1 <= k <= n");
  require_finite(a.data(), "ellipsoid matrix");
  if (!a.is_symmetric(1e-12)) throw InputError("ellipsoid matrix must be symmetric");
  if (min_eigenvalue(a) <= 1e-10) throw InputError("ellipsoid matrix must be positive definite");
  return {SparseEllipsoid{std::move(a), k}, n};
}

std::size_t body_dim(const ConvexBody& d) {
  struct {
    std::size_t operator()(const VPolytope& p) const { return p.vertices.empty() ? 0 : p.vertices.front().size(); }
    std::size_t operator()(const ConePolyhedron& p) const { return p.dim; }
    std::size_t operator()(const OrderedEllipsoidSlice& e) const { return e.n; }
  } visit;
  return std::visit(visit, d);
}

std::vector<LinearConstraint> normalized_rows(const HPolyhedron& p) {
  std::vector<LinearConstraint> out;
  for (std::size_t i = 0; i < p.a.rows(); ++i) {
    const auto r = p.a.row(i);
    const double nrm = norm2(r);
    if (nrm == 0.0) {
      if (p.b[i] < 0.0) out.push_back({Vec(r.size(), 0.0), Relation::LessEqual, -1.0});
      continue;
    }
    out.push_back({scale(1.0 / nrm, r), Relation::LessEqual, p.b[i] / nrm});
  }
  return out;
}

std::vector<LinearConstraint> cone_rows(const ConeDesc& k) {
  std::vector<LinearConstraint> out;
  for (const Vec& g : k.inequalities) out.push_back({g, Relation::LessEqual, 0.0});
  for (const Vec& e : k.equalities) out.push_back({e, Relation::Equal, 0.0});
  return out;
}

namespace {

void check_dim(const SpectralSystem& sys, const SetSpec& c) {
  if (c.dim() != sys.dim_w())
    throw InputError("set has dimension " + std::to_string(c.dim()) + " but " + sys.name() + " needs " +
                     std::to_string(sys.dim_w()));
}

}  // namespace

ConvexBody intersect_with_K(const SpectralSystem& sys, const SetSpec& c) {
  check_dim(sys, c);
  const ConeDesc k = range_cone(sys);
  if (c.is_finite()) {
    VPolytope out;
    for (const Vec& p : c.points().points)
      if (k.contains(p, kTol)) out.vertices.push_back(p);
    return out;
  }
  if (c.is_hpoly()) {
    ConePolyhedron out{normalized_rows(c.polyhedron()), c.dim()};
    for (auto& r : cone_rows(k)) out.rows.push_back(std::move(r));
    return out;
  }
  if (!sys.sorted_nonnegative_range())
    throw UnsupportedError("sparse ellipsoid sets need a sorted nonnegative range cone (absreorder or singval); in " +
                           sys.name() + " the intersection with K is not convex");
  const SparseEllipsoid& e = c.ellipsoid();
  Matrix q(e.k, e.k);
  for (std::size_t i = 0; i < e.k; ++i)
    for (std::size_t j = 0; j < e.k; ++j) q(i, j) = e.a(i, j);
  return OrderedEllipsoidSlice{std::move(q), e.k, c.dim()};
}

bool is_nonempty(const ConvexBody& d) {
  if (const auto* p = std::get_if<VPolytope>(&d)) return !p->vertices.empty();
  if (const auto* p = std::get_if<ConePolyhedron>(&d)) {
    LPProblem lp{Vec(p->dim, 0.0), p->rows, {}};
    return lp_solve(lp).status != LPStatus::Infeasible;
  }
  return true;  // the origin lies in every ordered ellipsoid slice
}

bool is_feasible(const SpectralSystem& sys, const SetSpec& c) { return is_nonempty(intersect_with_K(sys, c)); }

void require_feasible(const SpectralSystem& sys, const SetSpec& c) {
  if (!is_feasible(sys, c)) throw InfeasibleSetError("C does not meet the range cone of " + sys.name());
}

InnerMembership member_conv_points(const std::vector<Vec>& points, std::span<const double> u, double tol) {
  if (points.empty()) throw InfeasibleSetError("convex hull of an empty point list");
  const std::size_t n = points.size(), d = u.size();
  // Variables (t_1..t_n, s); maximize -s subject to |sum t_i p_i - u| <= s componentwise.
  LPProblem lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = -1.0;
  lp.bounds = VariableBounds::nonnegative(n + 1);
  Vec simplex(n + 1, 1.0);
  simplex[n] = 0.0;
  lp.add(simplex, Relation::Equal, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    Vec row(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (points[i].size() != d) throw InputError("point dimension mismatch in hull membership");
      row[i] = points[i][j];
    }
    row[n] = -1.0;
    lp.add(row, Relation::LessEqual, u[j]);
    for (std::size_t i = 0; i < n; ++i) row[i] = -row[i];
    lp.add(row, Relation::LessEqual, -u[j]);
  }
  const LPResult r = lp_solve(lp);
  InnerMembership out;
  out.violation = r.solution[n];
  out.member = out.violation <= tol;
  if (out.member) out.weights = Vec(r.solution.begin(), r.solution.begin() + static_cast<std::ptrdiff_t>(n));
  return out;
}

InnerMembership member_body(const ConvexBody& d, std::span<const double> u, double tol) {
  if (u.size() != body_dim(d)) throw InputError("point dimension differs from the body");
  if (const auto* p = std::get_if<VPolytope>(&d)) return member_conv_points(p->vertices, u, tol);
  InnerMembership out;
  if (const auto* p = std::get_if<ConePolyhedron>(&d)) {
    for (const auto& r : p->rows) {
      const double v = dot(r.row, u) - r.rhs;
      out.violation = std::max(out.violation, r.relation == Relation::Equal ? std::abs(v) : v);
    }
  } else {
    const auto& e = std::get<OrderedEllipsoidSlice>(d);
    for (std::size_t i = 0; i + 1 < e.k; ++i) out.violation = std::max(out.violation, u[i + 1] - u[i]);
    out.violation = std::max(out.violation, -u[e.k - 1]);
    for (std::size_t i = e.k; i < e.n; ++i) out.violation = std::max(out.violation, std::abs(u[i]));
    const std::span<const double> v = u.first(e.k);
    out.violation = std::max(out.violation, dot(v, e.q * v) - 1.0);
  }
  out.member = out.violation <= tol;
  return out;
}

InnerMembership member_conv_CcapK(const SpectralSystem& sys, const SetSpec& c, std::span<const double> u,
                                  double tol) {
  check_point(sys, u);
  const ConvexBody d = intersect_with_K(sys, c);
  if (!is_nonempty(d)) throw InfeasibleSetError("C does not meet the range cone of " + sys.name());
  return member_body(d, u, tol);
}

FinitePoints orbit_closure(const SpectralSystem& sys, const FinitePoints& c, double limit) {
  std::set<Vec> seen;
  FinitePoints out;
  double total = 0.0;
  for (const Vec& p : c.points) {
    check_point(sys, p);
    if (seen.count(canonical(p))) continue;  // its whole orbit is already in
    total += orbit_size(sys.kind(), p);
    if (total > limit) throw ResourceError("orbit closure exceeds " + std::to_string(limit) + " points");
    for (Vec& v : vector_orbit(sys.kind(), p, limit)) {
      v = canonical(std::move(v));
      if (seen.insert(v).second) out.points.push_back(std::move(v));
    }
  }
  return out;
}

bool is_invariant(const SpectralSystem& sys, const FinitePoints& c) {
  std::set<Vec> given;
  for (const Vec& p : c.points) given.insert(canonical(p));
  const FinitePoints closure = orbit_closure(sys, c);
  if (closure.points.size() != given.size()) return false;
  return std::all_of(closure.points.begin(), closure.points.end(), [&](const Vec& v) { return given.count(v) > 0; });
}

}  // namespace specconv
