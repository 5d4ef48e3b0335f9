#include "specconv/hull.hpp"

#include <algorithm>
#include <cmath>

#include "specconv/errors.hpp"
#include "specconv/linalg/decompositions.hpp"
#include "specconv/linalg/quadratic.hpp"
#include "specconv/linalg/random.hpp"

namespace specconv {

bool majorizes(const SpectralSystem& sys, const PointV& x, const PointV& y) {
  return in_polar_cone(sys, sub(spectral_map(sys, x), spectral_map(sys, y)));
}

namespace {

struct Joint {
  double violation = 0.0;
  Vec u;
  std::optional<Vec> weights;
};

// Minimizes the largest violation s over
//   u = sum_i t_i g_i with t in the simplex (when gens is given) or u free,
//   soft rows  a.u <= b  (or = b),
//   lambda - u in the polar cone.
Joint solve_joint(const std::vector<Vec>* gens, std::size_t d, const std::vector<LinearConstraint>& u_rows,
                  const ConeDesc& polar, std::span<const double> lam) {
  std::vector<LinearConstraint> rows = u_rows;
  for (const Vec& g : polar.inequalities) rows.push_back({scale(-1.0, g), Relation::LessEqual, -dot(g, lam)});
  for (const Vec& e : polar.equalities) rows.push_back({scale(-1.0, e), Relation::Equal, -dot(e, lam)});

  const std::size_t nv = gens ? gens->size() : d;
  const std::size_t s = nv;
  LPProblem lp;
  lp.objective.assign(nv + 1, 0.0);
  lp.objective[s] = -1.0;
  if (gens) {
    lp.bounds = VariableBounds::nonnegative(nv + 1);
    Vec simplex(nv + 1, 1.0);
    simplex[s] = 0.0;
    lp.add(std::move(simplex), Relation::Equal, 1.0);
  } else {
    lp.bounds = VariableBounds::free(nv + 1);
    lp.bounds->lower[s] = 0.0;
  }
  for (const auto& r : rows) {
    Vec coef(nv + 1, 0.0);
    if (gens) {
      for (std::size_t i = 0; i < nv; ++i) coef[i] = dot(r.row, (*gens)[i]);
    } else {
      std::copy(r.row.begin(), r.row.end(), coef.begin());
    }
    coef[s] = -1.0;
    lp.add(coef, Relation::LessEqual, r.rhs);
    if (r.relation == Relation::Equal) {
      for (std::size_t i = 0; i < nv; ++i) coef[i] = -coef[i];
      lp.add(std::move(coef), Relation::LessEqual, -r.rhs);
    }
  }
  const LPResult res = lp_solve(lp);
  if (res.status != LPStatus::Optimal) throw std::runtime_error("joint membership program did not reach optimality");
  Joint out;
  out.violation = std::max(0.0, res.solution[s]);
  if (gens) {
    Vec t(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(nv));
    out.u.assign(d, 0.0);
    for (std::size_t i = 0; i < nv; ++i)
      for (std::size_t j = 0; j < d; ++j) out.u[j] += t[i] * (*gens)[i][j];
    out.weights = std::move(t);
  } else {
    out.u.assign(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return out;
}

// Rows of { v in R^k : v ordered and nonnegative, sum_{i <= min(l,k)} v_i >= sum_{i <= l} lam_i for all l }.
std::vector<LinearConstraint> ellipsoid_rows(std::size_t k, std::span<const double> lam) {
  std::vector<LinearConstraint> rows;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    Vec r(k, 0.0);
    r[i] = -1.0;
    r[i + 1] = 1.0;
    rows.push_back({std::move(r), Relation::LessEqual, 0.0});
  }
  Vec last(k, 0.0);
  last[k - 1] = -1.0;
  rows.push_back({std::move(last), Relation::LessEqual, 0.0});
  double partial = 0.0;
  for (std::size_t l = 0; l < lam.size(); ++l) {
    partial += lam[l];
    Vec r(k, 0.0);
    for (std::size_t i = 0; i <= std::min(l, k - 1); ++i) r[i] = -1.0;
    rows.push_back({std::move(r), Relation::LessEqual, -partial});
  }
  return rows;
}

void require_in_K(const SpectralSystem& sys, const ConvexBody& d) {
  if (const auto* p = std::get_if<VPolytope>(&d)) {
    const ConeDesc k = range_cone(sys);
    for (const Vec& v : p->vertices)
      if (!k.contains(v, kTol)) throw InputError("convex body generator lies outside the range cone");
  }
}

}  // namespace

MembershipCertificate member_conv_hull_of_convexD(const SpectralSystem& sys, const ConvexBody& d, const PointV& x) {
  const Vec lam = spectral_map(sys, x);
  if (body_dim(d) != sys.dim_w() && is_nonempty(d)) throw InputError("convex body dimension differs from dim W");
  if (!is_nonempty(d)) throw InfeasibleSetError("convex body is empty");
  require_in_K(sys, d);
  MembershipCertificate cert;
  cert.closedness_certified = true;
  const ConeDesc polar = polar_cone(sys);
  if (const auto* p = std::get_if<VPolytope>(&d)) {
    Joint j = solve_joint(&p->vertices, lam.size(), {}, polar, lam);
    cert.violation = j.violation;
    cert.verdict = j.violation <= kTol;
    if (cert.verdict) {
      cert.witness_u = std::move(j.u);
      cert.weights = std::move(j.weights);
    }
  } else if (const auto* p = std::get_if<ConePolyhedron>(&d)) {
    Joint j = solve_joint(nullptr, lam.size(), p->rows, polar, lam);
    cert.violation = j.violation;
    cert.verdict = j.violation <= kTol;
    if (cert.verdict) cert.witness_u = std::move(j.u);
  } else {
    const auto& e = std::get<OrderedEllipsoidSlice>(d);
    const QuadFeasibility f = quad_feasible(e.q, ellipsoid_rows(e.k, lam), 1.0);
    cert.violation = std::max(0.0, f.minimum - 1.0);
    cert.verdict = f.feasible;
    if (cert.verdict) {
      Vec u(e.n, 0.0);
      std::copy(f.witness->begin(), f.witness->end(), u.begin());
      cert.witness_u = std::move(u);
    }
  }
  return cert;
}

MembershipCertificate member_conv_hull(const SpectralSystem& sys, const SetSpec& c, const PointV& x) {
  check_point(sys, x);
  require_feasible(sys, c);
  MembershipCertificate cert = member_conv_hull_of_convexD(sys, intersect_with_K(sys, c), x);
  if (!cert.verdict) {
    try {
      cert.separator = separate(sys, c, x).c;
    } catch (const PreconditionError&) {
      // x sits within tolerance of the hull; no certified separator.
    }
  }
  return cert;
}

MembershipCertificate member_clconv(const SpectralSystem& sys, const SetSpec& c, const PointV& x) {
  MembershipCertificate cert = member_conv_hull(sys, c, x);
  cert.closedness_certified = true;
  return cert;
}

SupResult ordered_ellipsoid_support(const Matrix& q, std::span<const double> g) {
  const std::size_t k = g.size();
  if (q.rows() != k || q.cols() != k) throw InputError("ellipsoid support: dimension mismatch");
  if (k > 15) throw ResourceError("ellipsoid support enumerates 2^k faces; k = " + std::to_string(k) + " exceeds 15");
  // v = B z with B(i, j) = 1 for i <= j maps z >= 0 onto the ordered cone.
  Matrix b(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) b(i, j) = 1.0;
  const Matrix m = b.transpose() * q * b;
  const Vec h = b.transpose() * g;

  SupResult best;
  best.argmax_u = Vec(k, 0.0);
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < k; ++j)
      if (mask & (std::size_t{1} << j)) s.push_back(j);
    Matrix ms(s.size(), s.size());
    Vec hs(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) {
      hs[a] = h[s[a]];
      for (std::size_t c = 0; c < s.size(); ++c) ms(a, c) = m(s[a], s[c]);
    }
    Vec w;
    if (!solve_linear(ms, hs, w)) continue;
    const double val2 = dot(hs, w);
    if (val2 <= 0.0) continue;
    const double val = std::sqrt(val2);
    const double zmax = norm_inf(w) / val;
    Vec z(k, 0.0);
    bool ok = true;
    for (std::size_t a = 0; a < s.size(); ++a) {
      const double za = w[a] / val;
      if (za < -1e-12 * std::max(1.0, zmax)) ok = false;
      z[s[a]] = std::max(0.0, za);
    }
    if (!ok) continue;
    const Vec v = b * z;
    const double value = dot(g, v);
    if (value > best.value) {
      best.value = value;
      best.argmax_u = v;
    }
  }
  return best;
}

SupResult support_of_body(const ConvexBody& d, std::span<const double> w) {
  if (w.size() != body_dim(d)) throw InputError("support direction dimension differs from the body");
  if (const auto* p = std::get_if<VPolytope>(&d)) {
    if (p->vertices.empty()) throw InfeasibleSetError("support of an empty point set");
    SupResult out;
    out.value = -kInf;
    for (const Vec& v : p->vertices) {
      const double val = dot(w, v);
      if (val > out.value) {
        out.value = val;
        out.argmax_u = v;
      }
    }
    return out;
  }
  if (const auto* p = std::get_if<ConePolyhedron>(&d)) {
    LPProblem lp{Vec(w.begin(), w.end()), p->rows, {}};
    const LPResult r = lp_solve(lp);
    if (r.status == LPStatus::Infeasible) throw InfeasibleSetError("support of an empty polyhedron");
    SupResult out;
    if (r.status == LPStatus::Unbounded) {
      out.unbounded = true;
      out.value = kInf;
      return out;
    }
    out.value = r.optimal_value;
    out.argmax_u = r.solution;
    return out;
  }
  const auto& e = std::get<OrderedEllipsoidSlice>(d);
  SupResult r = ordered_ellipsoid_support(e.q, w.first(e.k));
  Vec u(e.n, 0.0);
  std::copy(r.argmax_u->begin(), r.argmax_u->end(), u.begin());
  r.argmax_u = std::move(u);
  return r;
}

SupResult spectral_sup(const SpectralSystem& sys, const PointV& c, const SetSpec& s) {
  const Vec w = spectral_map(sys, c);
  require_feasible(sys, s);
  return support_of_body(intersect_with_K(sys, s), w);
}

namespace {

// Direction a in K with <a, lam> > sup_D <a, .>, scaled to max norm 1, or nullopt.
std::optional<Vec> separating_direction(const SpectralSystem& sys, const ConvexBody& d, std::span<const double> lam) {
  const std::size_t n = lam.size();
  const ConeDesc k = range_cone(sys);
  if (const auto* p = std::get_if<VPolytope>(&d)) {
    // Variables (a, s): maximize <a, lam> - s, <a, p_i> <= s, a in K, |a| <= 1.
    LPProblem lp;
    lp.objective.assign(lam.begin(), lam.end());
    lp.objective.push_back(-1.0);
    lp.bounds = VariableBounds{Vec(n + 1, -1.0), Vec(n + 1, 1.0)};
    lp.bounds->lower[n] = -kInf;
    lp.bounds->upper[n] = kInf;
    for (const Vec& v : p->vertices) {
      Vec row = v;
      row.push_back(-1.0);
      lp.add(std::move(row), Relation::LessEqual, 0.0);
    }
    for (const Vec& g : k.inequalities) {
      Vec row = g;
      row.push_back(0.0);
      lp.add(std::move(row), Relation::LessEqual, 0.0);
    }
    const LPResult r = lp_solve(lp);
    if (r.status != LPStatus::Optimal || r.optimal_value <= 1e-10) return std::nullopt;
    return Vec(r.solution.begin(), r.solution.begin() + static_cast<std::ptrdiff_t>(n));
  }
  if (const auto* p = std::get_if<ConePolyhedron>(&d)) {
    // Variables (a, y): maximize <a, lam> - sum y_i rhs_i with sum y_i row_i = a, so that
    // sup_D <a, .> <= sum y_i rhs_i by weak duality.
    const std::size_t m = p->rows.size();
    LPProblem lp;
    lp.objective.assign(n + m, 0.0);
    for (std::size_t j = 0; j < n; ++j) lp.objective[j] = lam[j];
    for (std::size_t i = 0; i < m; ++i) lp.objective[n + i] = -p->rows[i].rhs;
    lp.bounds = VariableBounds{Vec(n + m, 0.0), Vec(n + m, kInf)};
    for (std::size_t j = 0; j < n; ++j) {
      lp.bounds->lower[j] = -1.0;
      lp.bounds->upper[j] = 1.0;
    }
    for (std::size_t i = 0; i < m; ++i)
      if (p->rows[i].relation == Relation::Equal) lp.bounds->lower[n + i] = -kInf;
    for (std::size_t j = 0; j < n; ++j) {
      Vec row(n + m, 0.0);
      row[j] = -1.0;
      for (std::size_t i = 0; i < m; ++i) row[n + i] = p->rows[i].row[j];
      lp.add(std::move(row), Relation::Equal, 0.0);
    }
    for (const Vec& g : k.inequalities) {
      Vec row(n + m, 0.0);
      std::copy(g.begin(), g.end(), row.begin());
      lp.add(std::move(row), Relation::LessEqual, 0.0);
    }
    const LPResult r = lp_solve(lp);
    if (r.status != LPStatus::Optimal || r.optimal_value <= 1e-10) return std::nullopt;
    return Vec(r.solution.begin(), r.solution.begin() + static_cast<std::ptrdiff_t>(n));
  }
  // Ellipsoid: the multipliers of the partial-sum rows give a = sum_l mu_l 1_{[1..l]} with
  // <a, lam> = 2 q* and sup_D <a, .> <= 2 sqrt(q*), which separates when q* > 1.
  const auto& e = std::get<OrderedEllipsoidSlice>(d);
  const auto rows = ellipsoid_rows(e.k, lam);
  const QuadFeasibility f = quad_feasible(e.q, rows, 1.0);
  if (f.feasible || std::isinf(f.minimum)) return std::nullopt;
  Vec a(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    const double mu = std::max(0.0, f.multipliers[e.k + l]);
    for (std::size_t i = 0; i <= l; ++i) a[i] += mu;
  }
  return a;
}

}  // namespace

Separation separate(const SpectralSystem& sys, const SetSpec& c, const PointV& x) {
  const Vec lam = spectral_map(sys, x);
  require_feasible(sys, c);
  const ConvexBody d = intersect_with_K(sys, c);
  std::optional<Vec> a = separating_direction(sys, d, lam);
  if (!a) throw PreconditionError("separate: x is a member of the convex hull");
  const double amax = norm_inf(*a);
  if (amax <= 0.0) throw PreconditionError("separate: x is a member of the convex hull");
  for (double& v : *a) v /= amax;
  // Clean roundoff so that a lies in K exactly before alignment.
  *a = reduced_map(sys, *a);
  Separation out{align(sys, x, *a), 0.0};
  const SupResult sup = spectral_sup(sys, out.c, c);
  out.margin = inner(out.c, x) - sup.value;
  if (sup.unbounded || !(out.margin > 1e-9))
    throw PreconditionError("separate: x is within tolerance of the convex hull");
  return out;
}

MembershipCertificate member_via_convC(const SpectralSystem& sys, const SetSpec& c, const PointV& x) {
  check_point(sys, x);
  if (c.is_ellipsoid()) throw UnsupportedError("the conv C route needs a finite or polyhedral C");
  require_feasible(sys, c);
  if (c.is_hpoly()) {
    MembershipCertificate cert = member_conv_hull_of_convexD(sys, intersect_with_K(sys, c), x);
    return cert;
  }
  const Vec lam = spectral_map(sys, x);
  Joint j = solve_joint(&c.points().points, lam.size(), cone_rows(range_cone(sys)), polar_cone(sys), lam);
  MembershipCertificate cert;
  cert.closedness_certified = true;
  cert.violation = j.violation;
  cert.verdict = j.violation <= kTol;
  if (cert.verdict) {
    cert.witness_u = std::move(j.u);
    cert.weights = std::move(j.weights);
  }
  return cert;
}

std::vector<LinearConstraint> hull_facets(const std::vector<Vec>& points, double tol) {
  if (points.empty()) throw InputError("hull_facets: no points");
  const std::size_t d = points.front().size();
  if (d > 3) throw UnsupportedError("hull_facets supports dimension <= 3");
  const Vec& p0 = points.front();
  Matrix diffs(d, points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) diffs(j, i - 1) = points[i][j] - p0[j];
  const Matrix basis = points.size() > 1 ? orthonormal_basis(diffs, 1e-10) : Matrix(d, 0);
  const std::size_t r = basis.cols();
  const Matrix full = complete_orthonormal(basis);

  std::vector<LinearConstraint> out;
  for (std::size_t c = r; c < d; ++c) {
    const Vec w = full.col(c);
    out.push_back({w, Relation::Equal, dot(w, p0)});
  }
  if (r == 0) return out;

  std::vector<Vec> y;
  double scale_ref = 1.0;
  for (const Vec& p : points) {
    const Vec diff = sub(p, p0);
    Vec yi(r);
    for (std::size_t c = 0; c < r; ++c) yi[c] = dot(basis.col(c), diff);
    scale_ref = std::max(scale_ref, norm_inf(yi));
    y.push_back(std::move(yi));
  }
  const double side_tol = tol * scale_ref;

  std::vector<std::pair<Vec, double>> facets;
  auto consider = [&](Vec nrm, std::size_t anchor) {
    const double len = norm2(nrm);
    if (len <= 1e-12 * scale_ref * scale_ref) return;
    for (double& v : nrm) v /= len;
    const double beta = dot(nrm, y[anchor]);
    bool below = true, above = true;
    for (const Vec& yk : y) {
      const double s = dot(nrm, yk) - beta;
      below = below && s <= side_tol;
      above = above && s >= -side_tol;
    }
    auto push = [&](Vec n, double b) {
      for (const auto& [fn, fb] : facets)
        if (norm_inf(sub(fn, n)) <= 1e-9 && std::abs(fb - b) <= 1e-9 * scale_ref) return;
      facets.emplace_back(std::move(n), b);
    };
    if (below) push(nrm, beta);
    if (above) push(scale(-1.0, nrm), -beta);
  };
  const std::size_t n = y.size();
  if (r == 1) {
    double lo = kInf, hi = -kInf;
    for (const Vec& yk : y) {
      lo = std::min(lo, yk[0]);
      hi = std::max(hi, yk[0]);
    }
    facets.emplace_back(Vec{1.0}, hi);
    facets.emplace_back(Vec{-1.0}, -lo);
  } else if (r == 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) consider({-(y[j][1] - y[i][1]), y[j][0] - y[i][0]}, i);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
          const Vec a = sub(y[j], y[i]), b = sub(y[k], y[i]);
          consider({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}, i);
        }
  }
  for (const auto& [nrm, beta] : facets) {
    // n . B'(u - p0) <= beta  <=>  (B n) . u <= beta + (B n) . p0
    const Vec bn = basis * nrm;
    out.push_back({bn, Relation::LessEqual, beta + dot(bn, p0)});
  }
  return out;
}

std::vector<Vec> polytope_vertices(const std::vector<LinearConstraint>& rows, std::size_t dim, double tol) {
  if (dim == 0 || dim > 3) throw UnsupportedError("vertex enumeration supports dimension 1 to 3");
  const std::size_t m = rows.size();
  std::vector<Vec> out;
  if (m < dim) return out;
  std::vector<std::size_t> pick(dim);
  for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
  while (true) {
    Matrix a(dim, dim);
    Vec b(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) a(i, j) = rows[pick[i]].row[j];
      b[i] = rows[pick[i]].rhs;
    }
    Vec x;
    if (solve_linear(a, b, x, 1e-10)) {
      const double sc = 1.0 + norm_inf(x);
      bool feasible = true;
      for (const auto& r : rows) {
        const double v = dot(r.row, x) - r.rhs;
        if (v > tol * sc || (r.relation == Relation::Equal && v < -tol * sc)) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        bool dup = false;
        for (const Vec& v : out)
          if (norm_inf(sub(v, x)) <= 1e-10 * sc) dup = true;
        if (!dup) out.push_back(std::move(x));
      }
    }
    // next combination
    std::size_t i = dim;
    while (i > 0 && pick[i - 1] == m - dim + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

ConditionA check_condition_A(const SpectralSystem& sys, const SetSpec& c, std::uint64_t seed, std::size_t samples) {
  if (!c.is_finite()) throw UnsupportedError("condition check needs a finite C");
  if (c.dim() != sys.dim_w()) throw InputError("set dimension differs from dim W");
  const std::vector<Vec>& pts = c.points().points;
  const ConeDesc k = range_cone(sys);
  const ConeDesc polar = polar_cone(sys);
  const std::vector<Vec> inside = std::get<VPolytope>(intersect_with_K(sys, c)).vertices;

  ConditionA out;
  auto test = [&](const Vec& v) {
    if (inside.empty() || solve_joint(&inside, v.size(), {}, polar, v).violation > kTol) {
      out.holds = false;
      out.counterexample = v;
      return false;
    }
    return true;
  };

  const std::size_t d = c.dim();
  if (d <= 3) {
    std::vector<LinearConstraint> rows = hull_facets(pts);
    for (auto& r : cone_rows(k)) rows.push_back(std::move(r));
    for (const Vec& v : polytope_vertices(rows, d))
      if (!test(v)) return out;
    return out;
  }

  // Randomized refutation: vertices of (conv C) cap K in random directions.
  out.exact = false;
  Rng rng(seed);
  const std::size_t n = pts.size();
  for (std::size_t it = 0; it < samples; ++it) {
    const Vec dir = rng.normal_vector(d);
    LPProblem lp;
    lp.objective.resize(n);
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = dot(dir, pts[i]);
    lp.bounds = VariableBounds::nonnegative(n);
    lp.add(Vec(n, 1.0), Relation::Equal, 1.0);
    for (const Vec& g : k.inequalities) {
      Vec row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = dot(g, pts[i]);
      lp.add(std::move(row), Relation::LessEqual, 0.0);
    }
    const LPResult r = lp_solve(lp);
    if (r.status != LPStatus::Optimal) return out;  // (conv C) cap K is empty
    Vec u(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) u[j] += r.solution[i] * pts[i][j];
    if (!test(u)) return out;
  }
  return out;
}

namespace hyperbola {

bool in_set(std::span<const double> u) {
  if (u.size() != 2) throw InputError("hyperbola set lives in dimension 2");
  // u2^2 <= u1^2 - 1 in factored form, which avoids cancellation for large entries.
  return u[0] >= 1.0 && (u[0] - u[1]) * (u[0] + u[1]) >= 1.0;
}

Membership sum_with_polar(std::span<const double> y) {
  if (y.size() != 2) throw InputError("hyperbola set lives in dimension 2");
  Membership out;
  const double s = y[0] + y[1];
  // Every u in H has |u2| < u1, so u1 + u2 > 0, and polar moves (-a, a) keep the sum.
  if (!(s > 0.0)) return out;
  // u = y + (a, -a) has u1 + u2 = s and u1 - u2 = y1 - y2 + 2a; the product reaches 2 >= 1.
  const double alpha = std::max({0.0, 1.0 - y[0], (2.0 / s - y[0] + y[1]) / 2.0});
  Vec u{y[0] + alpha, y[1] - alpha};
  if (!in_set(u)) return out;
  out.member = true;
  out.alpha = alpha;
  out.witness_u = std::move(u);
  return out;
}

MembershipCertificate member(const PointV& x) {
  const SpectralSystem sys = SpectralSystem::reorder(2);
  const Membership m = sum_with_polar(spectral_map(sys, x));
  MembershipCertificate cert;
  cert.verdict = m.member;
  cert.witness_u = m.witness_u;
  cert.closedness_certified = false;
  return cert;
}

}  // namespace hyperbola

}  // namespace specconv
