#include "specconv/invariance.hpp"

#include <set>
#include <stdexcept>

#include "specconv/errors.hpp"
#include "specconv/hull.hpp"
#include "specconv/linalg/random.hpp"

namespace specconv {

namespace {

void require_invariant(const SpectralSystem& sys, const FinitePoints& c, const char* op) {
  if (!is_invariant(sys, c))
    throw PreconditionError(std::string(op) + ": C must be invariant (a union of reduced-system orbits)");
}

}  // namespace

FinitePoints mu_image(const SpectralSystem& sys, const FinitePoints& c) {
  require_invariant(sys, c, "mu_image");
  std::set<Vec> seen;
  FinitePoints out;
  for (const Vec& u : c.points) {
    Vec m = canonical(reduced_map(sys, u));
    if (seen.insert(m).second) out.points.push_back(std::move(m));
  }
  const std::vector<Vec> cap = std::get<VPolytope>(intersect_with_K(sys, SetSpec::finite(c.points))).vertices;
  const std::set<Vec> cap_set(cap.begin(), cap.end());
  if (cap_set != seen) throw std::logic_error("mu_image: image differs from C cap K");
  return out;
}

bool check_orbit_in_mu_polar(const SpectralSystem& sys, std::span<const double> u) {
  check_point(sys, u);
  const Vec m = reduced_map(sys, u);
  const ConeDesc polar = polar_cone(sys);
  for (const Vec& v : vector_orbit(sys.kind(), u))
    if (!polar.contains(sub(v, m), kTol)) return false;
  return true;
}

bool transfer_conv_member(const SpectralSystem& sys, const FinitePoints& c, const PointV& x) {
  require_invariant(sys, c, "transfer_conv_member");
  return member_conv_points(c.points, spectral_map(sys, x)).member;
}

std::vector<Vec> convC_cap_K_generators(const SpectralSystem& sys, const FinitePoints& c, std::uint64_t seed,
                                        std::size_t directions) {
  const std::size_t d = sys.dim_w();
  const ConeDesc k = range_cone(sys);
  if (d <= 3) {
    std::vector<LinearConstraint> rows = hull_facets(c.points);
    for (auto& r : cone_rows(k)) rows.push_back(std::move(r));
    return polytope_vertices(rows, d);
  }
  const std::size_t n = c.points.size();
  Rng rng(seed);
  std::vector<Vec> out;
  std::set<Vec> seen;
  for (std::size_t it = 0; it < directions; ++it) {
    const Vec dir = rng.normal_vector(d);
    LPProblem lp;
    lp.objective.resize(n);
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = dot(dir, c.points[i]);
    lp.bounds = VariableBounds::nonnegative(n);
    lp.add(Vec(n, 1.0), Relation::Equal, 1.0);
    for (const Vec& g : k.inequalities) {
      Vec row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = dot(g, c.points[i]);
      lp.add(std::move(row), Relation::LessEqual, 0.0);
    }
    const LPResult r = lp_solve(lp);
    if (r.status != LPStatus::Optimal) break;
    Vec u(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < d; ++j) u[j] += r.solution[i] * c.points[i][j];
    if (seen.insert(u).second) out.push_back(std::move(u));
  }
  return out;
}

InsensitivityReport corollary_D_insensitivity(const SpectralSystem& sys, const FinitePoints& c, std::size_t trials,
                                              std::uint64_t seed, std::size_t queries_per_body) {
  require_invariant(sys, c, "corollary_D_insensitivity");
  const SetSpec spec = SetSpec::finite(c.points);
  const std::vector<Vec> lower = std::get<VPolytope>(intersect_with_K(sys, spec)).vertices;
  std::vector<Vec> upper = convC_cap_K_generators(sys, c, seed);
  // Snap generators onto K so tiny roundoff does not push them outside the cone.
  for (Vec& u : upper) u = reduced_map(sys, u);

  double radius = 0.0;
  for (const Vec& p : c.points) radius = std::max(radius, norm2(p));

  Rng rng(seed);
  InsensitivityReport report;
  for (std::size_t t = 0; t < trials; ++t) {
    VPolytope d;
    if (t == 0) {
      d.vertices = lower;
    } else if (t == 1) {
      d.vertices = upper;
    } else {
      // conv(C cap K) together with mu-images of random points of conv C, which lie in (conv C) cap K.
      d.vertices = lower;
      const int extra = rng.integer(1, 4);
      for (int e = 0; e < extra; ++e) {
        const Vec w = rng.simplex_weights(c.points.size());
        Vec y(sys.dim_w(), 0.0);
        for (std::size_t i = 0; i < c.points.size(); ++i)
          for (std::size_t j = 0; j < y.size(); ++j) y[j] += w[i] * c.points[i][j];
        d.vertices.push_back(reduced_map(sys, y));
      }
    }
    ++report.bodies;
    for (std::size_t q = 0; q < queries_per_body; ++q) {
      PointV x = random_point(sys, rng);
      const double nx = norm(x);
      if (nx > 0.0) x = (rng.uniform(0.2, 1.3) * radius / nx) * x;
      ++report.queries;
      if (member_conv_hull_of_convexD(sys, d, x).verdict != member_conv_hull(sys, spec, x).verdict)
        ++report.disagreements;
    }
  }
  return report;
}

}  // namespace specconv
