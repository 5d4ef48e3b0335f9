#include <set>

#include "doctest.h"
#include "specconv/errors.hpp"
#include "specconv/linalg/random.hpp"
#include "specconv/sets.hpp"

using namespace specconv;

namespace {

const SpectralSystem kR2 = SpectralSystem::reorder(2);

std::set<Vec> as_set(const std::vector<Vec>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("set construction validates input") {
  CHECK_THROWS_AS(SetSpec::finite({}), InputError);
  CHECK_THROWS_AS(SetSpec::finite({{1.0, 2.0}, {1.0}}), InputError);
  CHECK(SetSpec::finite({{1.0, 0.0}, {1.0, 0.0}, {-0.0, 1.0}}).points().points.size() == 2);
  CHECK_THROWS_AS(SetSpec::hpoly(Matrix{{1.0, 0.0}}, Vec{1.0, 2.0}), InputError);
  CHECK_THROWS_AS(SetSpec::sparse_ellipsoid(Matrix{{1.0, 0.0}, {0.0, -1.0}}, 1), InputError);
  CHECK_THROWS_AS(SetSpec::sparse_ellipsoid(Matrix::identity(2), 3), InputError);
  CHECK_THROWS_AS(SetSpec::sparse_ellipsoid(Matrix::identity(2), 0), InputError);
}

TEST_CASE("intersection with the range cone") {
  const SetSpec two_pt = SetSpec::finite({{1.0, 0.0}, {1.0, 2.0}});
  const auto d = std::get<VPolytope>(intersect_with_K(kR2, two_pt));
  CHECK(d.vertices == std::vector<Vec>{{1.0, 0.0}});

  const SetSpec whole = SetSpec::hpoly(Matrix(0, 2), Vec{}, 2);
  const auto k = std::get<ConePolyhedron>(intersect_with_K(SpectralSystem::abs(2), whole));
  CHECK(k.rows.size() == 2);
  CHECK(member_body(k, Vec{3.0, 0.5}).member);
  CHECK_FALSE(member_body(k, Vec{3.0, -0.5}).member);

  const SetSpec ell = SetSpec::sparse_ellipsoid(Matrix::identity(3), 2);
  const auto slice = std::get<OrderedEllipsoidSlice>(intersect_with_K(SpectralSystem::sing_val(3, 3), ell));
  CHECK(slice.k == 2);
  CHECK(slice.n == 3);
  CHECK(member_body(slice, Vec{0.6, 0.6, 0.0}).member);
  CHECK_FALSE(member_body(slice, Vec{0.8, 0.8, 0.0}).member);
  CHECK_FALSE(member_body(slice, Vec{0.5, 0.6, 0.0}).member);
  CHECK_FALSE(member_body(slice, Vec{0.5, 0.4, 0.1}).member);

  CHECK_THROWS_AS(intersect_with_K(SpectralSystem::reorder(3), ell), UnsupportedError);
  CHECK_THROWS_AS(intersect_with_K(SpectralSystem::reorder(3), two_pt), InputError);
}

TEST_CASE("intersection outputs lie in K") {
  Rng rng(1);
  for (const auto& sys : {SpectralSystem::reorder(3), SpectralSystem::abs(3), SpectralSystem::abs_reorder(3)}) {
    std::vector<Vec> pts;
    for (int i = 0; i < 30; ++i) pts.push_back(rng.normal_vector(3));
    const auto d = std::get<VPolytope>(intersect_with_K(sys, SetSpec::finite(pts)));
    for (const Vec& v : d.vertices) CHECK(in_range_cone(sys, v));
    // Sample the polyhedral intersection by rejection from a box.
    const SetSpec box = SetSpec::hpoly(Matrix{{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
                                       Vec(6, 2.0));
    const ConvexBody body = intersect_with_K(sys, box);
    int hits = 0;
    while (hits < 1000) {
      Vec u(3);
      for (double& x : u) x = rng.uniform(-2.0, 2.0);
      if (!member_body(body, u).member) continue;
      ++hits;
      CHECK(in_range_cone(sys, u));
    }
  }
}

TEST_CASE("feasibility") {
  CHECK_FALSE(is_feasible(kR2, SetSpec::finite({{1.0, 2.0}})));
  CHECK(is_feasible(kR2, SetSpec::finite({{1.0, 0.0}, {1.0, 2.0}})));
  CHECK(is_feasible(SpectralSystem::abs_reorder(3), SetSpec::sparse_ellipsoid(Matrix::identity(3), 2)));
  // u1 <= -1 and u2 >= 0 cannot be sorted.
  CHECK_FALSE(is_feasible(kR2, SetSpec::hpoly(Matrix{{1.0, 0.0}, {0.0, -1.0}}, Vec{-1.0, 0.0})));
  CHECK(is_feasible(kR2, SetSpec::hpoly(Matrix{{1.0, 0.0}}, Vec{-1.0})));
  CHECK_FALSE(is_feasible(kR2, SetSpec::hpoly(Matrix{{0.0, 0.0}}, Vec{-1.0})));
  CHECK_THROWS_AS(require_feasible(kR2, SetSpec::finite({{1.0, 2.0}})), InfeasibleSetError);
  CHECK_THROWS_AS(member_conv_CcapK(kR2, SetSpec::finite({{1.0, 2.0}}), Vec{1.0, 0.0}), InfeasibleSetError);
}

TEST_CASE("membership in conv(C cap K)") {
  const SetSpec two_pt = SetSpec::finite({{1.0, 0.0}, {1.0, 2.0}});
  CHECK(member_conv_CcapK(kR2, two_pt, Vec{1.0, 0.0}).member);
  CHECK_FALSE(member_conv_CcapK(kR2, two_pt, Vec{1.0, 1.0}).member);

  const SpectralSystem sys = SpectralSystem::reorder(3);
  const SetSpec c = SetSpec::finite({{3.0, 2.0, 1.0}, {1.0, 0.0, -1.0}, {2.0, 2.0, 2.0}});
  const InnerMembership mid = member_conv_CcapK(sys, c, Vec{2.0, 1.0, 0.0});
  REQUIRE(mid.member);
  CHECK((*mid.weights)[0] == doctest::Approx(0.5));
  CHECK((*mid.weights)[1] == doctest::Approx(0.5));
}

TEST_CASE("membership in conv(C cap K) matches a direct weight LP") {
  Rng rng(2);
  const SpectralSystem sys = SpectralSystem::abs_reorder(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Vec> pts;
    const int n = rng.integer(2, 6);
    for (int i = 0; i < n; ++i) pts.push_back(reduced_map(sys, rng.normal_vector(3)));
    pts.push_back(rng.normal_vector(3));  // usually outside K
    const SetSpec c = SetSpec::finite(pts);
    const Vec u = scale(0.6, rng.normal_vector(3));
    // Independent formulation: t >= 0, sum t = 1, sum t_i p_i = u exactly, over K-points only.
    std::vector<Vec> in_k;
    for (const Vec& p : pts)
      if (in_range_cone(sys, p)) in_k.push_back(p);
    LPProblem lp{Vec(in_k.size(), 0.0), {}, VariableBounds::nonnegative(in_k.size())};
    lp.add(Vec(in_k.size(), 1.0), Relation::Equal, 1.0);
    for (std::size_t j = 0; j < 3; ++j) {
      Vec row(in_k.size());
      for (std::size_t i = 0; i < in_k.size(); ++i) row[i] = in_k[i][j];
      lp.add(row, Relation::Equal, u[j]);
    }
    const bool oracle = lp_solve(lp).status == LPStatus::Optimal;
    CHECK(member_conv_CcapK(sys, c, u).member == oracle);
  }
}

TEST_CASE("orbit closure and invariance") {
  const FinitePoints one{{{1.0, 0.0}}};
  CHECK(as_set(orbit_closure(kR2, one).points) == std::set<Vec>{{1.0, 0.0}, {0.0, 1.0}});
  CHECK_FALSE(is_invariant(kR2, one));
  CHECK(is_invariant(kR2, FinitePoints{{{1.0, 0.0}, {0.0, 1.0}}}));
  CHECK(is_invariant(SpectralSystem::sym_eig(2), FinitePoints{{{1.0, 0.0}, {0.0, 1.0}}}));

  std::vector<Vec> signed_perms;
  for (double a : {1.0, -1.0})
    for (double b : {2.0, -2.0}) {
      signed_perms.push_back({a, b});
      signed_perms.push_back({b, a});
    }
  const auto ar = SpectralSystem::abs_reorder(2);
  CHECK(is_invariant(ar, FinitePoints{signed_perms}));
  CHECK(is_invariant(SpectralSystem::sing_val(2, 3), FinitePoints{signed_perms}));
  CHECK_FALSE(is_invariant(ar, FinitePoints{{signed_perms.begin(), signed_perms.end() - 1}}));

  Rng rng(3);
  for (const auto& sys : {SpectralSystem::reorder(3), SpectralSystem::abs(3), SpectralSystem::abs_reorder(3)}) {
    for (int trial = 0; trial < 50; ++trial) {
      FinitePoints c;
      for (int i = 0; i < rng.integer(1, 3); ++i) c.points.push_back(rng.normal_vector(3));
      const FinitePoints cl = orbit_closure(sys, c);
      const auto cl_set = as_set(cl.points);
      for (const Vec& p : c.points) CHECK(cl_set.count(p) == 1);
      CHECK(as_set(orbit_closure(sys, cl).points) == cl_set);
      CHECK(is_invariant(sys, cl));
    }
  }
  CHECK_THROWS_AS(orbit_closure(SpectralSystem::abs_reorder(8), FinitePoints{{{1, 2, 3, 4, 5, 6, 7, 8}}}, 1e6),
                  ResourceError);
}
