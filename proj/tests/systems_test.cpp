#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "specconv/errors.hpp"
#include "specconv/linalg/random.hpp"
#include "specconv/systems.hpp"
#include "test_util.hpp"

using namespace specconv;
using testutil::all_systems;
using testutil::max_diff;

TEST_CASE("parse and name round-trip") {
  for (const char* s : {"reorder:3", "abs:2", "absreorder:5", "symeig:4", "singval:3x2"})
    CHECK(SpectralSystem::parse(s).name() == s);
  CHECK(SpectralSystem::parse("singval:4x3").dim_v() == 12);
  CHECK(SpectralSystem::parse("singval:4x3").dim_w() == 3);
  CHECK(SpectralSystem::parse("symeig:3").dim_v() == 6);
  for (const char* bad : {"reorder", "reorder:0", "foo:2", "singval:3", "abs:2x2", "abs:-1"})
    CHECK_THROWS_AS(SpectralSystem::parse(bad), InputError);
}

TEST_CASE("spectral map examples") {
  CHECK(spectral_map(SpectralSystem::reorder(2), PointV::vector({0.0, 1.0})) == Vec{1.0, 0.0});
  const Vec ev = spectral_map(SpectralSystem::sym_eig(2), {Matrix{{1.0, 0.0}, {0.0, 3.0}}});
  CHECK(max_diff(ev, Vec{3.0, 1.0}) <= 1e-12);
  const Vec sv = spectral_map(SpectralSystem::sing_val(2, 2), {Matrix{{0.0, -3.0}, {1.0, 0.0}}});
  CHECK(max_diff(sv, Vec{3.0, 1.0}) <= 1e-12);
  CHECK(spectral_map(SpectralSystem::abs_reorder(3), PointV::vector({1.0, -4.0, 2.0})) == Vec{4.0, 2.0, 1.0});
  CHECK_THROWS_AS(spectral_map(SpectralSystem::reorder(3), PointV::vector({1.0, 2.0})), InputError);
  CHECK_THROWS_AS(spectral_map(SpectralSystem::sym_eig(2), {Matrix{{1.0, 2.0}, {0.0, 1.0}}}), InputError);
}

TEST_CASE("cone membership examples") {
  const auto r2 = SpectralSystem::reorder(2);
  CHECK(in_polar_cone(r2, Vec{-1.0, 1.0}));
  CHECK_FALSE(in_polar_cone(r2, Vec{1.0, -1.0}));
  CHECK(in_polar_cone(SpectralSystem::abs(2), Vec{-1.0, -2.0}));
  CHECK(in_polar_cone(SpectralSystem::abs_reorder(3), Vec{-1.0, 0.5, 0.4}));
  CHECK_FALSE(in_polar_cone(SpectralSystem::abs_reorder(3), Vec{-1.0, 0.5, 0.6}));
  CHECK(in_range_cone(r2, Vec{1.0, 0.0}));
  CHECK_FALSE(in_range_cone(r2, Vec{1.0, 2.0}));
  CHECK(in_range_cone(r2, Vec{-1.0, -2.0}));
  CHECK_FALSE(in_range_cone(SpectralSystem::abs_reorder(2), Vec{-1.0, -2.0}));
  for (const auto& sys : all_systems()) CHECK(in_polar_cone(sys, Vec(sys.dim_w(), 0.0)));
}

TEST_CASE("polar description is the polar of the cone description") {
  Rng rng(3);
  for (const auto& sys : all_systems()) {
    const std::size_t d = sys.dim_w();
    for (int trial = 0; trial < 1000; ++trial) {
      // K points as images of the spectral map; polar points as differences of
      // sorted partial-sum generators built straight from the description.
      const Vec u = spectral_map(sys, random_point(sys, rng));
      Vec y(d, 0.0);
      const ConeDesc p = polar_cone(sys);
      // Generators of the polar: -e1 and e_{i+1}-e_i for sorted cones, -e_i for the orthant,
      // plus -e_d is already covered by -e1 + chain for the nonnegative sorted cone.
      for (std::size_t i = 0; i < d; ++i) {
        const double w = rng.uniform();
        if (sys.kind() == SystemKind::Abs) {
          y[i] -= w;
        } else if (i + 1 < d) {
          y[i] -= w;
          y[i + 1] += w;
        } else if (sys.sorted_nonnegative_range()) {
          y[i] -= w;
        }
      }
      REQUIRE(p.contains(y, 1e-12));
      CHECK(dot(u, y) <= 1e-8);
    }
  }
}

TEST_CASE("align examples") {
  const PointV x = align(SpectralSystem::reorder(2), PointV::vector({0.0, 1.0}), Vec{3.0, 1.0});
  CHECK(x.flat() == Vec{1.0, 3.0});
  const PointV y = align(SpectralSystem::abs(2), PointV::vector({-1.0, 2.0}), Vec{4.0, 5.0});
  CHECK(y.flat() == Vec{-4.0, 5.0});
  const auto s2 = SpectralSystem::sym_eig(2);
  const PointV z = align(s2, {Matrix::identity(2)}, Vec{2.0, 1.0});
  CHECK(max_diff(spectral_map(s2, z), Vec{2.0, 1.0}) <= 1e-8);
  CHECK(std::abs(z.value(0, 0) + z.value(1, 1) - 3.0) <= 1e-8);
  CHECK_THROWS_AS(align(SpectralSystem::reorder(2), PointV::vector({0.0, 1.0}), Vec{1.0, 3.0}), InputError);
}

TEST_CASE("alignment and its three-way equivalence on random inputs") {
  Rng rng(4);
  for (const auto& sys : all_systems()) {
    for (int trial = 0; trial < 300; ++trial) {
      const PointV c = random_point(sys, rng);
      const Vec u = spectral_map(sys, random_point(sys, rng));
      const PointV x = align(sys, c, u);
      const Vec lc = spectral_map(sys, c);
      CHECK(max_diff(spectral_map(sys, x), u) <= 1e-8);
      CHECK(std::abs(inner(c, x) - dot(lc, u)) <= 1e-8);
      CHECK(max_diff(spectral_map(sys, c + x), add(lc, u)) <= 1e-8);
      CHECK(std::abs(norm2(sub(lc, u)) - norm(c - x)) <= 1e-8);
    }
  }
}

TEST_CASE("inequality, norm preservation, homogeneity, Lipschitz, sum majorization") {
  Rng rng(5);
  for (const auto& sys : all_systems()) {
    const ConeDesc polar = polar_cone(sys);
    for (int trial = 0; trial < 300; ++trial) {
      const PointV x = random_point(sys, rng), y = random_point(sys, rng);
      const Vec lx = spectral_map(sys, x), ly = spectral_map(sys, y);
      CHECK(inner(x, y) <= dot(lx, ly) + 1e-8);
      CHECK(std::abs(norm2(lx) - norm(x)) <= 1e-9);
      CHECK(in_range_cone(sys, lx));
      const double t = rng.uniform(0.0, 3.0);
      CHECK(max_diff(spectral_map(sys, t * x), scale(t, lx)) <= 1e-9);
      CHECK(norm2(sub(lx, ly)) <= norm(x - y) + 1e-8);
      PointV sum = x;
      Vec sum_l = lx;
      for (int k = 0; k < rng.integer(0, 2); ++k) {
        const PointV z = random_point(sys, rng);
        sum = sum + z;
        sum_l = add(sum_l, spectral_map(sys, z));
      }
      sum = sum + y;
      sum_l = add(sum_l, ly);
      CHECK(polar.contains(sub(spectral_map(sys, sum), sum_l), 1e-8));
    }
  }
}

TEST_CASE("reduced map") {
  CHECK(reduced_map(SpectralSystem::reorder(3), Vec{1.0, 3.0, 2.0}) == Vec{3.0, 2.0, 1.0});
  CHECK(reduced_map(SpectralSystem::sing_val(2, 3), Vec{-2.0, 1.0}) == Vec{2.0, 1.0});
  CHECK(reduced_map(SpectralSystem::abs(2), Vec{-2.0, 1.0}) == Vec{2.0, 1.0});
  Rng rng(6);
  for (const auto& sys : all_systems()) {
    for (int trial = 0; trial < 200; ++trial) {
      const Vec u = rng.normal_vector(sys.dim_w());
      const Vec m = reduced_map(sys, u);
      CHECK(in_range_cone(sys, m));
      CHECK(reduced_map(sys, m) == m);
      const Vec k = spectral_map(sys, random_point(sys, rng));
      CHECK(reduced_map(sys, k) == k);
    }
  }
}

TEST_CASE("orbit enumeration") {
  const auto o1 = orbit_enumerate(SpectralSystem::reorder(2), Vec{1.0, 0.0});
  REQUIRE(o1.size() == 2);
  std::set<Vec> s1;
  for (const auto& p : o1) s1.insert(p.flat());
  CHECK(s1 == std::set<Vec>{{1.0, 0.0}, {0.0, 1.0}});

  const auto o2 = orbit_enumerate(SpectralSystem::abs(2), Vec{1.0, 1.0});
  std::set<Vec> s2;
  for (const auto& p : o2) s2.insert(p.flat());
  CHECK(s2 == std::set<Vec>{{1.0, 1.0}, {-1.0, 1.0}, {1.0, -1.0}, {-1.0, -1.0}});

  const auto sys3 = SpectralSystem::abs_reorder(2);
  const auto o3 = orbit_enumerate(sys3, Vec{2.0, 1.0});
  std::set<Vec> s3;
  for (const auto& p : o3) {
    s3.insert(p.flat());
    CHECK(spectral_map(sys3, p) == Vec{2.0, 1.0});
  }
  CHECK(o3.size() == 8);
  CHECK(s3.size() == 8);

  // Repeated entries and zeros shrink the orbit.
  CHECK(orbit_enumerate(SpectralSystem::abs_reorder(3), Vec{1.0, 1.0, 0.0}).size() == 3 * 4);
  CHECK(orbit_size(SystemKind::Reorder, Vec{2.0, 2.0, 1.0, 1.0}) == 6.0);

  CHECK_THROWS_AS(orbit_enumerate(SpectralSystem::sym_eig(2), Vec{1.0, 0.0}), UnsupportedError);
  CHECK_THROWS_AS(orbit_enumerate(SpectralSystem::reorder(2), Vec{0.0, 1.0}), InputError);
  CHECK_THROWS_AS(vector_orbit(SystemKind::AbsReorder, Vec(12, 1.0), 1e3), ResourceError);
}

TEST_CASE("orbit sampling") {
  CHECK(orbit_sample(SpectralSystem::sym_eig(3), Vec{1.0, 1.0, 1.0}, 0, 1).empty());
  for (const auto& x : orbit_sample(SpectralSystem::sym_eig(3), Vec{1.0, 1.0, 1.0}, 20, 1))
    CHECK(max_diff(x.value.data(), Matrix::identity(3).data()) <= 1e-12);
  const auto s2 = SpectralSystem::sym_eig(2);
  for (const auto& x : orbit_sample(s2, Vec{2.0, 0.0}, 100, 9)) CHECK(max_diff(spectral_map(s2, x), Vec{2.0, 0.0}) <= 1e-8);
  Rng rng(8);
  for (const auto& sys : all_systems()) {
    const Vec u = spectral_map(sys, random_point(sys, rng));
    const auto a = orbit_sample(sys, u, 30, 77);
    const auto b = orbit_sample(sys, u, 30, 77);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].value == b[i].value);
      CHECK(max_diff(spectral_map(sys, a[i]), u) <= 1e-8);
    }
  }
}
