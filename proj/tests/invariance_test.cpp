#include <set>

#include "doctest.h"
#include "specconv/errors.hpp"
#include "specconv/hull.hpp"
#include "specconv/invariance.hpp"
#include "specconv/linalg/random.hpp"

using namespace specconv;

namespace {

std::set<Vec> as_set(const std::vector<Vec>& v) { return {v.begin(), v.end()}; }

FinitePoints random_invariant(const SpectralSystem& sys, Rng& rng) {
  FinitePoints seed;
  for (int i = 0; i < rng.integer(1, 2); ++i) seed.points.push_back(rng.normal_vector(sys.dim_w()));
  return orbit_closure(sys, seed);
}

}  // namespace

TEST_CASE("reduced system fixes K and maps onto it") {
  Rng rng(1);
  for (const auto& sys : {SpectralSystem::reorder(3), SpectralSystem::abs(3), SpectralSystem::abs_reorder(3),
                          SpectralSystem::sym_eig(3), SpectralSystem::sing_val(3, 4)}) {
    const ReducedSystem red(sys);
    CHECK(red.as_system().is_vector());
    for (int i = 0; i < 1000; ++i) {
      const Vec u = rng.normal_vector(sys.dim_w());
      const Vec m = red.mu(u);
      CHECK(in_range_cone(sys, m));
      CHECK(red.mu(m) == m);
    }
  }
}

TEST_CASE("image under the reduced map") {
  const SpectralSystem r2 = SpectralSystem::reorder(2);
  CHECK(mu_image(r2, FinitePoints{{{1.0, 0.0}, {0.0, 1.0}}}).points == std::vector<Vec>{{1.0, 0.0}});
  CHECK_THROWS_AS(mu_image(r2, FinitePoints{{{1.0, 0.0}}}), PreconditionError);
  const SpectralSystem a2 = SpectralSystem::abs(2);
  const FinitePoints signs{{{1.0, 2.0}, {-1.0, 2.0}, {1.0, -2.0}, {-1.0, -2.0}}};
  CHECK(mu_image(a2, signs).points == std::vector<Vec>{{1.0, 2.0}});
  // Already inside K and invariant: {0} and the diagonal point.
  CHECK(mu_image(r2, FinitePoints{{{1.0, 1.0}}}).points == std::vector<Vec>{{1.0, 1.0}});
}

TEST_CASE("orbits lie in mu(u) + polar") {
  CHECK(check_orbit_in_mu_polar(SpectralSystem::reorder(2), Vec{1.0, 3.0}));
  CHECK(check_orbit_in_mu_polar(SpectralSystem::reorder(2), Vec{3.0, 1.0}));
  Rng rng(2);
  for (const auto& sys : {SpectralSystem::reorder(4), SpectralSystem::abs(4), SpectralSystem::abs_reorder(4)})
    for (int i = 0; i < 300; ++i) CHECK(check_orbit_in_mu_polar(sys, rng.normal_vector(4)));
}

TEST_CASE("transfer membership") {
  const SpectralSystem r2 = SpectralSystem::reorder(2);
  const FinitePoints c{{{1.0, 0.0}, {0.0, 1.0}}};
  const PointV half = PointV::vector({0.5, 0.5});
  CHECK(transfer_conv_member(r2, c, half));
  CHECK(transfer_conv_member(r2, c, half) == member_conv_hull(r2, SetSpec::finite(c.points), half).verdict);
  CHECK_FALSE(transfer_conv_member(r2, c, PointV::vector({1.0, 1.0})));
  CHECK_THROWS_AS(transfer_conv_member(r2, FinitePoints{{{1.0, 0.0}}}, half), PreconditionError);

  Rng rng(3);
  for (const auto& sys : {SpectralSystem::reorder(3), SpectralSystem::abs(3), SpectralSystem::abs_reorder(3),
                          SpectralSystem::sym_eig(3), SpectralSystem::sing_val(3, 3)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const FinitePoints c = random_invariant(sys, rng);
      const SetSpec spec = SetSpec::finite(c.points);
      CHECK(is_feasible(sys, spec));
      CHECK(as_set(mu_image(sys, c).points) ==
            as_set(std::get<VPolytope>(intersect_with_K(sys, spec)).vertices));
      CHECK(check_condition_A(sys, spec).holds);
      for (int q = 0; q < 10; ++q) {
        const PointV x = random_point(sys, rng);
        CHECK(transfer_conv_member(sys, c, x) == member_conv_hull(sys, spec, x).verdict);
      }
    }
  }
}

TEST_CASE("sandwiched D gives the same hull") {
  Rng rng(4);
  for (const auto& sys : {SpectralSystem::reorder(3), SpectralSystem::abs_reorder(2), SpectralSystem::sym_eig(3),
                          SpectralSystem::abs(4)}) {
    for (int trial = 0; trial < 5; ++trial) {
      const FinitePoints c = random_invariant(sys, rng);
      const InsensitivityReport r = corollary_D_insensitivity(sys, c, 20, rng.bits());
      CHECK(r.bodies == 20);
      CHECK(r.disagreements == 0);
    }
  }
}
