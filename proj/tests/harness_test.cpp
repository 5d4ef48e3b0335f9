#include "doctest.h"
#include "specconv/errors.hpp"
#include "specconv/harness.hpp"

using namespace specconv;

TEST_CASE("brute hull oracle on hand-computed hulls") {
  const SpectralSystem r2 = SpectralSystem::reorder(2);
  const FinitePoints two{{{1.0, 0.0}, {1.0, 2.0}}};
  CHECK(brute_conv_member(r2, two, PointV::vector({0.3, 0.7})));
  CHECK(brute_conv_member(r2, two, PointV::vector({0.0, 1.0})));
  CHECK_FALSE(brute_conv_member(r2, two, PointV::vector({1.0, 1.0})));
  CHECK_FALSE(brute_conv_member(r2, two, PointV::vector({0.6, 0.5})));

  // Sign orbit of (1,2) spans the box [-1,1] x [-2,2].
  const SpectralSystem a2 = SpectralSystem::abs(2);
  const FinitePoints box{{{1.0, 2.0}}};
  CHECK(brute_conv_member(a2, box, PointV::vector({0.5, -1.5})));
  CHECK(brute_conv_member(a2, box, PointV::vector({-1.0, 2.0})));
  CHECK_FALSE(brute_conv_member(a2, box, PointV::vector({1.1, 0.0})));

  // Signed permutations of (2,1,0): the cross-polytope-like hull contains (1,1,1) but not (2,1,1).
  const SpectralSystem ar3 = SpectralSystem::abs_reorder(3);
  const FinitePoints p{{{2.0, 1.0, 0.0}}};
  CHECK(brute_conv_member(ar3, p, PointV::vector({1.0, 1.0, 1.0})));
  CHECK_FALSE(brute_conv_member(ar3, p, PointV::vector({2.0, 1.0, 1.0})));

  CHECK_THROWS_AS(brute_conv_member(SpectralSystem::sym_eig(2), two, PointV{Matrix::identity(2)}), UnsupportedError);
  CHECK_THROWS_AS(brute_conv_member(SpectralSystem::reorder(8), FinitePoints{{Vec(8, 1.0)}},
                                    PointV::vector(Vec(8, 1.0))),
                  UnsupportedError);
  CHECK_THROWS_AS(brute_conv_member(r2, FinitePoints{{{0.0, 1.0}}}, PointV::vector({0.0, 1.0})), InfeasibleSetError);
}

TEST_CASE("suite registry") {
  CHECK(suite_names().size() == 13);
  CHECK_THROWS_AS(run_suite("no_such_suite", 1, 1), InputError);
  CHECK_THROWS_AS(reproduce("no_such_example"), InputError);
  CHECK_THROWS_AS(run_suite("thm35", 1, 1, SpectralSystem::reorder(3)), InputError);
}

TEST_CASE("every suite passes a short run and reports deterministically") {
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    const SuiteReport a = run_suite(name, 12, 99);
    CHECK(a.passed());
    CHECK(a.checks > 0);
    CHECK(a.max_residual <= 1e-7);
    const SuiteReport b = run_suite(name, 12, 99);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK_FALSE(to_json(a).contains("elapsed"));
  }
}

TEST_CASE("majorization suite on one fixed system") {
  const SuiteReport r = run_suite("majorization_equiv", 500, 7, SpectralSystem::reorder(4));
  CHECK(r.passed());
  CHECK(r.systems == std::vector<std::string>{"reorder:4"});
}

TEST_CASE("hull condition suite on the two fixed sets") {
  const SuiteReport r = run_suite("thm35", 2, 1, SpectralSystem::reorder(2));
  CHECK(r.passed());
  const Json& fixed = r.details.at("fixed_sets");
  REQUIRE(fixed.size() == 2);
  CHECK(fixed[0]["condition"] == false);
  CHECK(fixed[0]["agreement"] == false);
  CHECK(fixed[1]["condition"] == true);
  CHECK(fixed[1]["agreement"] == true);
}

TEST_CASE("example reproductions") {
  for (const auto& id : example_ids()) {
    CAPTURE(id);
    const SuiteReport r = reproduce(id);
    CHECK(r.passed());
    CHECK(r.checks > 0);
  }
  const SuiteReport order = reproduce("conv_order");
  CHECK(order.details.at("gap_point") == Json{1.0, 1.0});
}
