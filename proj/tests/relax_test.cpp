#include <cmath>

#include "doctest.h"
#include "specconv/errors.hpp"
#include "specconv/linalg/random.hpp"
#include "specconv/relax.hpp"

using namespace specconv;

namespace {

std::size_t count(const RelaxationSpec& r, RowType t) {
  std::size_t n = 0;
  for (const auto& row : r.rows) n += row.type == t;
  return n;
}

ProblemSpec problem(SpectralSystem sys, SetSpec c) {
  ProblemSpec p;
  p.system = sys;
  p.c = std::move(c);
  return p;
}

// Distance from y to the segment between (1,0) and (0,1).
double segment_distance(double y1, double y2) {
  const double a = std::clamp((y1 - y2 + 1.0) / 2.0, 0.0, 1.0);
  return std::hypot(y1 - a, y2 - (1.0 - a));
}

// One instance for every supported (system, set) pair.
std::vector<ProblemSpec> combinations(Rng& rng) {
  std::vector<ProblemSpec> out;
  const std::vector<SpectralSystem> systems{SpectralSystem::reorder(3), SpectralSystem::abs(3),
                                            SpectralSystem::abs_reorder(3), SpectralSystem::sym_eig(3),
                                            SpectralSystem::sing_val(3, 4)};
  for (const auto& sys : systems) {
    const std::size_t d = sys.dim_w();
    std::vector<Vec> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(rng.normal_vector(d));
    pts.push_back(reduced_map(sys, rng.normal_vector(d)));
    out.push_back(problem(sys, SetSpec::finite(pts)));

    Matrix a(2 * d + 1, d);
    Vec b(2 * d + 1, 2.0);
    for (std::size_t i = 0; i < d; ++i) {
      a(2 * i, i) = 1.0;
      a(2 * i + 1, i) = -1.0;
    }
    for (std::size_t j = 0; j < d; ++j) a(2 * d, j) = rng.normal();
    b[2 * d] = 0.5;
    out.push_back(problem(sys, SetSpec::hpoly(a, b)));

    if (sys.sorted_nonnegative_range()) out.push_back(problem(sys, SetSpec::sparse_ellipsoid(rng.spd(d), 2)));
  }
  return out;
}

}  // namespace

TEST_CASE("sparse ellipsoid relaxation has the ordered Ky-Fan structure") {
  Rng rng(3);
  const Matrix a = rng.spd(4);
  const RelaxationSpec r = emit_relaxation(problem(SpectralSystem::sing_val(4, 4), SetSpec::sparse_ellipsoid(a, 2)));
  CHECK(count(r, RowType::Ordering) == 2);
  CHECK(count(r, RowType::Quadratic) == 1);
  CHECK(count(r, RowType::KyFan) == 4);
  CHECK(r.rows.size() == 7);
  for (const auto& row : r.rows) {
    if (row.type == RowType::Quadratic) {
      REQUIRE(row.q.rows() == 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(row.q(i, j) == a(i, j));
    }
    if (row.type == RowType::KyFan) {
      CHECK(row.map == KyFanMap::SingularValues);
      const Vec expect = row.order == 1 ? Vec{1.0, 0.0} : Vec{1.0, 1.0};
      CHECK(row.terms.at(0).var == "v");
      CHECK(row.terms.at(0).coeffs == expect);
    }
  }
}

TEST_CASE("two point example relaxation") {
  const RelaxationSpec r =
      emit_relaxation(problem(SpectralSystem::reorder(2), SetSpec::finite({{1.0, 0.0}, {1.0, 2.0}})));
  REQUIRE(r.variables.size() == 2);
  CHECK(r.variables[1].name == "t");
  CHECK(r.variables[1].generators == std::vector<Vec>{{1.0, 0.0}});
  CHECK(count(r, RowType::Simplex) == 1);
  CHECK(count(r, RowType::KyFan) == 1);
  CHECK(count(r, RowType::Linear) == 1);
  CHECK(r.rows.size() == 3);

  CHECK(relaxation_feasible_at(r, PointV::vector({0.3, 0.7})).feasible);
  CHECK_FALSE(relaxation_feasible_at(r, PointV::vector({1.0, 1.0})).feasible);
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const double y1 = rng.uniform(-1.0, 2.0), y2 = rng.uniform(-1.0, 2.0);
    const double dist = segment_distance(y1, y2);
    if (dist > 1e-9 && dist < 1e-3) continue;
    CHECK(relaxation_feasible_at(r, PointV::vector({y1, y2})).feasible == (dist <= 1e-9));
  }
}

TEST_CASE("objective and S handling") {
  ProblemSpec p = problem(SpectralSystem::reorder(2), SetSpec::finite({{1.0, 0.0}}));
  p.objective = problem_from_json(parse_json(R"({"system":"reorder:2","set":{"variant":"finite","points":[[1,0]]},
                                                "objective":{"linear":[0,0]}})", "test"))
                    .objective;
  CHECK(p.objective.kind == Objective::Kind::Feasibility);
  CHECK(to_json(emit_relaxation(p))["problem"]["objective"]["kind"] == "feasibility");

  p.s = HPolyhedron{Matrix{{1.0, 0.0}}, Vec{0.2}};
  const RelaxationSpec r = emit_relaxation(p);
  CHECK(r.rows.front().tag == "x in S");
  CHECK(relaxation_feasible_at(r, PointV::vector({0.1, 0.9})).feasible);
  CHECK_FALSE(relaxation_feasible_at(r, PointV::vector({0.3, 0.7})).feasible);

  ProblemSpec m = problem(SpectralSystem::sym_eig(2), SetSpec::finite({{1.0, 0.0}}));
  m.s = HPolyhedron{Matrix{{1.0, 0.0, 0.0, 0.0}}, Vec{0.0}};
  CHECK_THROWS_AS(emit_relaxation(m), UnsupportedError);
  CHECK_THROWS_AS(emit_relaxation(problem(SpectralSystem::reorder(2), SetSpec::finite({{0.0, 1.0}}))),
                  InfeasibleSetError);
  Rng rng(2);
  CHECK_THROWS_AS(emit_relaxation(problem(SpectralSystem::sym_eig(3), SetSpec::sparse_ellipsoid(rng.spd(3), 2))),
                  UnsupportedError);
  CHECK_THROWS_AS(emit_relaxation(problem(SpectralSystem::reorder(3), SetSpec::finite({{1.0, 0.0}}))), InputError);
}

TEST_CASE("every supported combination is tagged, serializes and round-trips") {
  Rng rng(11);
  const auto problems = combinations(rng);
  CHECK(problems.size() == 12);
  std::uint64_t seed = 100;
  for (const auto& p : problems) {
    CAPTURE(p.system.name());
    CAPTURE(p.c.variant().index());
    const RelaxationSpec r = emit_relaxation(p);
    for (const auto& row : r.rows) CHECK_FALSE(row.tag.empty());
    const Json j = to_json(r);
    const RelaxationSpec back = relaxation_from_json(parse_json(j.dump(), "relaxation"));
    CHECK(to_json(back) == j);

    const ValidationReport v = validate_relaxation(back, 200, seed++);
    CHECK(v.disagreements == 0);
    CHECK(v.checked >= 120);
    CHECK(v.members >= 20);
    CHECK(v.checked - v.members >= 20);
  }
}
