#include <cmath>

#include "doctest.h"
#include "specconv/errors.hpp"
#include "specconv/linalg/decompositions.hpp"
#include "specconv/linalg/lp.hpp"
#include "specconv/linalg/quadratic.hpp"
#include "specconv/linalg/random.hpp"

using namespace specconv;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double orthogonality_error(const Matrix& q) {
  return max_abs_diff(q.transpose() * q, Matrix::identity(q.cols()));
}

}  // namespace

TEST_CASE("lp: single upper bound") {
  LPProblem p{{1.0}, {}, {}};
  p.add({1.0}, Relation::LessEqual, 1.0);
  const LPResult r = lp_solve(p);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.optimal_value == doctest::Approx(1.0));
  CHECK(r.solution[0] == doctest::Approx(1.0));
}

TEST_CASE("lp: contradictory bounds give a verifying Farkas ray") {
  LPProblem p{{1.0}, {}, {}};
  p.add({1.0}, Relation::LessEqual, 1.0);
  p.add({-1.0}, Relation::LessEqual, -2.0);
  const LPResult r = lp_solve(p);
  REQUIRE(r.status == LPStatus::Infeasible);
  CHECK(farkas_verifies(p, r.dual_certificate));
}

TEST_CASE("lp: unbounded objective") {
  LPProblem p{{1.0, 1.0}, {}, {}};
  p.add({1.0, -1.0}, Relation::LessEqual, 1.0);
  CHECK(lp_solve(p).status == LPStatus::Unbounded);
}

TEST_CASE("lp: simplex weights over two points") {
  // t in the standard 2-simplex with t1*(1,0) + t2*(1,2) = target. The image of the
  // simplex is the segment between its two vertex images (1,0) and (1,2).
  auto weights_for = [](double a, double b) {
    LPProblem p{{0.0, 0.0}, {}, VariableBounds::nonnegative(2)};
    p.add({1.0, 1.0}, Relation::Equal, 1.0);
    p.add({1.0, 1.0}, Relation::Equal, a);
    p.add({0.0, 2.0}, Relation::Equal, b);
    return lp_solve(p);
  };
  const LPResult mid = weights_for(1.0, 1.0);
  REQUIRE(mid.status == LPStatus::Optimal);
  CHECK(mid.solution[0] == doctest::Approx(0.5));
  CHECK(mid.solution[1] == doctest::Approx(0.5));
  const LPResult v0 = weights_for(1.0, 0.0);
  REQUIRE(v0.status == LPStatus::Optimal);
  CHECK(v0.solution[0] == doctest::Approx(1.0));
  const LPResult v1 = weights_for(1.0, 2.0);
  REQUIRE(v1.status == LPStatus::Optimal);
  CHECK(v1.solution[1] == doctest::Approx(1.0));
  const LPResult off = weights_for(0.0, 1.0);
  REQUIRE(off.status == LPStatus::Infeasible);
  const LPResult past = weights_for(1.0, 2.5);
  CHECK(past.status == LPStatus::Infeasible);
}

TEST_CASE("lp: dimension mismatch is an input error") {
  LPProblem p{{1.0, 2.0}, {}, {}};
  p.add({1.0}, Relation::LessEqual, 1.0);
  CHECK_THROWS_AS(lp_solve(p), InputError);
}

TEST_CASE("lp: strong duality on random feasible problems") {
  Rng rng(20240601);
  int solved = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 8));
    const std::size_t m = static_cast<std::size_t>(rng.integer(1, 12));
    const Vec z0 = rng.normal_vector(n);
    LPProblem p{rng.normal_vector(n), {}, {}};
    const int bound_kind = rng.integer(0, 2);
    if (bound_kind == 0) {
      p.bounds = VariableBounds{Vec(n, -3.0 - std::abs(norm_inf(z0))), Vec(n, 3.0 + std::abs(norm_inf(z0)))};
    } else if (bound_kind == 1) {
      p.bounds = VariableBounds::nonnegative(n);
    }
    Vec zf = z0;
    if (bound_kind == 1)
      for (double& v : zf) v = std::abs(v);
    for (std::size_t i = 0; i < m; ++i) {
      Vec row = rng.normal_vector(n);
      const bool eq = i < 2 && rng.integer(0, 3) == 0;
      const double rhs = dot(row, zf) + (eq ? 0.0 : rng.uniform(0.0, 1.0));
      p.add(std::move(row), eq ? Relation::Equal : Relation::LessEqual, rhs);
    }
    const LPResult r = lp_solve(p);
    REQUIRE(r.status != LPStatus::Infeasible);
    if (r.status == LPStatus::Unbounded) continue;
    ++solved;
    CHECK(primal_residual(p, r.solution) <= 1e-8);
    CHECK(std::abs(dot(p.objective, r.solution) - r.optimal_value) <= 1e-8);
    for (std::size_t i = 0; i < m; ++i)
      if (p.constraints[i].relation == Relation::LessEqual) CHECK(r.dual_certificate[i] >= -1e-9);
    CHECK(std::abs(dual_value(p, r.dual_certificate) - r.optimal_value) <= 1e-7 * (1.0 + std::abs(r.optimal_value)));
  }
  CHECK(solved > 500);
}

TEST_CASE("lp: random infeasible problems carry Farkas rays") {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    LPProblem p{rng.normal_vector(n), {}, {}};
    Vec a = rng.normal_vector(n);
    p.add(a, Relation::LessEqual, -1.0);
    p.add(scale(-1.0, a), Relation::LessEqual, -1.0);
    for (int i = 0; i < rng.integer(0, 5); ++i) p.add(rng.normal_vector(n), Relation::LessEqual, rng.normal());
    const LPResult r = lp_solve(p);
    REQUIRE(r.status == LPStatus::Infeasible);
    CHECK(farkas_verifies(p, r.dual_certificate));
  }
}

TEST_CASE("lp: deterministic") {
  Rng rng(5);
  LPProblem p{rng.normal_vector(4), {}, VariableBounds::nonnegative(4)};
  for (int i = 0; i < 6; ++i) p.add(rng.normal_vector(4), Relation::LessEqual, 1.0);
  const LPResult a = lp_solve(p), b = lp_solve(p);
  CHECK(a.status == b.status);
  CHECK(a.solution == b.solution);
  CHECK(a.dual_certificate == b.dual_certificate);
}

TEST_CASE("sym_eig: small examples") {
  CHECK(sym_eig(Matrix::identity(2)).eigenvalues == Vec{1.0, 1.0});
  const Vec ev = sym_eig(Matrix{{1.0, 0.0}, {0.0, 3.0}}).eigenvalues;
  CHECK(ev[0] == doctest::Approx(3.0));
  CHECK(ev[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(sym_eig(Matrix{{1.0, 2.0}, {0.0, 1.0}}), InputError);
  CHECK_THROWS_AS(sym_eig(Matrix(2, 3)), InputError);
}

TEST_CASE("sym_eig: reconstruction on random symmetric matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    const Matrix m = rng.symmetric_matrix(n);
    const SymEigResult e = sym_eig(m);
    const Matrix rec = e.eigenvectors * Matrix::diagonal(e.eigenvalues) * e.eigenvectors.transpose();
    CHECK((m - rec).frobenius_norm() <= 1e-10 * (1.0 + m.frobenius_norm()));
    CHECK(orthogonality_error(e.eigenvectors) <= 1e-10);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(e.eigenvalues[i] >= e.eigenvalues[i + 1]);
  }
}

TEST_CASE("svd: small examples") {
  CHECK(svd(Matrix(2, 3)).singular_values == Vec{0.0, 0.0});
  const Vec s = svd(Matrix{{3.0, 0.0}, {0.0, 1.0}}).singular_values;
  CHECK(s[0] == doctest::Approx(3.0));
  CHECK(s[1] == doctest::Approx(1.0));
}

TEST_CASE("svd: reconstruction on random matrices") {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = static_cast<std::size_t>(rng.integer(1, 6));
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    Matrix a = rng.normal_matrix(m, n);
    if (trial % 10 == 0 && n > 1)  // rank deficient
      for (std::size_t i = 0; i < m; ++i) a(i, n - 1) = a(i, 0);
    const SvdResult r = svd(a);
    const Matrix rec = r.u * Matrix::rectangular_diagonal(m, n, r.singular_values) * r.v.transpose();
    CHECK((a - rec).frobenius_norm() <= 1e-10 * (1.0 + a.frobenius_norm()));
    CHECK(orthogonality_error(r.u) <= 1e-10);
    CHECK(orthogonality_error(r.v) <= 1e-10);
    for (std::size_t i = 0; i < r.singular_values.size(); ++i) {
      CHECK(r.singular_values[i] >= 0.0);
      if (i + 1 < r.singular_values.size()) CHECK(r.singular_values[i] >= r.singular_values[i + 1]);
    }
  }
}

TEST_CASE("svd: singular values are square roots of Gram eigenvalues") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = rng.normal_matrix(3, 4);
    const Vec s = svd(a).singular_values;
    const Vec g = sym_eig(a * a.transpose()).eigenvalues;
    for (std::size_t i = 0; i < 3; ++i) CHECK(s[i] == doctest::Approx(std::sqrt(std::max(g[i], 0.0))).epsilon(1e-9));
  }
}

TEST_CASE("quad_feasible: small examples") {
  const std::vector<LinearConstraint> ge2{{{-1.0}, Relation::LessEqual, -2.0}};
  const QuadFeasibility r1 = quad_feasible(Matrix::identity(1), ge2, 1.0);
  CHECK_FALSE(r1.feasible);
  CHECK(r1.minimum == doctest::Approx(4.0));

  const std::vector<LinearConstraint> ordered{{{-1.0, 1.0}, Relation::LessEqual, 0.0},
                                              {{0.0, -1.0}, Relation::LessEqual, 0.0}};
  const QuadFeasibility r2 = quad_feasible(Matrix::identity(2), ordered, 1.0);
  REQUIRE(r2.feasible);
  REQUIRE(r2.witness.has_value());
  CHECK(norm_inf(*r2.witness) <= 1e-12);

  const std::vector<LinearConstraint> empty_set{{{1.0}, Relation::LessEqual, 0.0}, {{-1.0}, Relation::LessEqual, -1.0}};
  const QuadFeasibility r3 = quad_feasible(Matrix::identity(1), empty_set, 10.0);
  CHECK_FALSE(r3.feasible);
  CHECK(std::isinf(r3.minimum));
  LPProblem probe{{0.0}, {empty_set.begin(), empty_set.end()}, {}};
  CHECK(farkas_verifies(probe, r3.farkas));

  CHECK_THROWS_AS(quad_feasible(Matrix{{1.0, 0.0}, {0.0, -1.0}}, ordered, 1.0), InputError);
}

namespace {

// Partial-sum constraints v1 >= v2 >= 0, v1 >= s1, v1 + v2 >= s2 for k = 2.
std::vector<LinearConstraint> two_dim_rows(double s1, double s2) {
  return {{{-1.0, 1.0}, Relation::LessEqual, 0.0},
          {{0.0, -1.0}, Relation::LessEqual, 0.0},
          {{-1.0, 0.0}, Relation::LessEqual, -s1},
          {{-1.0, -1.0}, Relation::LessEqual, -s2}};
}

}  // namespace

TEST_CASE("quad_feasible: agrees with a grid search at k = 2") {
  Rng rng(31);
  int decided = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const Matrix a = rng.spd(3);
    const Matrix q{{a(0, 0), a(0, 1)}, {a(1, 0), a(1, 1)}};
    Vec sv = svd(rng.normal_matrix(3, 3)).singular_values;
    const double scale_to = rng.uniform(0.3, 1.2);
    const double s1 = sv[0] / (sv[0] + sv[1] + sv[2]) * scale_to * 1.5;
    const double s2 = (sv[0] + sv[1]) / (sv[0] + sv[1] + sv[2]) * scale_to * 1.5;
    const auto rows = two_dim_rows(s1, s2);

    const double lmin = min_eigenvalue(q);
    const double r = std::sqrt(1.0 / lmin);
    const double h = 1e-3;
    double grid_min = kInf;
    for (double v1 = -r; v1 <= r; v1 += h)
      for (double v2 = -r; v2 <= r; v2 += h) {
        if (v2 > v1 || v2 < 0 || v1 < s1 || v1 + v2 < s2) continue;
        grid_min = std::min(grid_min, q(0, 0) * v1 * v1 + 2 * q(0, 1) * v1 * v2 + q(1, 1) * v2 * v2);
      }
    const bool grid_feasible = grid_min <= 1.0;
    const QuadFeasibility f = quad_feasible(q, rows, 1.0);
    if (grid_feasible) CHECK(f.minimum <= grid_min + 1e-9);
    if (std::abs(grid_min - 1.0) < 0.02) continue;  // too close for the grid to decide
    ++decided;
    CHECK(f.feasible == grid_feasible);
    if (f.feasible) {
      REQUIRE(f.witness.has_value());
      for (const auto& c : rows) CHECK(dot(c.row, *f.witness) - c.rhs <= 1e-8);
    }
  }
  CHECK(decided >= 6);
}

TEST_CASE("quad_feasible: monotone in level") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Matrix q = rng.spd(2);
    const auto rows = two_dim_rows(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.5));
    bool seen = false;
    for (double level = 0.0; level <= 4.0; level += 0.25) {
      const bool f = quad_feasible(q, rows, level).feasible;
      if (seen) CHECK(f);
      seen = seen || f;
    }
  }
}

TEST_CASE("quad_feasible: multipliers satisfy stationarity") {
  Rng rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, 5));
    const Matrix q = rng.spd(k);
    std::vector<LinearConstraint> rows;
    for (int i = 0; i < 6; ++i) rows.push_back({rng.normal_vector(k), Relation::LessEqual, rng.normal()});
    const auto m = minimize_pd_quadratic(q, rows);
    if (!m) continue;
    Vec grad = scale(2.0, q * m->minimizer);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(m->multipliers[i] >= -1e-9);
      grad = add(grad, scale(m->multipliers[i], rows[i].row));
      CHECK(dot(rows[i].row, m->minimizer) - rows[i].rhs <= 1e-8);
    }
    CHECK(norm_inf(grad) <= 1e-7);
    CHECK(m->duality_gap <= 1e-6);
  }
}
