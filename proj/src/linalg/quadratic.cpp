#include "specconv/linalg/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specconv/errors.hpp"
#include "specconv/linalg/decompositions.hpp"

namespace specconv {

double min_eigenvalue(const Matrix& q) {
  const SymEigResult e = sym_eig(q);
  return e.eigenvalues.empty() ? 0.0 : e.eigenvalues.back();
}

namespace {

bool independent_of(const std::vector<Vec>& rows, const Vec& candidate) {
  std::vector<Vec> all = rows;
  all.push_back(candidate);
  Matrix a(candidate.size(), all.size());
  for (std::size_t j = 0; j < all.size(); ++j)
    for (std::size_t i = 0; i < candidate.size(); ++i) a(i, j) = all[j][i];
  return orthonormal_basis(a, 1e-10).cols() == all.size();
}

}  // namespace

std::optional<QuadMinimum> minimize_pd_quadratic(const Matrix& q, std::span<const LinearConstraint> lin,
                                                 Vec* farkas) {
  const std::size_t n = q.rows();
  if (q.cols() != n) throw InputError("quadratic form must be square");
  for (const auto& c : lin)
    if (c.row.size() != n) throw InputError("linear constraint length differs from quadratic dimension");

  // Feasible start.
  LPProblem lp;
  lp.objective.assign(n, 0.0);
  lp.constraints.assign(lin.begin(), lin.end());
  const LPResult start = lp_solve(lp);
  if (start.status == LPStatus::Infeasible) {
    if (farkas) *farkas = start.dual_certificate;
    return std::nullopt;
  }
  Vec v = start.solution;

  const std::size_t m = lin.size();
  Matrix h = 2.0 * q;
  std::vector<std::size_t> working;
  std::vector<Vec> working_rows;
  for (std::size_t i = 0; i < m; ++i)
    if (lin[i].relation == Relation::Equal && independent_of(working_rows, lin[i].row)) {
      working.push_back(i);
      working_rows.push_back(lin[i].row);
    }

  Vec lambda_w;
  // After a full unblocked step v minimizes over the working set exactly, so the
  // next direction is zero up to roundoff; likewise when the working set pins v.
  bool stationary = false;
  const std::size_t max_iter = 20 * (n + m) + 200;
  for (std::size_t iter = 0;; ++iter) {
    if (iter > max_iter) throw std::runtime_error("minimize_pd_quadratic: iteration limit exceeded");
    const std::size_t w = working.size();
    // KKT system [H A_w'; A_w 0] [p; lambda] = [-Hv; 0].
    Matrix kkt(n + w, n + w);
    Vec rhs(n + w, 0.0);
    const Vec g = h * v;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) kkt(i, j) = h(i, j);
      rhs[i] = -g[i];
    }
    for (std::size_t k = 0; k < w; ++k)
      for (std::size_t j = 0; j < n; ++j) {
        kkt(n + k, j) = lin[working[k]].row[j];
        kkt(j, n + k) = lin[working[k]].row[j];
      }
    Vec sol;
    if (!solve_linear(kkt, rhs, sol, 1e-14)) throw std::runtime_error("minimize_pd_quadratic: singular KKT system");
    Vec p(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(n));
    lambda_w.assign(sol.begin() + static_cast<std::ptrdiff_t>(n), sol.end());

    const double vscale = 1.0 + norm_inf(v);
    if (stationary || w >= n || norm_inf(p) <= 1e-12 * vscale) {
      stationary = false;
      // Stationary on the working set: drop the most negative inequality multiplier.
      std::size_t drop = w;
      double most_negative = -1e-12 * (1.0 + norm_inf(g));
      for (std::size_t k = 0; k < w; ++k)
        if (lin[working[k]].relation == Relation::LessEqual && lambda_w[k] < most_negative) {
          most_negative = lambda_w[k];
          drop = k;
        }
      if (drop == w) break;
      working.erase(working.begin() + static_cast<std::ptrdiff_t>(drop));
      working_rows.erase(working_rows.begin() + static_cast<std::ptrdiff_t>(drop));
      continue;
    }

    double alpha = 1.0;
    std::size_t blocking = m;
    const double pnorm = norm2(p);
    for (std::size_t i = 0; i < m; ++i) {
      if (lin[i].relation == Relation::Equal) continue;
      if (std::find(working.begin(), working.end(), i) != working.end()) continue;
      const double ap = dot(lin[i].row, p);
      if (ap <= 1e-14 * norm2(lin[i].row) * pnorm) continue;
      const double ratio = std::max(0.0, (lin[i].rhs - dot(lin[i].row, v)) / ap);
      if (ratio < alpha) {
        alpha = ratio;
        blocking = i;
      }
    }
    for (std::size_t j = 0; j < n; ++j) v[j] += alpha * p[j];
    if (blocking < m) {
      working.push_back(blocking);
      working_rows.push_back(lin[blocking].row);
    } else {
      stationary = true;
    }
  }

  QuadMinimum out;
  out.minimizer = v;
  out.minimum = dot(v, q * std::span<const double>(v));
  out.multipliers.assign(m, 0.0);
  for (std::size_t k = 0; k < working.size(); ++k) out.multipliers[working[k]] = lambda_w[k];
  double gap = 0.0;
  for (std::size_t i = 0; i < m; ++i) gap += out.multipliers[i] * (dot(lin[i].row, v) - lin[i].rhs);
  out.duality_gap = std::abs(gap);
  return out;
}

QuadFeasibility quad_feasible(const Matrix& q, std::span<const LinearConstraint> lin, double level, double tol) {
  if (!q.is_symmetric(1e-12)) throw InputError("quad_feasible: Q is not symmetric");
  if (min_eigenvalue(q) <= 1e-10) throw InputError("quad_feasible: Q is not positive definite");
  QuadFeasibility out;
  Vec farkas;
  const auto best = minimize_pd_quadratic(q, lin, &farkas);
  if (!best) {
    out.farkas = std::move(farkas);
    return out;
  }
  out.minimum = best->minimum;
  out.multipliers = best->multipliers;
  out.duality_gap = best->duality_gap;
  out.feasible = best->minimum <= level + tol;
  if (out.feasible) out.witness = best->minimizer;
  return out;
}

}  // namespace specconv
