#include "specconv/linalg/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specconv/errors.hpp"

namespace specconv {

VariableBounds VariableBounds::nonnegative(std::size_t n) { return {Vec(n, 0.0), Vec(n, kInf)}; }
VariableBounds VariableBounds::free(std::size_t n) { return {Vec(n, -kInf), Vec(n, kInf)}; }

void validate(const LPProblem& p) {
  const std::size_t n = p.num_vars();
  for (const auto& c : p.constraints) {
    if (c.row.size() != n) throw InputError("LP constraint row length differs from objective length");
    if (!std::isfinite(c.rhs)) throw InputError("LP rhs must be finite");
  }
  if (p.bounds) {
    if (p.bounds->lower.size() != n || p.bounds->upper.size() != n)
      throw InputError("LP bounds length differs from objective length");
    for (std::size_t j = 0; j < n; ++j)
      if (p.bounds->lower[j] > p.bounds->upper[j]) throw InputError("LP bound lower > upper");
  }
}

namespace {

// z_j = offset_j + sum over (col, coef) of coef * z'_col, z' >= 0.
struct VarMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;
};

class Tableau {
 public:
  Tableau(std::size_t m, std::size_t ncols) : m_(m), n_(ncols), t_(m, ncols + 1), basis_(m) {}

  double& at(std::size_t i, std::size_t j) { return t_(i, j); }
  double at(std::size_t i, std::size_t j) const { return t_(i, j); }
  double& rhs(std::size_t i) { return t_(i, n_); }
  double rhs(std::size_t i) const { return t_(i, n_); }
  std::vector<std::size_t>& basis() { return basis_; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  void pivot(std::size_t r, std::size_t c) {
    const double piv = t_(r, c);
    for (std::size_t j = 0; j <= n_; ++j) t_(r, j) /= piv;
    t_(r, c) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) t_(i, j) -= f * t_(r, j);
      t_(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  // Reduced costs d_j = c_j - c_B' T_j for a minimization objective.
  Vec reduced_costs(const Vec& cost) const {
    Vec d(cost);
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) d[j] -= cb * t_(i, j);
    }
    return d;
  }

  // y_i = c_B' B^{-1} e_i, read off the column initially basic in row i.
  Vec duals(const Vec& cost, const std::vector<std::size_t>& initial_col) const {
    Vec y(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += cost[basis_[i]] * t_(i, initial_col[r]);
      y[r] = s;
    }
    return y;
  }

 private:
  std::size_t m_, n_;
  Matrix t_;
  std::vector<std::size_t> basis_;
};

enum class PhaseOutcome { Optimal, Unbounded };

// Minimizes cost over the tableau with Bland's rule. Columns with allowed[j] == false never enter.
PhaseOutcome run_phase(Tableau& tab, const Vec& cost, const std::vector<bool>& allowed, const LPOptions& opt,
                       std::size_t& pivots) {
  while (true) {
    const Vec d = tab.reduced_costs(cost);
    std::size_t enter = tab.cols();
    for (std::size_t j = 0; j < tab.cols(); ++j)
      if (allowed[j] && d[j] < -opt.pivot_tol) {
        enter = j;
        break;
      }
    if (enter == tab.cols()) return PhaseOutcome::Optimal;

    std::size_t leave = tab.rows();
    double best = kInf;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      const double a = tab.at(i, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(tab.rhs(i), 0.0) / a;
      if (leave == tab.rows() || ratio < best - 1e-12) {
        best = ratio;
        leave = i;
      } else if (ratio <= best + 1e-12 && tab.basis()[i] < tab.basis()[leave]) {
        leave = i;
      }
    }
    if (leave == tab.rows()) return PhaseOutcome::Unbounded;
    tab.pivot(leave, enter);
    if (++pivots > opt.max_pivots) throw std::runtime_error("lp_solve: pivot limit exceeded");
  }
}

}  // namespace

LPResult lp_solve(const LPProblem& p, const LPOptions& opt) {
  validate(p);
  const std::size_t n = p.num_vars();
  const VariableBounds box = p.bounds ? *p.bounds : VariableBounds::free(n);

  // Variable substitution into nonnegative columns.
  std::vector<VarMap> vars(n);
  std::size_t ncols_struct = 0;
  struct UpperRow {
    std::size_t col;
    double rhs;
  };
  std::vector<UpperRow> upper_rows;
  for (std::size_t j = 0; j < n; ++j) {
    const double lo = box.lower[j], hi = box.upper[j];
    if (std::isfinite(lo)) {
      vars[j].offset = lo;
      vars[j].terms.push_back({ncols_struct, 1.0});
      if (std::isfinite(hi)) upper_rows.push_back({ncols_struct, hi - lo});
      ++ncols_struct;
    } else if (std::isfinite(hi)) {
      vars[j].offset = hi;
      vars[j].terms.push_back({ncols_struct++, -1.0});
    } else {
      vars[j].terms.push_back({ncols_struct++, 1.0});
      vars[j].terms.push_back({ncols_struct++, -1.0});
    }
  }

  const std::size_t m_user = p.constraints.size();
  const std::size_t m = m_user + upper_rows.size();

  // Dense transformed rows before sign normalization.
  Matrix a_std(m, ncols_struct);
  Vec b_std(m);
  std::vector<Relation> rel(m);
  for (std::size_t i = 0; i < m_user; ++i) {
    const auto& c = p.constraints[i];
    double rhs = c.rhs;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = c.row[j];
      if (a == 0.0) continue;
      rhs -= a * vars[j].offset;
      for (auto [col, coef] : vars[j].terms) a_std(i, col) += a * coef;
    }
    b_std[i] = rhs;
    rel[i] = c.relation;
  }
  for (std::size_t k = 0; k < upper_rows.size(); ++k) {
    a_std(m_user + k, upper_rows[k].col) = 1.0;
    b_std[m_user + k] = upper_rows[k].rhs;
    rel[m_user + k] = Relation::LessEqual;
  }

  // Sign flip so every rhs is nonnegative; then slack / surplus / artificial columns.
  Vec sigma(m, 1.0);
  std::size_t n_slack = 0, n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (b_std[i] < 0.0) sigma[i] = -1.0;
    if (rel[i] == Relation::LessEqual) ++n_slack;
    if (rel[i] == Relation::Equal || sigma[i] < 0.0) ++n_art;
  }
  const std::size_t slack0 = ncols_struct, art0 = ncols_struct + n_slack;
  const std::size_t ncols = art0 + n_art;
  Tableau tab(m, ncols);
  std::vector<std::size_t> initial_col(m);
  std::vector<bool> is_art(ncols, false);
  std::size_t next_slack = slack0, next_art = art0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < ncols_struct; ++j) tab.at(i, j) = sigma[i] * a_std(i, j);
    tab.rhs(i) = sigma[i] * b_std[i];
    std::size_t basic;
    if (rel[i] == Relation::LessEqual) {
      const std::size_t s = next_slack++;
      tab.at(i, s) = sigma[i];
      if (sigma[i] > 0.0) {
        basic = s;
      } else {
        basic = next_art++;
        tab.at(i, basic) = 1.0;
        is_art[basic] = true;
      }
    } else {
      basic = next_art++;
      tab.at(i, basic) = 1.0;
      is_art[basic] = true;
    }
    tab.basis()[i] = basic;
    initial_col[i] = basic;
  }

  LPResult result;
  std::size_t pivots = 0;

  // Phase 1.
  Vec cost1(ncols, 0.0);
  for (std::size_t j = 0; j < ncols; ++j)
    if (is_art[j]) cost1[j] = 1.0;
  std::vector<bool> allowed1(ncols, true);
  run_phase(tab, cost1, allowed1, opt, pivots);
  double w = 0.0;
  for (std::size_t i = 0; i < m; ++i) w += cost1[tab.basis()[i]] * tab.rhs(i);
  const double bscale = 1.0 + norm_inf(b_std);
  if (w > opt.feasibility_tol * bscale) {
    result.status = LPStatus::Infeasible;
    const Vec y = tab.duals(cost1, initial_col);
    result.dual_certificate.resize(m_user);
    for (std::size_t i = 0; i < m_user; ++i) result.dual_certificate[i] = -sigma[i] * y[i];
    return result;
  }

  // Drive zero-level artificials out of the basis where possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (!is_art[tab.basis()[i]]) continue;
    std::size_t best = ncols;
    double best_abs = opt.pivot_tol;
    for (std::size_t j = 0; j < ncols; ++j)
      if (!is_art[j] && std::abs(tab.at(i, j)) > best_abs) {
        best_abs = std::abs(tab.at(i, j));
        best = j;
      }
    if (best < ncols) tab.pivot(i, best);
  }

  // Phase 2: minimize -c'z.
  Vec cost2(ncols, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (auto [col, coef] : vars[j].terms) cost2[col] -= p.objective[j] * coef;
  std::vector<bool> allowed2(ncols);
  for (std::size_t j = 0; j < ncols; ++j) allowed2[j] = !is_art[j];
  const PhaseOutcome out = run_phase(tab, cost2, allowed2, opt, pivots);

  Vec zp(ncols, 0.0);
  for (std::size_t i = 0; i < m; ++i) zp[tab.basis()[i]] = std::max(tab.rhs(i), 0.0);
  result.solution.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double v = vars[j].offset;
    for (auto [col, coef] : vars[j].terms) v += coef * zp[col];
    result.solution[j] = v;
  }

  if (out == PhaseOutcome::Unbounded) {
    result.status = LPStatus::Unbounded;
    result.optimal_value = kInf;
    return result;
  }
  result.status = LPStatus::Optimal;
  result.optimal_value = dot(p.objective, result.solution);
  const Vec y = tab.duals(cost2, initial_col);
  result.dual_certificate.resize(m_user);
  for (std::size_t i = 0; i < m_user; ++i) result.dual_certificate[i] = -sigma[i] * y[i];
  return result;
}

double primal_residual(const LPProblem& p, std::span<const double> z) {
  double r = 0.0;
  for (const auto& c : p.constraints) {
    const double g = dot(c.row, z) - c.rhs;
    r = std::max(r, c.relation == Relation::Equal ? std::abs(g) : std::max(g, 0.0));
  }
  if (p.bounds)
    for (std::size_t j = 0; j < z.size(); ++j) {
      r = std::max(r, p.bounds->lower[j] - z[j]);
      r = std::max(r, z[j] - p.bounds->upper[j]);
    }
  return r;
}

namespace {

// sup over the box of g'z; +inf when a direction is unbounded.
double box_sup(const LPProblem& p, std::span<const double> g, double zero_tol) {
  const std::size_t n = p.num_vars();
  const VariableBounds box = p.bounds ? *p.bounds : VariableBounds::free(n);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(g[j]) <= zero_tol) {
      // treat as zero, but count the finite contribution if any
      const double b = g[j] > 0 ? box.upper[j] : box.lower[j];
      if (std::isfinite(b)) s += g[j] * b;
      continue;
    }
    const double b = g[j] > 0 ? box.upper[j] : box.lower[j];
    if (!std::isfinite(b)) return kInf;
    s += g[j] * b;
  }
  return s;
}

}  // namespace

double dual_value(const LPProblem& p, std::span<const double> y, double zero_tol) {
  const std::size_t n = p.num_vars();
  Vec g(p.objective);
  double by = 0.0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    by += y[i] * p.constraints[i].rhs;
    for (std::size_t j = 0; j < n; ++j) g[j] -= y[i] * p.constraints[i].row[j];
  }
  return by + box_sup(p, g, zero_tol);
}

bool farkas_verifies(const LPProblem& p, std::span<const double> y, double tol) {
  if (y.size() != p.constraints.size()) return false;
  const std::size_t n = p.num_vars();
  Vec g(n, 0.0);
  double by = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (p.constraints[i].relation == Relation::LessEqual && y[i] < -tol) return false;
    by += y[i] * p.constraints[i].rhs;
    for (std::size_t j = 0; j < n; ++j) g[j] += y[i] * p.constraints[i].row[j];
  }
  // min_{box} g'z - y'b must be strictly positive.
  Vec neg(g);
  for (double& v : neg) v = -v;
  const double sup_neg = box_sup(p, neg, tol);
  if (!std::isfinite(sup_neg)) return false;
  return -sup_neg - by > tol;
}

}  // namespace specconv
