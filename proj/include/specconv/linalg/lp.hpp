#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "specconv/linalg/matrix.hpp"

namespace specconv {

enum class Relation { LessEqual, Equal };

struct LinearConstraint {
  Vec row;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// Per-variable box. Infinite entries are allowed on either side.
struct VariableBounds {
  Vec lower;
  Vec upper;

  static VariableBounds nonnegative(std::size_t n);
  static VariableBounds free(std::size_t n);
};

/// maximize <objective, z> subject to the constraint rows and the optional box.
/// Without `bounds` every variable is free.
struct LPProblem {
  Vec objective;
  std::vector<LinearConstraint> constraints;
  std::optional<VariableBounds> bounds;

  std::size_t num_vars() const { return objective.size(); }
  void add(Vec row, Relation rel, double rhs) { constraints.push_back({std::move(row), rel, rhs}); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double optimal_value = 0.0;
  Vec solution;
  /// Optimal: one multiplier per constraint (>= 0 on <= rows).
  /// Infeasible: a Farkas ray y with min_{z in box} sum_i y_i (a_i z - b_i) > 0.
  Vec dual_certificate;
};

struct LPOptions {
  double pivot_tol = 1e-9;
  double feasibility_tol = 1e-9;
  std::size_t max_pivots = 200000;
};

/// Dense two-phase primal simplex with Bland's anti-cycling rule.
LPResult lp_solve(const LPProblem& p, const LPOptions& options = {});

/// Largest violation of the constraint rows and the box at z.
double primal_residual(const LPProblem& p, std::span<const double> z);

/// Lagrangian dual function g(y) = b'y + sup_{z in box} (c - A'y)'z. +inf when unbounded.
double dual_value(const LPProblem& p, std::span<const double> y, double zero_tol = 1e-9);

/// Checks a Farkas ray returned for an infeasible problem.
bool farkas_verifies(const LPProblem& p, std::span<const double> y, double tol = 1e-8);

void validate(const LPProblem& p);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace specconv
