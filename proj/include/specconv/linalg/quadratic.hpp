#pragma once

#include <optional>
#include <span>

#include "specconv/linalg/lp.hpp"

namespace specconv {

/// Minimizer of v'Qv (Q positive definite) over a polyhedron.
struct QuadMinimum {
  Vec minimizer;
  double minimum = 0.0;
  /// One multiplier per constraint; >= 0 on <= rows. Stationarity: 2Qv + sum_i mu_i a_i = 0.
  Vec multipliers;
  double duality_gap = 0.0;
};

/// Primal active-set method from an LP-feasible start. Returns nullopt when the
/// polyhedron is empty, in which case `farkas` (if given) receives the LP ray.
std::optional<QuadMinimum> minimize_pd_quadratic(const Matrix& q, std::span<const LinearConstraint> lin,
                                                 Vec* farkas = nullptr);

struct QuadFeasibility {
  bool feasible = false;
  std::optional<Vec> witness;
  double minimum = kInf;  ///< +inf when the linear system alone is infeasible
  Vec multipliers;
  Vec farkas;             ///< LP ray when the linear system is infeasible
  double duality_gap = 0.0;
};

/// Decides whether some v satisfies every linear constraint together with v'Qv <= level.
/// The minimum of v'Qv is compared against `level` with absolute tolerance `tol`.
QuadFeasibility quad_feasible(const Matrix& q, std::span<const LinearConstraint> lin, double level,
                              double tol = 1e-6);

/// Smallest eigenvalue of the symmetric matrix q.
double min_eigenvalue(const Matrix& q);

}  // namespace specconv
