#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specconv/json_io.hpp"
#include "specconv/sets.hpp"
#include "specconv/systems.hpp"

namespace specconv {

/// Linear objective on V, or a placeholder for an externally supplied convex f.
struct Objective {
  enum class Kind { External, Linear, Feasibility };
  Kind kind = Kind::External;
  Vec coefficients;  ///< row-major over V when kind == Linear
};

/// min f(x) s.t. x in S, lambda(x) in C. An empty `s` means S = V.
struct ProblemSpec {
  SpectralSystem system = SpectralSystem::reorder(1);
  SetSpec c = SetSpec::finite({{0.0}});
  std::optional<HPolyhedron> s;
  Objective objective;
};

enum class RowType { Linear, Quadratic, Ordering, KyFan, Simplex };

/// Spectral function inside a Ky-Fan row: sum of the l largest entries of one of these.
enum class KyFanMap { Sorted, AbsSorted, Eigenvalues, SingularValues };

struct Term {
  std::string var;
  Vec coeffs;
};

/// One emitted constraint. Which fields are meaningful depends on `type`:
///   linear     sum_terms <coeffs, var> (<= or =) rhs
///   quadratic  var' q var <= rhs
///   ordering   var[index] >= var[next], or var[index] >= 0 when next is empty
///   kyfan      (sum of the `order` largest entries of map(x)) - sum_terms <coeffs, var> <= rhs
///   simplex    var >= 0, sum(var) = 1
struct RelaxRow {
  RowType type = RowType::Linear;
  std::string tag;
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
  std::string var;
  Matrix q;
  std::size_t index = 0;
  std::optional<std::size_t> next;
  KyFanMap map = KyFanMap::Sorted;
  std::size_t order = 0;
};

struct RelaxVar {
  std::string name;
  std::vector<std::size_t> shape;
  std::vector<Vec> generators;  ///< for t: u = sum_j t_j generators[j]
};

struct RelaxationSpec {
  ProblemSpec source;
  std::vector<RelaxVar> variables;
  std::vector<RelaxRow> rows;
};

ProblemSpec problem_from_json(const Json& j);
Json to_json(const ProblemSpec& p);
Json to_json(const RelaxationSpec& r);
RelaxationSpec relaxation_from_json(const Json& j);

/// Emits {(x, aux): x in S, u(aux) in conv(C cap K), lambda(x) - u in the polar cone}.
/// Finite C uses simplex weights t over C cap K, polyhedral C a free u, the sparse
/// ellipsoid its leading block v. Matrix systems accept only S = V.
RelaxationSpec emit_relaxation(const ProblemSpec& p);

/// Decides feasibility of the emitted rows at a fixed x (aux variables free).
struct RowFeasibility {
  bool feasible = false;
  double margin = 0.0;  ///< LP: largest violation; quadratic: minimum of the form minus rhs
};
RowFeasibility relaxation_feasible_at(const RelaxationSpec& r, const PointV& x);

struct ValidationFailure {
  std::size_t sample = 0;
  PointV x;
  bool expected = false;
  bool got = false;
};

struct ValidationReport {
  std::size_t samples = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;  ///< within 1e-6 of a boundary on either side
  std::size_t members = 0;
  std::size_t disagreements = 0;
  std::vector<ValidationFailure> failures;
};

ValidationReport validate_relaxation(const RelaxationSpec& r, std::size_t samples, std::uint64_t seed);
Json to_json(const SpectralSystem& sys, const ValidationReport& v);

}  // namespace specconv
