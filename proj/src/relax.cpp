#include "specconv/relax.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "specconv/errors.hpp"
#include "specconv/hull.hpp"
#include "specconv/linalg/decompositions.hpp"
#include "specconv/linalg/quadratic.hpp"
#include "specconv/linalg/random.hpp"

namespace specconv {

namespace {

constexpr const char* kFormat = "specconv.relaxation.v1";

const char* row_type_name(RowType t) {
  switch (t) {
    case RowType::Linear: return "linear";
    case RowType::Quadratic: return "quadratic";
    case RowType::Ordering: return "ordering";
    case RowType::KyFan: return "kyfan";
    case RowType::Simplex: return "simplex";
  }
  return "";
}

RowType row_type_from(const std::string& s) {
  if (s == "linear") return RowType::Linear;
  if (s == "quadratic") return RowType::Quadratic;
  if (s == "ordering") return RowType::Ordering;
  if (s == "kyfan") return RowType::KyFan;
  if (s == "simplex") return RowType::Simplex;
  throw InputError("unknown constraint type '" + s + "'");
}

const char* map_name(KyFanMap m) {
  switch (m) {
    case KyFanMap::Sorted: return "sorted";
    case KyFanMap::AbsSorted: return "abs_sorted";
    case KyFanMap::Eigenvalues: return "eigenvalues";
    case KyFanMap::SingularValues: return "singular_values";
  }
  return "";
}

KyFanMap map_from(const std::string& s) {
  if (s == "sorted") return KyFanMap::Sorted;
  if (s == "abs_sorted") return KyFanMap::AbsSorted;
  if (s == "eigenvalues") return KyFanMap::Eigenvalues;
  if (s == "singular_values") return KyFanMap::SingularValues;
  throw InputError("unknown Ky-Fan map '" + s + "'");
}

// Sum of the `order` largest entries of the chosen spectral function of x.
double kyfan_value(KyFanMap m, const PointV& x, std::size_t order) {
  Vec s;
  switch (m) {
    case KyFanMap::Sorted:
      s = x.flat();
      break;
    case KyFanMap::AbsSorted:
      s = x.flat();
      for (double& v : s) v = std::fabs(v);
      break;
    case KyFanMap::Eigenvalues:
      s = sym_eig(0.5 * (x.value + x.value.transpose())).eigenvalues;
      break;
    case KyFanMap::SingularValues:
      s = svd(x.value).singular_values;
      break;
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  if (order > s.size()) throw InputError("Ky-Fan order exceeds the spectrum size");
  return std::accumulate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(order), 0.0);
}

// The auxiliary block of the relaxation: how a linear functional g on W reads in it.
struct Aux {
  std::string name;
  std::vector<Vec> gens;  // t block
  std::size_t dim = 0;

  Vec coeffs(std::span<const double> g) const {
    if (!gens.empty()) {
      Vec c(gens.size());
      for (std::size_t j = 0; j < gens.size(); ++j) c[j] = dot(g, gens[j]);
      return c;
    }
    return Vec(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(dim));
  }
};

Vec leading_ones(std::size_t d, std::size_t l) {
  Vec g(d, 0.0);
  std::fill(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(l), 1.0);
  return g;
}

RelaxRow linear_row(std::string tag, std::vector<Term> terms, Relation rel, double rhs) {
  RelaxRow r;
  r.type = RowType::Linear;
  r.tag = std::move(tag);
  r.terms = std::move(terms);
  r.relation = rel;
  r.rhs = rhs;
  return r;
}

RelaxRow ordering_row(std::string tag, const std::string& var, std::size_t i, std::optional<std::size_t> next) {
  RelaxRow r;
  r.type = RowType::Ordering;
  r.tag = std::move(tag);
  r.var = var;
  r.index = i;
  r.next = next;
  return r;
}

RelaxRow kyfan_row(std::string tag, KyFanMap m, std::size_t order, Term term) {
  RelaxRow r;
  r.type = RowType::KyFan;
  r.tag = std::move(tag);
  r.map = m;
  r.order = order;
  r.terms.push_back(std::move(term));
  return r;
}

// Rows saying u is in K, with u a free block.
void push_range_cone_rows(const SpectralSystem& sys, const std::string& var, std::vector<RelaxRow>& rows) {
  const std::size_t d = sys.dim_w();
  const std::string tag = "u in range cone K";
  switch (sys.kind()) {
    case SystemKind::Reorder:
    case SystemKind::SymEig:
      for (std::size_t i = 0; i + 1 < d; ++i) rows.push_back(ordering_row(tag, var, i, i + 1));
      break;
    case SystemKind::Abs:
      for (std::size_t i = 0; i < d; ++i) rows.push_back(ordering_row(tag, var, i, std::nullopt));
      break;
    case SystemKind::AbsReorder:
    case SystemKind::SingVal:
      for (std::size_t i = 0; i + 1 < d; ++i) rows.push_back(ordering_row(tag, var, i, i + 1));
      rows.push_back(ordering_row(tag, var, d - 1, std::nullopt));
      break;
  }
}

// Rows saying lambda(x) - u lies in the polar cone.
void push_polar_rows(const SpectralSystem& sys, const Aux& aux, std::vector<RelaxRow>& rows) {
  const std::size_t d = sys.dim_w();
  const std::size_t nv = sys.rows() * sys.cols();
  auto trace_row = [&](Vec xcoef) {
    return linear_row("lambda(x) - u in polar cone: sum(lambda(x)) = sum(u)",
                      {{"x", std::move(xcoef)}, {aux.name, scale(-1.0, aux.coeffs(Vec(d, 1.0)))}}, Relation::Equal, 0.0);
  };
  const std::string ks = "lambda(x) - u in polar cone: Ky-Fan partial sum l=";
  switch (sys.kind()) {
    case SystemKind::Reorder:
      for (std::size_t l = 1; l < d; ++l)
        rows.push_back(kyfan_row(ks + std::to_string(l), KyFanMap::Sorted, l, {aux.name, aux.coeffs(leading_ones(d, l))}));
      rows.push_back(trace_row(Vec(nv, 1.0)));
      break;
    case SystemKind::SymEig: {
      for (std::size_t l = 1; l < d; ++l)
        rows.push_back(
            kyfan_row(ks + std::to_string(l), KyFanMap::Eigenvalues, l, {aux.name, aux.coeffs(leading_ones(d, l))}));
      Vec diag(nv, 0.0);
      for (std::size_t i = 0; i < d; ++i) diag[i * d + i] = 1.0;
      rows.push_back(trace_row(std::move(diag)));
      break;
    }
    case SystemKind::Abs:
      for (std::size_t i = 0; i < d; ++i) {
        Vec e(d, 0.0);
        e[i] = 1.0;
        const Vec ucoef = scale(-1.0, aux.coeffs(e));
        const std::string tag = "lambda(x) - u in polar cone: |x_" + std::to_string(i) + "| <= u_" + std::to_string(i);
        rows.push_back(linear_row(tag, {{"x", e}, {aux.name, ucoef}}, Relation::LessEqual, 0.0));
        rows.push_back(linear_row(tag, {{"x", scale(-1.0, e)}, {aux.name, ucoef}}, Relation::LessEqual, 0.0));
      }
      break;
    case SystemKind::AbsReorder:
      for (std::size_t l = 1; l <= d; ++l)
        rows.push_back(
            kyfan_row(ks + std::to_string(l), KyFanMap::AbsSorted, l, {aux.name, aux.coeffs(leading_ones(d, l))}));
      break;
    case SystemKind::SingVal:
      for (std::size_t l = 1; l <= d; ++l)
        rows.push_back(
            kyfan_row(ks + std::to_string(l), KyFanMap::SingularValues, l, {aux.name, aux.coeffs(leading_ones(d, l))}));
      break;
  }
}

std::vector<std::size_t> shape_of(const SpectralSystem& sys) {
  if (sys.is_vector()) return {sys.rows()};
  return {sys.rows(), sys.cols()};
}

Json objective_json(const SpectralSystem& sys, const Objective& o) {
  switch (o.kind) {
    case Objective::Kind::External: return {{"kind", "external"}};
    case Objective::Kind::Feasibility: return {{"kind", "feasibility"}};
    case Objective::Kind::Linear: break;
  }
  PointV c{Matrix(sys.rows(), sys.cols(), o.coefficients)};
  return {{"kind", "linear"}, {"coefficients", point_to_json(sys, c)}};
}

Objective objective_from(const SpectralSystem& sys, const Json& j) {
  Objective o;
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "external")) return o;
  if (j.is_string() && j.get<std::string>() == "feasibility") {
    o.kind = Objective::Kind::Feasibility;
    return o;
  }
  if (j.is_object() && j.contains("kind")) {
    const std::string k = j.at("kind").is_string() ? j.at("kind").get<std::string>() : "";
    if (k == "external") return o;
    if (k == "feasibility") {
      o.kind = Objective::Kind::Feasibility;
      return o;
    }
    if (k != "linear" || !j.contains("coefficients")) throw InputError("objective must be external, feasibility or linear");
    return objective_from(sys, Json{{"linear", j.at("coefficients")}});
  }
  if (!j.is_object() || !j.contains("linear")) throw InputError("objective must be \"external\" or {\"linear\": ...}");
  o.coefficients = point_from_json(sys, j.at("linear")).flat();
  o.kind = std::all_of(o.coefficients.begin(), o.coefficients.end(), [](double v) { return v == 0.0; })
               ? Objective::Kind::Feasibility
               : Objective::Kind::Linear;
  return o;
}

Json s_json(const ProblemSpec& p) {
  if (!p.s) return "unconstrained";
  return {{"A", to_json(p.s->a)}, {"b", p.s->b}};
}

std::optional<HPolyhedron> s_from(const SpectralSystem& sys, const Json& j) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "unconstrained")) return std::nullopt;
  if (!j.is_object() || !j.contains("A") || !j.contains("b"))
    throw InputError("S must be \"unconstrained\" or {\"A\": ..., \"b\": ...}");
  HPolyhedron h{matrix_from_json(j.at("A"), "S A"), vec_from_json(j.at("b"), "S b")};
  if (h.a.rows() != h.b.size()) throw InputError("S has " + std::to_string(h.a.rows()) + " rows but b has " +
                                                 std::to_string(h.b.size()) + " entries");
  if (h.a.rows() > 0 && h.a.cols() != sys.dim_v()) throw InputError("S rows do not match dim V");
  return h;
}

// Linear form of the emitted system at fixed x: rows over the auxiliary block.
struct Reduced {
  std::vector<LinearConstraint> rows;
  bool simplex = false;
  std::optional<Matrix> q;
  double level = 0.0;
  std::size_t dim = 0;
};

}  // namespace

ProblemSpec problem_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("system") || !j.at("system").is_string())
    throw InputError("problem needs a \"system\" string");
  if (!j.contains("set")) throw InputError("problem needs a \"set\"");
  ProblemSpec p;
  p.system = SpectralSystem::parse(j.at("system").get<std::string>());
  p.c = set_from_json(j.at("set"));
  p.s = s_from(p.system, j.contains("S") ? j.at("S") : Json());
  p.objective = objective_from(p.system, j.contains("objective") ? j.at("objective") : Json());
  return p;
}

Json to_json(const ProblemSpec& p) {
  return {{"system", p.system.name()}, {"set", to_json(p.c)}, {"S", s_json(p)},
          {"objective", objective_json(p.system, p.objective)}};
}

RelaxationSpec emit_relaxation(const ProblemSpec& p) {
  const SpectralSystem& sys = p.system;
  if (p.c.dim() != sys.dim_w())
    throw InputError("set dimension " + std::to_string(p.c.dim()) + " differs from dim W of " + sys.name());
  if (p.s && !sys.is_vector())
    throw UnsupportedError("constraint sets S are supported for vector systems only; " + sys.name() +
                           " accepts S = unconstrained");
  if (p.s && p.s->a.rows() > 0 && p.s->a.cols() != sys.dim_v()) throw InputError("S rows do not match dim V");
  require_feasible(sys, p.c);

  RelaxationSpec r;
  r.source = p;
  r.variables.push_back({"x", shape_of(sys), {}});

  if (p.s)
    for (std::size_t i = 0; i < p.s->a.rows(); ++i) {
      const auto row = p.s->a.row(i);
      r.rows.push_back(linear_row("x in S", {{"x", Vec(row.begin(), row.end())}}, Relation::LessEqual, p.s->b[i]));
    }

  Aux aux;
  const std::size_t d = sys.dim_w();
  if (p.c.is_finite()) {
    aux.name = "t";
    aux.gens = std::get<VPolytope>(intersect_with_K(sys, p.c)).vertices;
    aux.dim = aux.gens.size();
    r.variables.push_back({"t", {aux.dim}, aux.gens});
    RelaxRow s;
    s.type = RowType::Simplex;
    s.tag = "u = sum_j t_j g_j in conv(C cap K): t in the standard simplex";
    s.var = "t";
    r.rows.push_back(std::move(s));
  } else if (p.c.is_hpoly()) {
    aux.name = "u";
    aux.dim = d;
    r.variables.push_back({"u", {d}, {}});
    const HPolyhedron& h = p.c.polyhedron();
    for (std::size_t i = 0; i < h.a.rows(); ++i) {
      const auto row = h.a.row(i);
      r.rows.push_back(linear_row("u in C", {{"u", Vec(row.begin(), row.end())}}, Relation::LessEqual, h.b[i]));
    }
    push_range_cone_rows(sys, "u", r.rows);
  } else {
    const auto slice = std::get<OrderedEllipsoidSlice>(intersect_with_K(sys, p.c));
    aux.name = "v";
    aux.dim = slice.k;
    r.variables.push_back({"v", {slice.k}, {}});
    for (std::size_t i = 0; i + 1 < slice.k; ++i)
      r.rows.push_back(ordering_row("u = (v, 0) in K: v ordered", "v", i, i + 1));
    r.rows.push_back(ordering_row("u = (v, 0) in K: v nonnegative", "v", slice.k - 1, std::nullopt));
    RelaxRow qrow;
    qrow.type = RowType::Quadratic;
    qrow.tag = "u = (v, 0) in C: v' [A]_kk v <= 1";
    qrow.var = "v";
    qrow.q = slice.q;
    qrow.rhs = 1.0;
    r.rows.push_back(std::move(qrow));
  }
  push_polar_rows(sys, aux, r.rows);
  return r;
}

Json to_json(const RelaxationSpec& r) {
  const SpectralSystem& sys = r.source.system;
  Json vars = Json::array();
  for (const RelaxVar& v : r.variables) {
    Json jv{{"name", v.name}, {"shape", v.shape}};
    if (!v.generators.empty()) jv["generators"] = v.generators;
    vars.push_back(std::move(jv));
  }
  Json rows = Json::array();
  for (const RelaxRow& row : r.rows) {
    Json j{{"type", row_type_name(row.type)}, {"tag", row.tag}};
    auto terms = [&] {
      Json t = Json::array();
      for (const Term& term : row.terms) t.push_back({{"var", term.var}, {"coeffs", term.coeffs}});
      return t;
    };
    switch (row.type) {
      case RowType::Linear:
        j["terms"] = terms();
        j["relation"] = row.relation == Relation::Equal ? "=" : "<=";
        j["rhs"] = row.rhs;
        break;
      case RowType::Quadratic:
        j["var"] = row.var;
        j["Q"] = to_json(row.q);
        j["rhs"] = row.rhs;
        break;
      case RowType::Ordering:
        j["var"] = row.var;
        j["index"] = row.index;
        j["next"] = row.next ? Json(*row.next) : Json(nullptr);
        break;
      case RowType::KyFan:
        j["map"] = map_name(row.map);
        j["arg"] = "x";
        j["order"] = row.order;
        j["terms"] = terms();
        j["rhs"] = row.rhs;
        break;
      case RowType::Simplex:
        j["var"] = row.var;
        break;
    }
    rows.push_back(std::move(j));
  }
  return {{"format", kFormat},
          {"system", sys.name()},
          {"problem", {{"set", to_json(r.source.c)}, {"S", s_json(r.source)},
                       {"objective", objective_json(sys, r.source.objective)}}},
          {"variables", std::move(vars)},
          {"constraints", std::move(rows)}};
}

RelaxationSpec relaxation_from_json(const Json& j) {
  if (!j.is_object() || j.value("format", "") != kFormat) throw InputError(std::string("expected a ") + kFormat + " document");
  try {
    Json problem = j.at("problem");
    problem["system"] = j.at("system");
    RelaxationSpec r;
    r.source = problem_from_json(problem);
    for (const Json& v : j.at("variables")) {
      RelaxVar rv{v.at("name").get<std::string>(), v.at("shape").get<std::vector<std::size_t>>(), {}};
      if (v.contains("generators")) rv.generators = v.at("generators").get<std::vector<Vec>>();
      r.variables.push_back(std::move(rv));
    }
    for (const Json& c : j.at("constraints")) {
      RelaxRow row;
      row.type = row_type_from(c.at("type").get<std::string>());
      row.tag = c.at("tag").get<std::string>();
      if (c.contains("terms"))
        for (const Json& t : c.at("terms")) row.terms.push_back({t.at("var").get<std::string>(), vec_from_json(t.at("coeffs"), "coeffs")});
      if (c.contains("relation")) row.relation = c.at("relation").get<std::string>() == "=" ? Relation::Equal : Relation::LessEqual;
      if (c.contains("rhs")) row.rhs = c.at("rhs").get<double>();
      if (c.contains("var")) row.var = c.at("var").get<std::string>();
      if (c.contains("Q")) row.q = matrix_from_json(c.at("Q"), "Q");
      if (c.contains("index")) row.index = c.at("index").get<std::size_t>();
      if (c.contains("next") && !c.at("next").is_null()) row.next = c.at("next").get<std::size_t>();
      if (c.contains("map")) row.map = map_from(c.at("map").get<std::string>());
      if (c.contains("order")) row.order = c.at("order").get<std::size_t>();
      r.rows.push_back(std::move(row));
    }
    return r;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed relaxation: ") + e.what());
  }
}

RowFeasibility relaxation_feasible_at(const RelaxationSpec& r, const PointV& x) {
  check_point(r.source.system, x);
  const Vec xf = x.flat();
  const RelaxVar* aux = nullptr;
  for (const RelaxVar& v : r.variables)
    if (v.name != "x") aux = &v;
  if (!aux) throw InputError("relaxation has no auxiliary block");
  Reduced red;
  red.dim = std::accumulate(aux->shape.begin(), aux->shape.end(), std::size_t{1}, std::multiplies<>());

  auto split = [&](const std::vector<Term>& terms, double sign) {
    Vec coef(red.dim, 0.0);
    double constant = 0.0;
    for (const Term& t : terms) {
      if (t.var == "x") {
        constant += dot(t.coeffs, xf);
      } else if (t.var == aux->name) {
        for (std::size_t i = 0; i < red.dim; ++i) coef[i] += sign * t.coeffs[i];
      } else {
        throw InputError("unknown variable '" + t.var + "' in relaxation");
      }
    }
    return std::pair{coef, constant};
  };

  for (const RelaxRow& row : r.rows) {
    switch (row.type) {
      case RowType::Linear: {
        auto [coef, constant] = split(row.terms, 1.0);
        red.rows.push_back({std::move(coef), row.relation, row.rhs - constant});
        break;
      }
      case RowType::KyFan: {
        auto [coef, constant] = split(row.terms, -1.0);
        red.rows.push_back({std::move(coef), Relation::LessEqual, row.rhs - constant - kyfan_value(row.map, x, row.order)});
        break;
      }
      case RowType::Ordering: {
        Vec coef(red.dim, 0.0);
        coef[row.index] = -1.0;
        if (row.next) coef[*row.next] = 1.0;
        red.rows.push_back({std::move(coef), Relation::LessEqual, 0.0});
        break;
      }
      case RowType::Quadratic:
        red.q = row.q;
        red.level = row.rhs;
        break;
      case RowType::Simplex:
        red.simplex = true;
        break;
    }
  }

  RowFeasibility out;
  if (red.q) {
    const QuadFeasibility f = quad_feasible(*red.q, red.rows, red.level);
    out.feasible = f.feasible;
    out.margin = f.minimum - red.level;
    return out;
  }
  // Minimize the largest row violation s; the simplex row stays exact.
  const std::size_t s = red.dim;
  LPProblem lp;
  lp.objective.assign(s + 1, 0.0);
  lp.objective[s] = -1.0;
  lp.bounds = red.simplex ? VariableBounds::nonnegative(s + 1) : VariableBounds::free(s + 1);
  lp.bounds->lower[s] = 0.0;
  if (red.simplex) {
    Vec ones(s + 1, 1.0);
    ones[s] = 0.0;
    lp.add(std::move(ones), Relation::Equal, 1.0);
  }
  for (const LinearConstraint& c : red.rows) {
    Vec coef = c.row;
    coef.push_back(-1.0);
    lp.add(coef, Relation::LessEqual, c.rhs);
    if (c.relation == Relation::Equal) {
      for (std::size_t i = 0; i < s; ++i) coef[i] = -coef[i];
      lp.add(std::move(coef), Relation::LessEqual, -c.rhs);
    }
  }
  const LPResult res = lp_solve(lp);
  if (res.status != LPStatus::Optimal) throw std::runtime_error("relaxation feasibility program did not reach optimality");
  out.margin = std::max(0.0, res.solution[s]);
  out.feasible = out.margin <= kTol;
  return out;
}

ValidationReport validate_relaxation(const RelaxationSpec& r, std::size_t samples, std::uint64_t seed) {
  const ProblemSpec& p = r.source;
  const SpectralSystem& sys = p.system;
  Rng rng(seed);

  // Points of C cap K reached by maximizing random directions.
  std::vector<Vec> anchors;
  for (int i = 0; i < 24; ++i) {
    const SupResult s = spectral_sup(sys, random_point(sys, rng), p.c);
    if (!s.unbounded && s.argmax_u) anchors.push_back(*s.argmax_u);
  }
  double radius = 1.0;
  for (const Vec& a : anchors) radius = std::max(radius, norm2(a));

  auto s_margin = [&](const Vec& xf) {
    double m = -kInf;
    if (!p.s) return m;
    for (std::size_t i = 0; i < p.s->a.rows(); ++i) {
      const double nr = norm2(p.s->a.row(i));
      if (nr > 0.0) m = std::max(m, (dot(p.s->a.row(i), xf) - p.s->b[i]) / nr);
      else m = std::max(m, -p.s->b[i]);
    }
    return m;
  };

  ValidationReport rep;
  rep.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    PointV x;
    const std::size_t kind = anchors.empty() ? 3 : i % 4;
    if (kind <= 2) {
      Vec u = anchors[static_cast<std::size_t>(rng.integer(0, static_cast<int>(anchors.size()) - 1))];
      if (kind >= 1) {
        const Vec& w = anchors[static_cast<std::size_t>(rng.integer(0, static_cast<int>(anchors.size()) - 1))];
        const double th = rng.uniform();
        for (std::size_t j = 0; j < u.size(); ++j) u[j] = (1.0 - th) * u[j] + th * w[j];
      }
      x = align(sys, random_point(sys, rng), u);
      if (kind == 2) x = (1.25 + rng.uniform()) * x;
    } else {
      x = (radius * rng.uniform(0.2, 2.0) / std::sqrt(static_cast<double>(sys.dim_v()))) * random_point(sys, rng);
    }
    const double sm = s_margin(x.flat());
    const MembershipCertificate cert = member_conv_hull(sys, p.c, x);
    const RowFeasibility f = relaxation_feasible_at(r, x);
    const bool ambiguous = std::fabs(sm) < 1e-6 || (cert.violation > 1e-10 && cert.violation < 1e-6) ||
                           (p.c.is_ellipsoid() ? std::fabs(f.margin) < 1e-6 : (f.margin > 1e-10 && f.margin < 1e-6));
    if (ambiguous) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    const bool expected = sm <= 0.0 && cert.verdict;
    if (expected) ++rep.members;
    if (expected != f.feasible) {
      ++rep.disagreements;
      rep.failures.push_back({i, x, expected, f.feasible});
    }
  }
  return rep;
}

Json to_json(const SpectralSystem& sys, const ValidationReport& v) {
  Json failures = Json::array();
  for (const auto& f : v.failures)
    failures.push_back({{"sample", f.sample}, {"x", point_to_json(sys, f.x)}, {"expected", f.expected}, {"got", f.got}});
  return {{"samples", v.samples},   {"checked", v.checked},          {"skipped", v.skipped},
          {"members", v.members},   {"disagreements", v.disagreements}, {"failures", std::move(failures)}};
}

}  // namespace specconv
