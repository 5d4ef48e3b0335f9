#include <algorithm>
#include <cmath>
#include <map>

#include "harness_internal.hpp"
#include "specconv/errors.hpp"
#include "specconv/linalg/lp.hpp"

namespace specconv {

namespace detail {

bool Recorder::check(bool ok, const Trial& t, const std::string& what, Json inputs, Json expected, Json got) {
  ++rep_.checks;
  if (ok) return true;
  ++rep_.failure_count;
  if (rep_.failures.size() < 100)
    rep_.failures.push_back({t.index, t.seed, t.sys.name(), what, std::move(inputs), std::move(expected), std::move(got)});
  return false;
}

SpectralSystem random_system(SystemKind k, Rng& rng, std::size_t max_vector, std::size_t max_matrix) {
  auto pick = [&](std::size_t hi) { return static_cast<std::size_t>(rng.integer(2, static_cast<int>(hi))); };
  switch (k) {
    case SystemKind::Reorder: return SpectralSystem::reorder(pick(max_vector));
    case SystemKind::Abs: return SpectralSystem::abs(pick(max_vector));
    case SystemKind::AbsReorder: return SpectralSystem::abs_reorder(pick(max_vector));
    case SystemKind::SymEig: return SpectralSystem::sym_eig(pick(max_matrix));
    case SystemKind::SingVal: {
      const std::size_t m = pick(max_matrix);
      return SpectralSystem::sing_val(m, pick(max_matrix));
    }
  }
  throw InputError("unknown system family");
}

Vec random_in_K(const SpectralSystem& sys, Rng& rng) { return reduced_map(sys, rng.normal_vector(sys.dim_w())); }

std::vector<Vec> in_K(const SpectralSystem& sys, const std::vector<Vec>& pts) {
  std::vector<Vec> out;
  for (const Vec& p : pts)
    if (in_range_cone(sys, p)) out.push_back(p);
  return out;
}

std::vector<Vec> random_finite(const SpectralSystem& sys, Rng& rng, std::size_t lo, std::size_t hi) {
  const auto n = static_cast<std::size_t>(rng.integer(static_cast<int>(lo), static_cast<int>(hi)));
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(rng.coin() ? random_in_K(sys, rng) : rng.normal_vector(sys.dim_w()));
  if (in_K(sys, pts).empty()) pts.front() = reduced_map(sys, pts.front());
  return pts;
}

Vec convex_combination(const std::vector<Vec>& pts, Rng& rng) {
  const Vec w = rng.simplex_weights(pts.size());
  Vec out(pts.front().size(), 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += w[i] * pts[i][j];
  return out;
}

PointV convex_combination(const std::vector<PointV>& pts, Rng& rng) {
  // A few points at a time keeps the combination away from the barycenter.
  const std::size_t k = std::min<std::size_t>(pts.size(), static_cast<std::size_t>(rng.integer(1, 4)));
  const Vec w = rng.simplex_weights(k);
  PointV out{Matrix(pts.front().value.rows(), pts.front().value.cols())};
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = pts[static_cast<std::size_t>(rng.integer(0, static_cast<int>(pts.size()) - 1))];
    out = out + w[i] * p;
  }
  return out;
}

std::vector<PointV> orbit_cloud(const SpectralSystem& sys, const std::vector<Vec>& gens, std::size_t per, Rng& rng) {
  std::vector<PointV> out;
  for (const Vec& g : gens) {
    std::vector<PointV> pts = sys.is_vector() ? orbit_enumerate(sys, g) : orbit_sample(sys, g, per, rng.bits());
    for (auto& p : pts) out.push_back(std::move(p));
  }
  return out;
}

double hull_distance(const std::vector<Vec>& pts, std::span<const double> x) {
  const std::size_t n = pts.size(), d = x.size();
  LPProblem lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = -1.0;
  lp.bounds = VariableBounds::nonnegative(n + 1);
  Vec ones(n + 1, 1.0);
  ones[n] = 0.0;
  lp.add(std::move(ones), Relation::Equal, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    Vec up(n + 1), down(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      up[i] = pts[i][j];
      down[i] = -pts[i][j];
    }
    up[n] = down[n] = -1.0;
    lp.add(std::move(up), Relation::LessEqual, x[j]);
    lp.add(std::move(down), Relation::LessEqual, -x[j]);
  }
  const LPResult r = lp_solve(lp);
  if (r.status != LPStatus::Optimal) throw std::runtime_error("hull distance LP failed");
  return std::max(0.0, r.solution[n]);
}

double radius(const std::vector<Vec>& pts) {
  double r = 0.0;
  for (const Vec& p : pts) r = std::max(r, norm2(p));
  return std::max(r, 1e-3);
}

PointV sample_point(const SpectralSystem& sys, const std::vector<Vec>& gens, const std::vector<PointV>& cloud,
                    std::size_t family, Rng& rng) {
  switch (family % 4) {
    case 0: return align(sys, random_point(sys, rng), convex_combination(gens, rng));
    case 1: return convex_combination(cloud, rng);
    case 2: return rng.uniform(1.05, 1.6) * convex_combination(cloud, rng);
    default: {
      const double s = radius(gens) * rng.uniform(0.1, 1.5) / std::sqrt(static_cast<double>(sys.dim_w()));
      return s * random_point(sys, rng);
    }
  }
}

Json jv(const SpectralSystem& sys, const PointV& x) { return point_to_json(sys, x); }
Json jset(const std::vector<Vec>& pts) { return pts; }

const std::vector<SystemKind>& all_families() {
  static const std::vector<SystemKind> f{SystemKind::Reorder, SystemKind::Abs, SystemKind::AbsReorder,
                                         SystemKind::SymEig, SystemKind::SingVal};
  return f;
}

const std::vector<SystemKind>& vector_families() {
  static const std::vector<SystemKind> f{SystemKind::Reorder, SystemKind::Abs, SystemKind::AbsReorder};
  return f;
}

namespace {

std::string family_label(SystemKind k) {
  switch (k) {
    case SystemKind::Reorder: return "reorder:2-4";
    case SystemKind::Abs: return "abs:2-4";
    case SystemKind::AbsReorder: return "absreorder:2-4";
    case SystemKind::SymEig: return "symeig:2-5";
    case SystemKind::SingVal: return "singval:2-5x2-5";
  }
  return "";
}

}  // namespace

void run_trials(SuiteReport& rep, const std::vector<SystemKind>& families, std::size_t trials, std::uint64_t seed,
                const std::optional<SpectralSystem>& only, const TrialFn& fn,
                const std::function<SpectralSystem(SystemKind, Rng&)>& make) {
  Recorder rec(rep);
  std::vector<SystemKind> fams = families;
  if (only) {
    if (std::find(families.begin(), families.end(), only->kind()) == families.end())
      throw InputError("suite " + rep.suite + " does not cover " + only->name());
    fams = {only->kind()};
  }
  for (SystemKind k : fams) {
    if (!only) rep.systems.push_back(make ? std::string() : family_label(k));
    const std::uint64_t fseed = derive_seed(seed, static_cast<std::uint64_t>(k));
    for (std::size_t t = 0; t < trials; ++t) {
      const std::uint64_t s = derive_seed(fseed, t);
      Rng rng(s);
      SpectralSystem sys = only ? *only : (make ? make(k, rng) : random_system(k, rng));
      if (!only && make && rep.systems.back().empty()) rep.systems.back() = sys.name();
      Trial trial{t, s, sys, std::move(rng)};
      fn(trial, rec);
    }
  }
  if (only) rep.systems.push_back(only->name());
}

}  // namespace detail

BruteMembership brute_conv_violation(const SpectralSystem& sys, const FinitePoints& c, const PointV& x) {
  if (!sys.is_vector()) throw UnsupportedError("brute-force hulls need a vector system; " + sys.name() + " has continuous orbits");
  if (sys.dim_w() > 7) throw UnsupportedError("brute-force hulls are limited to n <= 7");
  check_point(sys, x);
  double total = 0.0;
  std::vector<Vec> kpts;
  for (const Vec& u : c.points) {
    if (u.size() != sys.dim_w()) throw InputError("set point dimension differs from dim W");
    if (!in_range_cone(sys, u)) continue;
    total += orbit_size(sys.kind(), u);
    kpts.push_back(u);
  }
  if (total > 1e6) throw ResourceError("brute-force orbit enumeration exceeds 1e6 points");
  if (kpts.empty()) throw InfeasibleSetError("C does not meet the range cone of " + sys.name());
  std::vector<Vec> all;
  for (const Vec& u : kpts)
    for (Vec& v : vector_orbit(sys.kind(), u)) all.push_back(std::move(v));
  BruteMembership out;
  out.violation = detail::hull_distance(all, x.flat());
  out.member = out.violation <= kTol;
  return out;
}

bool brute_conv_member(const SpectralSystem& sys, const FinitePoints& c, const PointV& x) {
  return brute_conv_violation(sys, c, x).member;
}

namespace {

const std::map<std::string, detail::SuiteFn>& suites() {
  static const std::map<std::string, detail::SuiteFn> m{
      {"p1", detail::suite_p1},
      {"p2_align", detail::suite_p2_align},
      {"gowda_i_iv", detail::suite_gowda},
      {"majorization_equiv", detail::suite_majorization},
      {"spectral_set_equiv", detail::suite_spectral_set},
      {"sup_equality", detail::suite_sup_equality},
      {"thm_main", detail::suite_thm_main},
      {"thm_feasible", detail::suite_thm_feasible},
      {"prop_equal_hulls", detail::suite_equal_hulls},
      {"thm35", detail::suite_thm35},
      {"lem_AB", detail::suite_lem_AB},
      {"lem_B", detail::suite_lem_B},
      {"invariance", detail::suite_invariance},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"p1",       "p2_align",     "gowda_i_iv",       "majorization_equiv",
                                              "spectral_set_equiv", "sup_equality", "thm_main", "thm_feasible",
                                              "prop_equal_hulls",   "thm35",        "lem_AB",   "lem_B",
                                              "invariance"};
  return names;
}

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids{"two_pt", "conv_order", "cl_nec", "sparse_ellipsoid"};
  return ids;
}

SuiteReport run_suite(const std::string& name, std::size_t trials, std::uint64_t seed,
                      const std::optional<SpectralSystem>& only) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw InputError("unknown suite '" + name + "'");
  SuiteReport rep;
  rep.suite = name;
  rep.trials = trials;
  rep.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  it->second(rep, trials, seed, only);
  rep.elapsed = std::chrono::steady_clock::now() - start;
  return rep;
}

SuiteReport reproduce(const std::string& id, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = id;
  rep.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  if (id == "two_pt") detail::reproduce_two_pt(rep, seed);
  else if (id == "conv_order") detail::reproduce_conv_order(rep, seed);
  else if (id == "cl_nec") detail::reproduce_cl_nec(rep, seed);
  else if (id == "sparse_ellipsoid") detail::reproduce_sparse_ellipsoid(rep, seed);
  else throw InputError("unknown example '" + id + "'");
  rep.elapsed = std::chrono::steady_clock::now() - start;
  return rep;
}

Json to_json(const SuiteReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"trial", f.trial},   {"seed", f.seed},         {"system", f.system}, {"check", f.check},
                        {"inputs", f.inputs}, {"expected", f.expected}, {"got", f.got}});
  return {{"suite", r.suite},
          {"passed", r.passed()},
          {"trials", r.trials},
          {"seed", r.seed},
          {"systems", r.systems},
          {"checks", r.checks},
          {"skipped", r.skipped},
          {"failure_count", r.failure_count},
          {"failures", std::move(failures)},
          {"max_residual", r.max_residual},
          {"notes", r.notes},
          {"details", r.details}};
}

}  // namespace specconv
