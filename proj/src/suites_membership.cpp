#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "harness_internal.hpp"
#include "specconv/errors.hpp"
#include "specconv/hull.hpp"
#include "specconv/invariance.hpp"
#include "specconv/linalg/lp.hpp"

namespace specconv::detail {

namespace {

// sup of <c, .> over conv lambda^-1(conv gens), gens in K.
double generator_support(const SpectralSystem& sys, const PointV& c, const std::vector<Vec>& gens) {
  const Vec lc = spectral_map(sys, c);
  double best = -kInf;
  for (const Vec& g : gens) best = std::max(best, dot(lc, g));
  return best;
}

std::vector<Vec> flats(const std::vector<PointV>& pts) {
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.flat());
  return out;
}

// Judges one engine verdict on x against the hull of the generators' orbits: exactly for vector
// systems (every orbit point is in `cloud`), by the inner/outer sandwich for matrix systems.
void judge(Trial& t, Recorder& rec, const std::vector<Vec>& gens, const std::vector<PointV>& cloud, const PointV& x,
           const MembershipCertificate& cert, bool constructed_member, const Json& in) {
  const SpectralSystem& sys = t.sys;
  if (in_band(cert.violation)) return rec.skip();
  Json& tally = rec.report().details[cert.verdict ? "engine_members" : "engine_non_members"];
  tally = tally.is_null() ? 1 : tally.get<std::size_t>() + 1;
  if (cert.verdict && cert.witness_u) {
    const double r = std::max(polar_cone(sys).violation(sub(spectral_map(sys, x), *cert.witness_u)),
                              hull_distance(gens, *cert.witness_u)) /
                     (1.0 + norm(x));
    rec.residual(r);
    rec.check(r <= 1e-8, t, "certificate: u in conv(C cap K) and lambda(x) - u in polar cone", in, 0.0, r);
  }
  if (sys.is_vector()) {
    const double dist = hull_distance(flats(cloud), x.flat());
    if (in_band(dist)) return rec.skip();
    rec.check(cert.verdict == (dist <= kTol), t, "engine vs brute hull of orbit points", in, dist <= kTol, cert.verdict);
    return;
  }
  const bool inside = constructed_member || hull_distance(flats(cloud), x.flat()) <= kTol;
  if (inside) rec.check(cert.verdict, t, "inner bound: sampled orbit hull point accepted", in, true, cert.verdict);
  if (cert.verdict) {
    double worst = -kInf;
    for (int i = 0; i < 50; ++i) {
      const PointV c = random_point(sys, t.rng);
      worst = std::max(worst, (inner(c, x) - generator_support(sys, c, gens)) / (norm(c) * (1.0 + norm(x))));
    }
    rec.check(worst <= 1e-8, t, "outer bound: accepted point below every support value", in, "<= 0", worst);
  } else if (cert.separator) {
    const double margin = inner(*cert.separator, x) - generator_support(sys, *cert.separator, gens);
    rec.check(margin > 0.0, t, "separator verified against the generators", in, "> 0", margin);
  }
}

std::vector<PointV> points_for(Trial& t, const std::vector<Vec>& gens, const std::vector<PointV>& cloud) {
  std::vector<PointV> xs;
  for (std::size_t f = 0; f < 4; ++f) xs.push_back(sample_point(t.sys, gens, cloud, f, t.rng));
  return xs;
}

// Vertices of {t in simplex : sum_i t_i p_i in K}, by solving every square active set.
std::vector<Vec> tspace_vertex_images(const std::vector<Vec>& pts, const ConeDesc& k) {
  const std::size_t n = pts.size(), d = pts.front().size();
  const auto& g = k.inequalities;
  std::vector<Vec> out;
  for (std::size_t jmask = 0; jmask < (std::size_t{1} << g.size()); ++jmask) {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < g.size(); ++r)
      if (jmask >> r & 1) rows.push_back(r);
    const std::size_t m = rows.size() + 1;
    if (m > n) continue;
    std::vector<std::size_t> support(m);
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(m), true);
    do {
      for (std::size_t i = 0, s = 0; i < n; ++i)
        if (pick[i]) support[s++] = i;
      Matrix a(m, m);
      Vec b(m, 0.0);
      b[0] = 1.0;
      for (std::size_t c = 0; c < m; ++c) {
        a(0, c) = 1.0;
        for (std::size_t r = 0; r < rows.size(); ++r) a(r + 1, c) = dot(g[rows[r]], pts[support[c]]);
      }
      Vec ts;
      if (!solve_linear(a, b, ts)) continue;
      if (*std::min_element(ts.begin(), ts.end()) < -1e-12) continue;
      Vec u(d, 0.0);
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t j = 0; j < d; ++j) u[j] += ts[c] * pts[support[c]][j];
      if (k.violation(u) <= 1e-10) out.push_back(std::move(u));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

double min_polar_violation(const ConeDesc& polar, const std::vector<Vec>& base, std::span<const double> p) {
  double best = kInf;
  for (const Vec& b : base) best = std::min(best, polar.violation(sub(p, b)));
  return best;
}

// Smallest s with some z in K, z - b in K polar, y - z in K polar, all up to s.
double lem_b_violation(const ConeDesc& k, const ConeDesc& polar, std::span<const double> b, std::span<const double> y) {
  const std::size_t d = b.size();
  LPProblem lp;
  lp.objective.assign(d + 1, 0.0);
  lp.objective[d] = -1.0;
  lp.bounds = VariableBounds::free(d + 1);
  lp.bounds->lower[d] = 0.0;
  auto row = [&](const Vec& g, double sign, double rhs) {
    Vec r(d + 1);
    for (std::size_t j = 0; j < d; ++j) r[j] = sign * g[j];
    r[d] = -1.0;
    lp.add(std::move(r), Relation::LessEqual, rhs);
  };
  for (const Vec& g : k.inequalities) row(g, 1.0, 0.0);
  for (const Vec& g : polar.inequalities) {
    row(g, 1.0, dot(g, b));    // g.(z - b) <= s
    row(g, -1.0, -dot(g, y));  // g.(y - z) <= s
  }
  for (const Vec& e : polar.equalities) {
    row(e, 1.0, dot(e, b));
    row(e, -1.0, -dot(e, b));
    row(e, -1.0, -dot(e, y));
    row(e, 1.0, dot(e, y));
  }
  const LPResult r = lp_solve(lp);
  if (r.status != LPStatus::Optimal) throw std::runtime_error("lemma B LP failed");
  return std::max(0.0, r.solution[d]);
}

// A small element of the polar cone: u - mu(u) always qualifies.
Vec polar_element(const SpectralSystem& sys, Rng& rng, double s) {
  const Vec u = rng.normal_vector(sys.dim_w());
  return scale(s, sub(u, reduced_map(sys, u)));
}

}  // namespace

void suite_thm_main(SuiteReport& rep, std::size_t trials, std::uint64_t seed,
                    const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("convex D given by generators in K (a singleton on even trials); vector systems compare with the "
                      "brute hull of all orbit points, matrix systems use the inner/outer sandwich");
  run_trials(rep, all_families(), trials, seed, only, [](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    std::vector<Vec> gens;
    const int count = t.index % 2 == 0 ? 1 : t.rng.integer(2, 5);
    for (int i = 0; i < count; ++i) gens.push_back(random_in_K(sys, t.rng));
    const std::vector<PointV> cloud = orbit_cloud(sys, gens, 12, t.rng);
    const VPolytope body{gens};
    const auto xs = points_for(t, gens, cloud);
    for (std::size_t f = 0; f < xs.size(); ++f)
      judge(t, rec, gens, cloud, xs[f], member_conv_hull_of_convexD(sys, body, xs[f]), f <= 1,
            {{"D", gens}, {"x", jv(sys, xs[f])}});
  });
}

void suite_thm_feasible(SuiteReport& rep, std::size_t trials, std::uint64_t seed,
                        const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("finite C of 2-5 points, part of them outside K; vector systems compare with brute_conv_member, "
                      "matrix systems use the inner/outer sandwich and verify separators");
  run_trials(rep, all_families(), trials, seed, only, [](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    const std::vector<Vec> c = random_finite(sys, t.rng, 2, 5);
    const std::vector<Vec> gens = in_K(sys, c);
    const std::vector<PointV> cloud = orbit_cloud(sys, gens, 12, t.rng);
    const SetSpec set = SetSpec::finite(c);
    for (const PointV& x : points_for(t, gens, cloud)) {
      const MembershipCertificate cert = member_conv_hull(sys, set, x);
      const Json in{{"C", c}, {"x", jv(sys, x)}};
      if (sys.is_vector()) {
        const BruteMembership b = brute_conv_violation(sys, FinitePoints{c}, x);
        if (in_band(b.violation) || in_band(cert.violation)) {
          rec.skip();
          continue;
        }
        rec.check(b.member == cert.verdict, t, "member_conv_hull vs brute_conv_member", in, b.member, cert.verdict);
      }
      judge(t, rec, gens, cloud, x, cert, false, in);
    }
  });
}

void suite_equal_hulls(SuiteReport& rep, std::size_t trials, std::uint64_t seed,
                       const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("D = (C cap K) plus random convex combinations of it; conv lambda^-1(D) = conv lambda^-1(C) by brute "
                      "orbit hulls (vector systems) and by the engine (all systems)");
  run_trials(rep, all_families(), trials, seed, only, [](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    const std::vector<Vec> c = random_finite(sys, t.rng);
    const std::vector<Vec> ck = in_K(sys, c);
    std::vector<Vec> d = ck;
    for (int i = t.rng.integer(1, 3); i > 0; --i) d.push_back(convex_combination(ck, t.rng));
    const std::vector<PointV> cloud = orbit_cloud(sys, ck, 12, t.rng);
    std::vector<PointV> cloud_d;
    if (sys.is_vector()) cloud_d = orbit_cloud(sys, d, 0, t.rng);
    for (const PointV& x : points_for(t, ck, cloud)) {
      const Json in{{"C", c}, {"D", d}, {"x", jv(sys, x)}};
      const MembershipCertificate mc = member_conv_hull(sys, SetSpec::finite(c), x);
      const MembershipCertificate md = member_conv_hull(sys, SetSpec::finite(d), x);
      if (in_band(mc.violation) || in_band(md.violation)) {
        rec.skip();
        continue;
      }
      rec.check(mc.verdict == md.verdict, t, "engine: equal hulls for C and D", in, mc.verdict, md.verdict);
      if (sys.is_vector()) {
        const double dc = hull_distance(flats(cloud), x.flat()), dd = hull_distance(flats(cloud_d), x.flat());
        if (in_band(dc) || in_band(dd)) {
          rec.skip();
          continue;
        }
        rec.check((dc <= kTol) == (dd <= kTol), t, "brute: equal hulls for C and D", in, dc <= kTol, dd <= kTol);
      }
    }
  });
}

void suite_thm35(SuiteReport& rep, std::size_t trials, std::uint64_t seed, const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("dimension 2: condition (conv C) cap K within conv(C cap K) + polar cone (exact vertex path) must "
                      "hold exactly when member_via_convC and member_conv_hull agree on 200 sampled x; the sample "
                      "contains every vertex image of the t-space polytope");
  if (only && only->dim_w() != 2) throw InputError("thm35 runs in dimension 2");
  auto fixed_log = std::make_shared<Json>(Json::array());
  auto degenerate = std::make_shared<std::size_t>(0);
  auto holds = std::make_shared<std::size_t>(0);
  auto make = [](SystemKind k, Rng&) {
    switch (k) {
      case SystemKind::Reorder: return SpectralSystem::reorder(2);
      case SystemKind::Abs: return SpectralSystem::abs(2);
      case SystemKind::AbsReorder: return SpectralSystem::abs_reorder(2);
      case SystemKind::SymEig: return SpectralSystem::sym_eig(2);
      case SystemKind::SingVal: break;
    }
    return SpectralSystem::sing_val(2, 2);
  };
  run_trials(
      rep, all_families(), trials, seed, only,
      [fixed_log, degenerate, holds](Trial& t, Recorder& rec) {
        const SpectralSystem& sys = t.sys;
        Rng& rng = t.rng;
        std::vector<Vec> c;
        const bool fixed = sys.kind() == SystemKind::Reorder && t.index < 2;
        if (fixed) {
          c = t.index == 0 ? std::vector<Vec>{{1.0, 0.0}, {1.0, 2.0}} : std::vector<Vec>{{1.0, 0.0}, {0.0, 1.0}};
        } else {
          c = random_finite(sys, rng);
          if (t.index % 4 == 3) c = orbit_closure(sys, FinitePoints{c}).points;
        }
        const SetSpec set = SetSpec::finite(c);
        const ConditionA cond = check_condition_A(sys, set, t.seed);
        if (!cond.exact) rec.report().notes.push_back("non-exact condition check at trial " + std::to_string(t.index));
        if (!cond.holds && cond.counterexample) {
          const PointV xc = align(sys, random_point(sys, rng), *cond.counterexample);
          if (member_conv_hull(sys, set, xc).violation < 1e-6) {
            ++*degenerate;
            return rec.skip();
          }
        }
        const std::vector<Vec> verts = tspace_vertex_images(c, range_cone(sys));
        const double r = radius(c);
        bool agree = true;
        Json first_disagreement;
        for (std::size_t i = 0; i < 200; ++i) {
          PointV x;
          if (i < verts.size()) x = align(sys, random_point(sys, rng), verts[i]);
          else if (i % 3 == 0) x = align(sys, random_point(sys, rng), convex_combination(verts, rng));
          else if (i % 3 == 1) x = (r * rng.uniform(0.1, 1.5) / std::sqrt(2.0)) * random_point(sys, rng);
          else x = align(sys, random_point(sys, rng), verts[i % verts.size()]) + (0.05 * r) * random_point(sys, rng);
          const MembershipCertificate a = member_via_convC(sys, set, x);
          const MembershipCertificate b = member_conv_hull(sys, set, x);
          if (in_band(a.violation) || in_band(b.violation)) continue;
          if (a.verdict != b.verdict && agree) {
            agree = false;
            first_disagreement = jv(sys, x);
          }
        }
        *holds += cond.holds;
        const Json in{{"C", c}, {"disagreement_at", first_disagreement}};
        rec.check(cond.holds == agree, t, "condition verdict matches hull agreement", in, cond.holds, agree);
        if (fixed) fixed_log->push_back({{"C", c}, {"condition", cond.holds}, {"agreement", agree}});
      },
      make);
  rep.details["fixed_sets"] = *fixed_log;
  rep.details["condition_holds"] = *holds;
  rep.details["skipped_near_degenerate"] = *degenerate;
}

void suite_lem_AB(SuiteReport& rep, std::size_t trials, std::uint64_t seed, const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("finite A, B in K of dimension <= 3; equality of lambda^-1(A + polar) and lambda^-1(B + polar) on "
                      "sampled points of V must match B within A + polar and A within B + polar, tested point by point");
  auto equal_cases = std::make_shared<std::size_t>(0);
  run_trials(
      rep, all_families(), trials, seed, only,
      [equal_cases](Trial& t, Recorder& rec) {
        const SpectralSystem& sys = t.sys;
        Rng& rng = t.rng;
        const ConeDesc polar = polar_cone(sys);
        std::vector<Vec> a;
        for (int i = rng.integer(2, 5); i > 0; --i) a.push_back(random_in_K(sys, rng));
        std::vector<Vec> b = a;
        const std::size_t mode = t.index % 3;
        if (mode == 0) {
          const Vec& base = a[static_cast<std::size_t>(rng.integer(0, static_cast<int>(a.size()) - 1))];
          for (double s = 1.0; s > 1e-3; s *= 0.3) {
            const Vec cand = add(base, polar_element(sys, rng, s));
            if (in_range_cone(sys, cand, 0.0)) {
              b.push_back(cand);
              break;
            }
          }
        } else if (mode == 1) {
          b.push_back(random_in_K(sys, rng));
        } else {
          b.erase(b.begin() + rng.integer(0, static_cast<int>(b.size()) - 1));
        }

        auto member = [&](const std::vector<Vec>& base, std::span<const double> p) {
          return min_polar_violation(polar, base, p);
        };
        bool conclusion = true, banded = false;
        for (const Vec& p : b) {
          const double v = member(a, p);
          banded = banded || in_band(v);
          conclusion = conclusion && v <= kTol;
        }
        for (const Vec& p : a) {
          const double v = member(b, p);
          banded = banded || in_band(v);
          conclusion = conclusion && v <= kTol;
        }
        if (banded) return rec.skip();

        std::vector<Vec> probes = a;
        probes.insert(probes.end(), b.begin(), b.end());
        const double r = radius(a);
        for (int i = 0; i < 30; ++i) probes.push_back(scale(r * rng.uniform(0.2, 1.5), random_in_K(sys, rng)));
        for (int i = 0; i < 30; ++i) {
          const Vec& base = a[static_cast<std::size_t>(rng.integer(0, static_cast<int>(a.size()) - 1))];
          probes.push_back(reduced_map(sys, add(base, polar_element(sys, rng, rng.uniform(0.0, 1.0)))));
        }
        bool hypothesis = true;
        for (const Vec& p : probes) {
          const Vec lam = spectral_map(sys, align(sys, random_point(sys, rng), p));
          const double va = member(a, lam), vb = member(b, lam);
          if (in_band(va) || in_band(vb)) continue;
          hypothesis = hypothesis && (va <= kTol) == (vb <= kTol);
        }
        *equal_cases += conclusion;
        rec.check(hypothesis == conclusion, t, "equal preimages <=> mutual containment", {{"A", a}, {"B", b}},
                  conclusion, hypothesis);
      },
      [](SystemKind k, Rng& rng) { return random_system(k, rng, 3, 3); });
  rep.systems = {"reorder:2-3", "abs:2-3", "absreorder:2-3", "symeig:2-3", "singval:2-3x2-3"};
  if (only) rep.systems = {only->name()};
  rep.details["cases_with_equal_preimages"] = *equal_cases;
}

void suite_lem_B(SuiteReport& rep, std::size_t trials, std::uint64_t seed, const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("finite B in K of dimension <= 3; ((B + polar) cap K) + polar = B + polar on 40 sampled points "
                      "per trial, the left side by one LP per point of B");
  run_trials(
      rep, all_families(), trials, seed, only,
      [](Trial& t, Recorder& rec) {
        const SpectralSystem& sys = t.sys;
        Rng& rng = t.rng;
        const ConeDesc polar = polar_cone(sys), k = range_cone(sys);
        std::vector<Vec> b;
        for (int i = rng.integer(1, 4); i > 0; --i) b.push_back(random_in_K(sys, rng));
        const double r = radius(b);
        for (int i = 0; i < 40; ++i) {
          const Vec& base = b[static_cast<std::size_t>(rng.integer(0, static_cast<int>(b.size()) - 1))];
          Vec y;
          switch (i % 4) {
            case 0: y = add(base, polar_element(sys, rng, rng.uniform(0.0, 2.0))); break;
            case 1: y = scale(r * rng.uniform(0.2, 1.5) / std::sqrt(double(sys.dim_w())), rng.normal_vector(sys.dim_w())); break;
            case 2: y = add(base, scale(0.2 * r, rng.normal_vector(sys.dim_w()))); break;
            default: y = scale(rng.uniform(0.5, 1.5), random_in_K(sys, rng)); break;
          }
          const double rhs = min_polar_violation(polar, b, y);
          double lhs = kInf;
          for (const Vec& p : b) lhs = std::min(lhs, lem_b_violation(k, polar, p, y));
          if (in_band(rhs) || in_band(lhs)) {
            rec.skip();
            continue;
          }
          rec.check((lhs <= kTol) == (rhs <= kTol), t, "((B + polar) cap K) + polar = B + polar", {{"B", b}, {"y", y}},
                    rhs <= kTol, lhs <= kTol);
        }
      },
      [](SystemKind kind, Rng& rng) { return random_system(kind, rng, 3, 3); });
  rep.systems = {"reorder:2-3", "abs:2-3", "absreorder:2-3", "symeig:2-3", "singval:2-3x2-3"};
  if (only) rep.systems = {only->name()};
}

void suite_invariance(SuiteReport& rep, std::size_t trials, std::uint64_t seed,
                      const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("per trial: orbit-in-polar and idempotence of mu for a random u, then one invariant C (orbit "
                      "closure of 1-2 random points): feasibility, mu image = C cap K, the hull condition (dim <= 3), "
                      "transfer vs member_conv_hull on 4 points, and sandwiched D on every 25th trial");
  auto bodies = std::make_shared<std::size_t>(0);
  run_trials(rep, all_families(), trials, seed, only, [bodies](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    Rng& rng = t.rng;
    const std::size_t d = sys.dim_w();
    Vec u = rng.normal_vector(d);
    if (t.index % 2) for (double& e : u) e = std::round(2.0 * e) / 2.0;
    const Vec m = reduced_map(sys, u);
    rec.check(check_orbit_in_mu_polar(sys, u), t, "orbit of u within mu(u) + polar", {{"u", u}}, true, false);
    rec.check(reduced_map(sys, m) == m, t, "mu idempotent", {{"u", u}}, m, reduced_map(sys, m));

    FinitePoints seedset;
    for (int i = rng.integer(1, 2); i > 0; --i) {
      Vec p = rng.normal_vector(d);
      if (rng.coin()) for (double& e : p) e = std::round(2.0 * e) / 2.0;
      seedset.points.push_back(p);
    }
    const FinitePoints c = orbit_closure(sys, seedset);
    const SetSpec set = SetSpec::finite(c.points);
    const Json in{{"C_seed", seedset.points}};
    rec.check(is_invariant(sys, c), t, "orbit closure is invariant", in, true, false);
    rec.check(is_feasible(sys, set), t, "invariant C is feasible", in, true, false);
    try {
      const FinitePoints img = mu_image(sys, c);
      const auto ck = std::get<VPolytope>(intersect_with_K(sys, set)).vertices;
      rec.check(std::set<Vec>(img.points.begin(), img.points.end()) == std::set<Vec>(ck.begin(), ck.end()), t,
                "mu(C) = C cap K", in, ck, img.points);
    } catch (const std::exception& e) {
      rec.check(false, t, "mu(C) = C cap K", in, "equal sets", e.what());
    }
    if (d <= 3) {
      const ConditionA cond = check_condition_A(sys, set, t.seed);
      rec.check(cond.holds, t, "invariant C satisfies the hull condition", in, true, cond.holds);
    }
    const std::vector<Vec> gens = in_K(sys, c.points);
    const std::vector<PointV> cloud = orbit_cloud(sys, gens, 8, rng);
    for (const PointV& x : points_for(t, gens, cloud)) {
      const MembershipCertificate cert = member_conv_hull(sys, set, x);
      if (in_band(cert.violation)) {
        rec.skip();
        continue;
      }
      const bool tr = transfer_conv_member(sys, c, x);
      rec.check(tr == cert.verdict, t, "transfer vs member_conv_hull", {{"C_seed", seedset.points}, {"x", jv(sys, x)}},
                cert.verdict, tr);
    }
    if (t.index % 25 == 0) {
      const InsensitivityReport ins = corollary_D_insensitivity(sys, c, 3, t.seed, 8);
      *bodies += ins.bodies;
      rec.check(ins.disagreements == 0, t, "sandwiched D gives the same hull", in, 0, ins.disagreements);
    }
  });
  rep.details["sandwiched_bodies"] = *bodies;
}

}  // namespace specconv::detail
