#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "harness_internal.hpp"
#include "specconv/hull.hpp"
#include "specconv/linalg/lp.hpp"

namespace specconv::detail {

namespace {

double rel(double v, double scale) { return std::fabs(v) / (1.0 + scale); }

// Entries rounded to a coarse grid, so that ties are common.
Vec tied_vector(std::size_t d, Rng& rng) {
  Vec v(d);
  for (double& e : v) e = std::round(2.0 * rng.normal()) / 2.0;
  return v;
}

// max <w, u> over the polyhedron, or nullopt when unbounded.
std::optional<double> lp_max(const std::vector<LinearConstraint>& rows, const Vec& w) {
  LPProblem lp{w, rows, VariableBounds::free(w.size())};
  const LPResult r = lp_solve(lp);
  if (r.status == LPStatus::Unbounded) return std::nullopt;
  if (r.status != LPStatus::Optimal) throw std::runtime_error("support LP failed");
  return r.optimal_value;
}

}  // namespace

void suite_p1(SuiteReport& rep, std::size_t trials, std::uint64_t seed, const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("<x,y> <= <lambda(x),lambda(y)> and ||lambda(x)|| = ||x||; residuals relative to 1 + ||x|| ||y||");
  run_trials(rep, all_families(), trials, seed, only, [](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    const PointV x = random_point(sys, t.rng);
    PointV y = random_point(sys, t.rng);
    if (t.index % 3 == 1) y = orbit_sample(sys, spectral_map(sys, x), 1, t.rng.bits()).front();
    if (t.index % 3 == 2) y = align(sys, x, random_in_K(sys, t.rng));
    const Vec lx = spectral_map(sys, x), ly = spectral_map(sys, y);
    const double scale = norm(x) * norm(y);
    const double gap = std::max(0.0, inner(x, y) - dot(lx, ly)) / (1.0 + scale);
    const double iso = rel(norm2(lx) - norm(x), norm(x));
    rec.residual(std::max(gap, iso));
    const Json in{{"x", jv(sys, x)}, {"y", jv(sys, y)}};
    rec.check(gap <= 1e-8, t, "inner product bound", in, "<= 0", gap);
    rec.check(iso <= 1e-8, t, "norm preservation", in, 0.0, iso);
    if (t.index % 3 == 2) {
      const double eq = rel(inner(x, y) - dot(lx, ly), scale);
      rec.residual(eq);
      rec.check(eq <= 1e-8, t, "equality for aligned pair", in, 0.0, eq);
    }
  });
}

void suite_p2_align(SuiteReport& rep, std::size_t trials, std::uint64_t seed,
                    const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("x = align(c, u) must satisfy lambda(x) = u and <c,x> = <lambda(c),u>; a third of the trials use tied spectra");
  run_trials(rep, all_families(), trials, seed, only, [](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    PointV c = random_point(sys, t.rng);
    Vec u = random_in_K(sys, t.rng);
    if (t.index % 3 == 1) {
      c = align(sys, random_point(sys, t.rng), reduced_map(sys, tied_vector(sys.dim_w(), t.rng)));
      u = reduced_map(sys, tied_vector(sys.dim_w(), t.rng));
    } else if (t.index % 3 == 2) {
      u = scale(t.rng.uniform(0.0, 2.0), spectral_map(sys, c));
    }
    const PointV x = align(sys, c, u);
    const Vec lx = spectral_map(sys, x);
    const double r1 = norm_inf(sub(lx, u)) / (1.0 + norm2(u));
    const double r2 = rel(inner(c, x) - dot(spectral_map(sys, c), u), norm(c) * norm2(u));
    rec.residual(std::max(r1, r2));
    const Json in{{"c", jv(sys, c)}, {"u", u}};
    rec.check(r1 <= 1e-8, t, "lambda(align(c,u)) = u", in, u, lx);
    rec.check(r2 <= 1e-8, t, "<c, align(c,u)> = <lambda(c), u>", in, 0.0, r2);
  });
}

void suite_gowda(SuiteReport& rep, std::size_t trials, std::uint64_t seed, const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("(i) homogeneity, (ii) 1-Lipschitz, (iii) sum majorization with its inner-product and norm forms, "
                      "(iv) the three equality conditions agree; aligned pairs satisfy all three");
  run_trials(rep, all_families(), trials, seed, only, [](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    Rng& rng = t.rng;
    const ConeDesc polar = polar_cone(sys);
    const PointV x = random_point(sys, rng), y = random_point(sys, rng);
    const Vec lx = spectral_map(sys, x), ly = spectral_map(sys, y);

    const double s = rng.uniform(0.0, 3.0);
    const double r_hom = norm_inf(sub(spectral_map(sys, s * x), scale(s, lx))) / (1.0 + s * norm(x));
    rec.residual(r_hom);
    rec.check(r_hom <= 1e-8, t, "(i) lambda(tx) = t lambda(x)", {{"x", jv(sys, x)}, {"t", s}}, 0.0, r_hom);

    const double r_lip = std::max(0.0, norm2(sub(lx, ly)) - norm(x - y)) / (1.0 + norm(x) + norm(y));
    rec.residual(r_lip);
    rec.check(r_lip <= 1e-8, t, "(ii) 1-Lipschitz", {{"x", jv(sys, x)}, {"y", jv(sys, y)}}, 0.0, r_lip);

    const int k = rng.integer(2, 4);
    std::vector<PointV> xs;
    PointV sum = 0.0 * x;
    Vec lsum(lx.size(), 0.0), norms;
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      xs.push_back(random_point(sys, rng));
      sum = sum + xs.back();
      lsum = add(lsum, spectral_map(sys, xs.back()));
      total += norm(xs.back());
    }
    const Vec lam_sum = spectral_map(sys, sum);
    const double r_maj = polar.violation(sub(lam_sum, lsum)) / (1.0 + total);
    const PointV c = random_point(sys, rng);
    const Vec lc = spectral_map(sys, c);
    const double r_ip = std::max(0.0, dot(lc, lam_sum) - dot(lc, lsum)) / (1.0 + norm(c) * total);
    const double r_norm = std::max(0.0, norm2(lam_sum) - norm2(lsum)) / (1.0 + total);
    rec.residual(std::max({r_maj, r_ip, r_norm}));
    Json in{{"k", k}};
    rec.check(r_maj <= 1e-8, t, "(iii) lambda(sum) - sum lambda in polar cone", in, 0.0, r_maj);
    rec.check(r_ip <= 1e-8, t, "(iii) inner-product form", in, 0.0, r_ip);
    rec.check(r_norm <= 1e-8, t, "(iii) norm consequence", in, 0.0, r_norm);

    // (iv): aligned pairs on even trials, unrelated pairs on odd ones.
    PointV a = x, b = y;
    if (t.index % 2 == 0) {
      const PointV d = random_point(sys, rng);
      a = align(sys, d, random_in_K(sys, rng));
      b = align(sys, d, random_in_K(sys, rng));
    }
    const Vec la = spectral_map(sys, a), lb = spectral_map(sys, b);
    const double sc = 1.0 + norm(a) * norm(b) + norm(a) + norm(b);
    const double ga = std::fabs(inner(a, b) - dot(la, lb)) / sc;
    const double gb = norm_inf(sub(spectral_map(sys, a + b), add(la, lb))) / sc;
    const double gc = std::fabs(norm2(sub(la, lb)) - norm(a - b)) / sc;
    in = {{"x", jv(sys, a)}, {"y", jv(sys, b)}};
    if (t.index % 2 == 0) {
      rec.residual(std::max({ga, gb, gc}));
      rec.check(std::max({ga, gb, gc}) <= 1e-8, t, "(iv) aligned pair satisfies (a), (b), (c)", in, 0.0,
                Json{ga, gb, gc});
    } else if (in_band(ga) || in_band(gb) || in_band(gc)) {
      rec.skip();
    } else {
      const bool ea = ga <= 1e-8, eb = gb <= 1e-8, ec = gc <= 1e-8;
      rec.check(ea == eb && eb == ec, t, "(iv) (a) <=> (b) <=> (c)", in, "all equal", Json{ea, eb, ec});
    }
  });
}

void suite_majorization(SuiteReport& rep, std::size_t trials, std::uint64_t seed,
                        const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("polar-cone test vs brute conv[y] LP (vector systems) and vs constructed members of conv[y] "
                      "(matrix systems); 200 random c screen the inner-product condition whenever x is majorized");
  auto refuted = std::make_shared<std::size_t>(0);
  run_trials(rep, all_families(), trials, seed, only, [refuted](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    Rng& rng = t.rng;
    const PointV y = random_point(sys, rng);
    const Vec ly = spectral_map(sys, y);
    const std::vector<PointV> cloud = orbit_cloud(sys, {ly}, 8, rng);
    PointV x;
    const std::size_t mode = t.index % 3;
    if (mode == 0) x = convex_combination(cloud, rng);
    else if (mode == 1) x = (norm(y) * rng.uniform(0.3, 1.0) / std::sqrt(double(sys.dim_w()))) * random_point(sys, rng);
    else x = convex_combination(cloud, rng) + 0.05 * random_point(sys, rng);
    const Vec lx = spectral_map(sys, x);
    const double v = polar_cone(sys).violation(sub(lx, ly));
    const bool kpolar = majorizes(sys, x, y);
    const Json in{{"x", jv(sys, x)}, {"y", jv(sys, y)}};
    if (mode == 0) rec.check(kpolar, t, "constructed member of conv[y] passes the polar test", in, true, kpolar);

    if (sys.is_vector()) {
      std::vector<Vec> pts;
      for (const auto& p : cloud) pts.push_back(p.flat());
      const double dist = hull_distance(pts, x.flat());
      if (in_band(v) || in_band(dist)) {
        rec.skip();
      } else {
        rec.check(kpolar == (dist <= kTol), t, "polar test vs brute conv[y]", in, dist <= kTol, kpolar);
      }
    }

    double worst = -kInf;
    for (int i = 0; i < 200; ++i) {
      const Vec lc = spectral_map(sys, random_point(sys, rng));
      worst = std::max(worst, (dot(lc, lx) - dot(lc, ly)) / (norm2(lc) * (1.0 + norm2(ly))));
    }
    if (kpolar) {
      rec.residual(std::max(0.0, worst));
      rec.check(worst <= 1e-8, t, "inner-product screen holds for majorized x", in, "<= 0", worst);
    } else if (worst > 0.0) {
      ++*refuted;
    }
  });
  rep.details["screen_refutations_of_non_majorized_x"] = *refuted;
}

void suite_spectral_set(SuiteReport& rep, std::size_t trials, std::uint64_t seed,
                        const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("vector systems: for E = lambda^-1(C) and for E with one orbit broken, the four characterizations "
                      "(preimage, orbit-closed, E = [E], union of orbits) agree; matrix systems: sampled orbits of "
                      "members stay in E and those of non-members stay out");
  run_trials(rep, all_families(), trials, seed, only, [](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    Rng& rng = t.rng;
    const std::vector<Vec> c = random_finite(sys, rng);
    const std::vector<Vec> ck = in_K(sys, c);

    if (!sys.is_vector()) {
      const Vec& u = ck[static_cast<std::size_t>(rng.integer(0, static_cast<int>(ck.size()) - 1))];
      const PointV x = align(sys, random_point(sys, rng), u);
      double worst = 0.0;
      for (const PointV& y : orbit_sample(sys, spectral_map(sys, x), 10, rng.bits()))
        worst = std::max(worst, norm_inf(sub(spectral_map(sys, y), u)) / (1.0 + norm2(u)));
      rec.residual(worst);
      rec.check(worst <= 1e-8, t, "orbit of a member stays in E", {{"C", c}, {"x", jv(sys, x)}}, 0.0, worst);
      const PointV z = x + 0.1 * random_point(sys, rng);
      double nearest = kInf;
      for (const Vec& p : ck) nearest = std::min(nearest, norm_inf(sub(spectral_map(sys, z), p)));
      if (nearest < 1e-6) return rec.skip();
      for (const PointV& y : orbit_sample(sys, spectral_map(sys, z), 10, rng.bits())) {
        double d = kInf;
        for (const Vec& p : ck) d = std::min(d, norm_inf(sub(spectral_map(sys, y), p)));
        if (!rec.check(d > 1e-9, t, "orbit of a non-member stays outside E", {{"C", c}, {"x", jv(sys, z)}}, "> 0", d))
          break;
      }
      return;
    }

    std::set<Vec> e;
    double worst = 0.0;
    for (const Vec& u : ck)
      for (const Vec& v : vector_orbit(sys.kind(), u)) {
        worst = std::max(worst, norm_inf(sub(spectral_map(sys, PointV::vector(v)), u)));
        e.insert(canonical(v));
      }
    rec.residual(worst);
    rec.check(worst <= 1e-12, t, "enumerated orbit points have the generating spectrum", {{"C", c}}, 0.0, worst);

    // Break one orbit: drop a point of a nontrivial orbit, or add a lone point of one.
    std::set<Vec> broken = e;
    const auto victim = std::find_if(e.begin(), e.end(), [&](const Vec& v) {
      return orbit_size(sys.kind(), spectral_map(sys, PointV::vector(v))) > 1.0;
    });
    if (victim != e.end() && rng.coin()) {
      broken.erase(*victim);
    } else {
      Vec z = rng.normal_vector(sys.dim_w());
      broken.insert(canonical(z));
    }

    auto characterize = [&](const std::set<Vec>& s) {
      std::map<Vec, std::size_t> classes;
      for (const Vec& v : s) ++classes[canonical(spectral_map(sys, PointV::vector(v)))];
      double expected = 0.0;
      bool union_of_orbits = true;
      for (const auto& [lam, count] : classes) {
        const double size = orbit_size(sys.kind(), lam);
        expected += size;
        union_of_orbits = union_of_orbits && static_cast<double>(count) == size;
      }
      const bool preimage = static_cast<double>(s.size()) == expected;
      // Points with equal spectra share one orbit, so each class is walked once.
      bool closed = true;
      for (const auto& [lam, count] : classes)
        for (const Vec& w : vector_orbit(sys.kind(), lam)) closed = closed && s.count(canonical(w)) > 0;
      FinitePoints fp;
      fp.points.assign(s.begin(), s.end());
      const FinitePoints cl = orbit_closure(sys, fp);
      const bool fixpoint = std::set<Vec>(cl.points.begin(), cl.points.end()) == s;
      return std::vector<bool>{preimage, closed, fixpoint, union_of_orbits};
    };
    const auto good = characterize(e);
    const auto bad = characterize(broken);
    rec.check(good == std::vector<bool>(4, true), t, "lambda^-1(C) satisfies (i)-(iv)", {{"C", c}}, Json(std::vector<bool>(4, true)), good);
    rec.check(bad == std::vector<bool>(4, false), t, "broken orbit fails (i)-(iv) together",
              {{"E", std::vector<Vec>(broken.begin(), broken.end())}}, Json(std::vector<bool>(4, false)), bad);
  });
}

void suite_sup_equality(SuiteReport& rep, std::size_t trials, std::uint64_t seed,
                        const std::optional<SpectralSystem>& only) {
  rep.notes.push_back("vector systems: the left side maximizes <c,.> over every orbit point of a finite C cap K, or "
                      "solves one LP per orbit point of c for polyhedral C; matrix systems and ellipsoids: sampled "
                      "orbit points bound the supremum from below and align(c, argmax) attains it");
  run_trials(rep, all_families(), trials, seed, only, [](Trial& t, Recorder& rec) {
    const SpectralSystem& sys = t.sys;
    Rng& rng = t.rng;
    const std::size_t d = sys.dim_w();
    PointV c = random_point(sys, rng);
    if (t.index % 11 == 0) c = 0.0 * c;
    const Vec lc = spectral_map(sys, c);

    SetSpec set = SetSpec::finite({Vec(d, 0.0)});
    std::vector<LinearConstraint> rows;
    const std::size_t kind = sys.sorted_nonnegative_range() && t.index % 3 == 2 ? 2 : t.index % 2;
    if (kind == 0) {
      set = SetSpec::finite(random_finite(sys, rng));
    } else if (kind == 1) {
      const bool bounded = t.index % 5 != 1;
      Matrix a(bounded ? 2 * d + 2 : 2, d);
      Vec b(a.rows(), 2.0);
      std::size_t r = 0;
      if (bounded)
        for (std::size_t i = 0; i < d; ++i, r += 2) {
          a(r, i) = 1.0;
          a(r + 1, i) = -1.0;
        }
      for (; r < a.rows(); ++r) {
        for (std::size_t j = 0; j < d; ++j) a(r, j) = rng.normal();
        b[r] = rng.uniform(0.0, 1.0);
      }
      set = SetSpec::hpoly(a, b);
      for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back({Vec(a.row(i).begin(), a.row(i).end()), Relation::LessEqual, b[i]});
      for (const Vec& g : range_cone(sys).inequalities) rows.push_back({g, Relation::LessEqual, 0.0});
      if (!is_feasible(sys, set)) return rec.skip();
    } else {
      set = SetSpec::sparse_ellipsoid(rng.spd(d), static_cast<std::size_t>(rng.integer(1, static_cast<int>(d))));
    }
    const SupResult rhs = spectral_sup(sys, c, set);
    const Json in{{"c", jv(sys, c)}, {"C", to_json(set)}};

    if (sys.is_vector() && kind != 2) {
      double lhs = -kInf;
      bool unbounded = false;
      if (kind == 0) {
        for (const Vec& u : in_K(sys, set.points().points))
          for (const Vec& v : vector_orbit(sys.kind(), u)) lhs = std::max(lhs, dot(c.flat(), v));
      } else {
        for (const Vec& w : vector_orbit(sys.kind(), lc)) {
          const auto m = lp_max(rows, w);
          if (!m) {
            unbounded = true;
            break;
          }
          lhs = std::max(lhs, *m);
        }
      }
      if (!rec.check(unbounded == rhs.unbounded, t, "boundedness agrees", in, unbounded, rhs.unbounded) || unbounded)
        return;
      const double r = rel(lhs - rhs.value, norm(c) * 10.0);
      rec.residual(r);
      rec.check(r <= 1e-8, t, "sup over orbit points = sup over C cap K", in, lhs, rhs.value);
      return;
    }

    if (rhs.unbounded) return;
    // Attainment by the aligned point, and sampled orbit points of other maximizers below the value.
    const PointV best = align(sys, c, *rhs.argmax_u);
    const double r = rel(inner(c, best) - rhs.value, norm(c) * norm(best));
    rec.residual(r);
    rec.check(r <= 1e-8, t, "align(c, argmax) attains the supremum", in, rhs.value, inner(c, best));
    std::vector<Vec> others;
    for (int i = 0; i < 4; ++i) {
      const SupResult o = spectral_sup(sys, random_point(sys, rng), set);
      if (!o.unbounded) others.push_back(*o.argmax_u);
    }
    double worst = -kInf;
    for (const PointV& y : orbit_cloud(sys, others, 6, rng)) worst = std::max(worst, inner(c, y) - rhs.value);
    if (!others.empty()) {
      const double rr = std::max(0.0, worst) / (1.0 + norm(c) * norm(best));
      rec.residual(rr);
      rec.check(rr <= 1e-8, t, "sampled points of lambda^-1(C) stay below the supremum", in, rhs.value, worst + rhs.value);
    }
  });
}

}  // namespace specconv::detail
