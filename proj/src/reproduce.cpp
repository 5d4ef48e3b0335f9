#include <algorithm>
#include <cmath>

#include "harness_internal.hpp"
#include "specconv/hull.hpp"
#include "specconv/invariance.hpp"
#include "specconv/relax.hpp"

namespace specconv::detail {

namespace {

// Distance from y to the segment between (1,0) and (0,1).
double segment_distance(double y1, double y2) {
  const double a = std::clamp((y1 - y2 + 1.0) / 2.0, 0.0, 1.0);
  return std::hypot(y1 - a, y2 - (1.0 - a));
}

Trial fixed_trial(const SpectralSystem& sys, std::uint64_t seed) { return Trial{0, seed, sys, Rng(seed)}; }

}  // namespace

void reproduce_two_pt(SuiteReport& rep, std::uint64_t seed) {
  const SpectralSystem sys = SpectralSystem::reorder(2);
  const std::vector<Vec> c{{1.0, 0.0}, {1.0, 2.0}};
  const SetSpec set = SetSpec::finite(c);
  rep.systems = {sys.name()};
  rep.notes.push_back("C = {(1,0),(1,2)}: the hull of its preimage is the segment from (1,0) to (0,1); 101 grid points "
                      "on it are members, 100 random points at distance >= 1e-3 from it are not");
  Recorder rec(rep);
  Trial t = fixed_trial(sys, seed);
  for (int i = 0; i <= 100; ++i) {
    const double a = i / 100.0;
    const PointV x = PointV::vector({a, 1.0 - a});
    const MembershipCertificate cert = member_conv_hull(sys, set, x);
    rec.check(cert.verdict, t, "segment grid point is a member", {{"x", x.flat()}}, true, cert.verdict);
    rec.check(brute_conv_member(sys, FinitePoints{c}, x), t, "brute oracle agrees on the segment", {{"x", x.flat()}},
              true, false);
  }
  std::size_t exterior = 0, rejected = 0;
  while (exterior < 100) {
    const double y1 = t.rng.uniform(-1.0, 2.0), y2 = t.rng.uniform(-1.0, 2.0);
    if (segment_distance(y1, y2) < 1e-3) {
      ++rejected;
      continue;
    }
    ++exterior;
    const PointV x = PointV::vector({y1, y2});
    const MembershipCertificate cert = member_conv_hull(sys, set, x);
    rec.check(!cert.verdict, t, "exterior point is rejected", {{"x", x.flat()}}, false, cert.verdict);
    if (cert.separator) {
      const double margin = inner(*cert.separator, x) - spectral_sup(sys, *cert.separator, set).value;
      rec.check(margin > 0.0, t, "separator certifies the rejection", {{"x", x.flat()}}, "> 0", margin);
    }
  }
  rep.trials = 101 + exterior;
  rep.details = {{"grid_points", 101}, {"exterior_points", exterior}, {"exterior_draws_rejected", rejected}};
}

void reproduce_conv_order(SuiteReport& rep, std::uint64_t seed) {
  const SpectralSystem sys = SpectralSystem::reorder(2);
  const SetSpec c1 = SetSpec::finite({{1.0, 0.0}, {1.0, 2.0}});
  const SetSpec c2 = SetSpec::finite({{1.0, 0.0}, {0.0, 1.0}});
  rep.systems = {sys.name()};
  rep.notes.push_back("(conv C) cap K cannot replace conv(C cap K) in general: for C = {(1,0),(1,2)} the point (1,1) "
                      "separates the two hulls; for the invariant C = {(1,0),(0,1)} they agree");
  Recorder rec(rep);
  Trial t = fixed_trial(sys, seed);
  const PointV gap = PointV::vector({1.0, 1.0});
  const MembershipCertificate via = member_via_convC(sys, c1, gap);
  const MembershipCertificate hull = member_conv_hull(sys, c1, gap);
  rec.check(via.verdict, t, "(1,1) lies in the preimage of (conv C) cap K + polar", {{"x", gap.flat()}}, true, via.verdict);
  rec.check(!hull.verdict, t, "(1,1) lies outside conv of the preimage of C", {{"x", gap.flat()}}, false, hull.verdict);
  const ConditionA cond1 = check_condition_A(sys, c1, seed);
  const ConditionA cond2 = check_condition_A(sys, c2, seed);
  rec.check(!cond1.holds, t, "hull condition fails for the non-invariant set", {}, false, cond1.holds);
  rec.check(cond2.holds, t, "hull condition holds for the invariant set", {}, true, cond2.holds);

  std::size_t checked = 0;
  for (int i = 0; i < 200; ++i) {
    PointV x = PointV::vector({t.rng.uniform(-1.0, 2.0), t.rng.uniform(-1.0, 2.0)});
    if (i % 4 == 0) {
      const double a = t.rng.uniform(-0.2, 1.2);
      x = PointV::vector({a, 1.0 - a});
    }
    const MembershipCertificate a = member_via_convC(sys, c2, x);
    const MembershipCertificate b = member_conv_hull(sys, c2, x);
    if (in_band(a.violation) || in_band(b.violation)) {
      rec.skip();
      continue;
    }
    ++checked;
    rec.check(a.verdict == b.verdict, t, "invariant set: both hulls agree", {{"x", x.flat()}}, b.verdict, a.verdict);
    rec.check(transfer_conv_member(sys, FinitePoints{c2.points().points}, x) == b.verdict, t,
              "invariant set: transfer agrees", {{"x", x.flat()}}, b.verdict, !b.verdict);
  }
  rep.trials = 201;
  rep.details = {{"gap_point", gap.flat()},
                 {"gap_violation_conv_hull", hull.violation},
                 {"condition_counterexample", cond1.counterexample ? Json(*cond1.counterexample) : Json(nullptr)},
                 {"invariant_points_checked", checked}};
}

void reproduce_cl_nec(SuiteReport& rep, std::uint64_t seed) {
  const SpectralSystem sys = SpectralSystem::reorder(2);
  rep.systems = {sys.name()};
  rep.notes.push_back("C = {u : u2^2 <= u1^2 - 1, u1 >= 1}: the preimage of D + polar is the open half-plane "
                      "u1 + u2 > 0, so (t, -t + delta) is a member for every delta > 0 and (t, -t) is not");
  Recorder rec(rep);
  Trial t = fixed_trial(sys, seed);
  const double big = 1e3;
  Json rows = Json::array();
  for (int e = 1; e <= 6; ++e) {
    const double delta = std::pow(10.0, -e);
    const PointV x = PointV::vector({big, -big + delta});
    const MembershipCertificate cert = hyperbola::member(x);
    const Json in{{"t", big}, {"delta", delta}};
    rec.check(cert.verdict, t, "(t, -t + delta) is a member", in, true, cert.verdict);
    rec.check(!cert.closedness_certified, t, "closedness is not certified", in, false, true);
    if (cert.witness_u) {
      const Vec y = spectral_map(sys, x);
      const Vec& u = *cert.witness_u;
      // u on the hyperbola branch and y - u in the polar cone of the sorted cone in R^2.
      const double on_set = std::max({0.0, u[1] * u[1] - (u[0] * u[0] - 1.0), 1.0 - u[0]}) / (1.0 + u[0] * u[0]);
      const double polar = std::max(0.0, (y[0] - u[0]) / (1.0 + std::fabs(u[0]))) +
                           std::fabs((y[0] + y[1]) - (u[0] + u[1])) / (1.0 + std::fabs(u[0]));
      rec.residual(std::max(on_set, polar));
      rec.check(on_set <= 1e-8 && polar <= 1e-8, t, "witness lies on C and differs from y by a polar element", in,
                0.0, Json{on_set, polar});
    }
    rows.push_back({{"delta", delta}, {"member", cert.verdict}, {"alpha", hyperbola::sum_with_polar(x.flat()).alpha}});
  }
  const MembershipCertificate edge = hyperbola::member(PointV::vector({big, -big}));
  rec.check(!edge.verdict, t, "(t, -t) is excluded", {{"t", big}}, false, edge.verdict);
  rec.check(!edge.closedness_certified, t, "closedness is not certified", {{"t", big}}, false, true);

  for (int i = 0; i < 200; ++i) {
    const double y1 = t.rng.uniform(-5.0, 5.0), y2 = t.rng.uniform(-5.0, 5.0);
    if (std::fabs(y1 + y2) < 1e-6) continue;
    const bool m = hyperbola::member(PointV::vector({y1, y2})).verdict;
    rec.check(m == (y1 + y2 > 0.0), t, "membership is the open half-plane", {{"x", Vec{y1, y2}}}, y1 + y2 > 0.0, m);
  }
  rep.trials = 207;
  rep.details = {{"t", big}, {"approach", rows}, {"edge_member", edge.verdict}};
}

void reproduce_sparse_ellipsoid(SuiteReport& rep, std::uint64_t seed) {
  const SpectralSystem sys = SpectralSystem::sing_val(4, 4);
  rep.systems = {sys.name()};
  rep.notes.push_back("20 random positive definite A, k = 2: convex combinations of sampled orbit points are accepted "
                      "(inner bound), accepted points respect spectral_sup in 200 random directions (outer bound), "
                      "rejected points carry verified separators, and the emitted relaxation round-trips");
  Recorder rec(rep);
  std::size_t accepted = 0, rejected = 0, relax_checked = 0;
  for (std::size_t inst = 0; inst < 20; ++inst) {
    const std::uint64_t s = derive_seed(seed, inst);
    Trial t{inst, s, sys, Rng(s)};
    Rng& rng = t.rng;
    const Matrix a = rng.spd(4);
    const SetSpec set = SetSpec::sparse_ellipsoid(a, 2);
    const Json in_a{{"A", to_json(a)}};

    std::vector<Vec> anchors;
    for (int i = 0; i < 3; ++i) {
      Vec v{std::fabs(rng.normal()), std::fabs(rng.normal())};
      std::sort(v.begin(), v.end(), std::greater<>());
      const double q = a(0, 0) * v[0] * v[0] + 2.0 * a(0, 1) * v[0] * v[1] + a(1, 1) * v[1] * v[1];
      const double f = std::sqrt(rng.uniform(0.3, 1.0) / q);
      anchors.push_back({f * v[0], f * v[1], 0.0, 0.0});
    }
    const std::vector<PointV> cloud = orbit_cloud(sys, anchors, 6, rng);
    std::vector<Vec> flat;
    for (const auto& p : cloud) flat.push_back(p.flat());

    std::vector<PointV> dirs;
    for (int i = 0; i < 200; ++i) dirs.push_back(random_point(sys, rng));
    std::vector<double> sup;
    for (const PointV& c : dirs) sup.push_back(spectral_sup(sys, c, set).value);

    for (int i = 0; i < 30; ++i) {
      const bool constructed = i < 10;
      const PointV x = constructed ? convex_combination(cloud, rng)
                                   : (radius(anchors) * rng.uniform(0.2, 1.5) / 2.0) * random_point(sys, rng);
      const MembershipCertificate cert = member_conv_hull(sys, set, x);
      const Json in{{"A", to_json(a)}, {"x", jv(sys, x)}};
      if (constructed || hull_distance(flat, x.flat()) <= kTol)
        rec.check(cert.verdict, t, "inner bound: sampled orbit hull point accepted", in, true, cert.verdict);
      if (cert.verdict) {
        ++accepted;
        double worst = -kInf;
        for (std::size_t j = 0; j < dirs.size(); ++j)
          worst = std::max(worst, (inner(dirs[j], x) - sup[j]) / (norm(dirs[j]) * (1.0 + norm(x))));
        rec.check(worst <= 1e-8, t, "outer bound: accepted point below spectral_sup", in, "<= 0", worst);
      } else {
        ++rejected;
        const bool sep = cert.separator.has_value();
        rec.check(sep, t, "rejection carries a separator", in, true, sep);
        if (sep) {
          const double margin = inner(*cert.separator, x) - spectral_sup(sys, *cert.separator, set).value;
          rec.check(margin > 0.0, t, "separator verified by spectral_sup", in, "> 0", margin);
        }
      }
    }

    ProblemSpec p;
    p.system = sys;
    p.c = set;
    const RelaxationSpec r = emit_relaxation(p);
    const ValidationReport v = validate_relaxation(r, 100, s);
    relax_checked += v.checked;
    rec.check(v.disagreements == 0, t, "relaxation round-trip", in_a, 0, v.disagreements);
  }
  rep.trials = 20;
  rep.details = {{"instances", 20},         {"directions", 200},          {"accepted", accepted},
                 {"rejected", rejected},    {"relaxation_samples_checked", relax_checked}};
}

}  // namespace specconv::detail
