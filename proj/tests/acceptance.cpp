// Acceptance run: one PASS/FAIL line per criterion with its runtime. Exit code 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "specconv/harness.hpp"
#include "specconv/hull.hpp"
#include "specconv/linalg/random.hpp"
#include "specconv/sets.hpp"
#include "specconv/systems.hpp"

using namespace specconv;

namespace {

struct Outcome {
  bool ok = false;
  std::string info;
};

bool all_ok = true;

void run(int id, const char* what, double budget, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget <= 0.0 || secs < budget;
  const bool pass = o.ok && in_time;
  all_ok = all_ok && pass;
  std::printf("criterion %d %s: %s  %.3f s", id, what, pass ? "PASS" : "FAIL", secs);
  if (budget > 0.0) std::printf(" (budget %.0f s)", budget);
  std::printf("  %s%s\n", o.info.c_str(), in_time ? "" : " [over time budget]");
  std::fflush(stdout);
}

std::string summary(const SuiteReport& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s: %zu checks, %zu failures, %zu skipped, max residual %.2e", r.suite.c_str(),
                r.checks, r.failure_count, r.skipped, r.max_residual);
  return buf;
}

Outcome example(const std::string& id) {
  const SuiteReport r = reproduce(id);
  return {r.passed(), summary(r)};
}

// Brute-force enumeration against the engine on random small instances of one vector system.
struct OracleTally {
  std::size_t compared = 0, skipped = 0, disagreements = 0, members = 0;
};

void oracle_equivalence(SystemKind kind, std::size_t instances, Rng& rng, OracleTally& tally) {
  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    const SpectralSystem sys = kind == SystemKind::Reorder ? SpectralSystem::reorder(n)
                               : kind == SystemKind::Abs   ? SpectralSystem::abs(n)
                                                           : SpectralSystem::abs_reorder(n);
    std::vector<Vec> c;
    for (int k = rng.integer(1, 5); k > 0; --k) {
      Vec p = rng.normal_vector(n);
      if (rng.coin()) for (double& e : p) e = std::round(2.0 * e) / 2.0;
      c.push_back(p);
    }
    // At least one point of C lies in K so that C is feasible.
    c[0] = reduced_map(sys, c[0]);
    std::vector<Vec> gens;
    for (const Vec& p : c)
      if (in_range_cone(sys, p)) gens.push_back(p);

    Vec x(n, 0.0);
    const std::size_t mode = i % 3;
    if (mode < 2) {
      for (int k = rng.integer(1, 4); k > 0; --k) {
        const Vec& g = gens[static_cast<std::size_t>(rng.integer(0, static_cast<int>(gens.size()) - 1))];
        const std::vector<Vec> orb = vector_orbit(kind, g);
        const Vec& o = orb[static_cast<std::size_t>(rng.integer(0, static_cast<int>(orb.size()) - 1))];
        const double w = rng.uniform();
        for (std::size_t j = 0; j < n; ++j) x[j] = (1.0 - w) * x[j] + w * o[j];
      }
      if (mode == 1)
        for (double& e : x) e += 0.3 * rng.normal();
    } else {
      x = rng.normal_vector(n);
      for (double& e : x) e *= 1.5;
    }

    const PointV pt = PointV::vector(x);
    const BruteMembership brute = brute_conv_violation(sys, FinitePoints{c}, pt);
    const MembershipCertificate cert = member_conv_hull(sys, SetSpec::finite(c), pt);
    auto banded = [](double v) { return v > 1e-10 && v < 1e-6; };
    if (banded(brute.violation) || banded(cert.violation)) {
      ++tally.skipped;
      continue;
    }
    ++tally.compared;
    tally.members += brute.member;
    if (brute.member != cert.verdict) {
      ++tally.disagreements;
      if (tally.disagreements <= 5) std::printf("  disagreement on %s at instance %zu\n", sys.name().c_str(), i);
    }
  }
}

}  // namespace

int main() {
  run(1, "two-point segment example", 1.0, [] { return example("two_pt"); });
  run(2, "hull of C versus hull of conv C", 1.0, [] { return example("conv_order"); });
  run(3, "closure is necessary", 1.0, [] { return example("cl_nec"); });

  run(4, "brute-force oracle equivalence", 60.0, [] {
    Rng rng(derive_seed(2024, 4));
    std::string info;
    bool ok = true;
    for (SystemKind k : {SystemKind::Reorder, SystemKind::Abs, SystemKind::AbsReorder}) {
      OracleTally t;
      oracle_equivalence(k, 1000, rng, t);
      const char* name = k == SystemKind::Reorder ? "reorder" : k == SystemKind::Abs ? "abs" : "absreorder";
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s%s: %zu compared (%zu members), %zu skipped, %zu disagreements",
                    info.empty() ? "" : "; ", name, t.compared, t.members, t.skipped, t.disagreements);
      info += buf;
      // Both verdicts must be exercised for the comparison to mean anything.
      ok = ok && t.disagreements == 0 && t.members > 0 && t.members < t.compared;
    }
    return Outcome{ok, info};
  });

  run(5, "property suites", 120.0, [] {
    std::string info;
    bool ok = true;
    for (const char* s : {"p1", "p2_align", "gowda_i_iv", "majorization_equiv", "spectral_set_equiv", "sup_equality"}) {
      const SuiteReport r = run_suite(s, 1000, 42);
      ok = ok && r.passed() && r.max_residual <= 1e-7;
      info += (info.empty() ? "" : "; ") + summary(r);
    }
    return Outcome{ok, info};
  });

  run(6, "hull condition versus membership agreement", 0.0, [] {
    const SuiteReport r = run_suite("thm35", 200, 1);
    return Outcome{r.passed(), summary(r) + ", condition held in " + r.details["condition_holds"].dump() +
                                   " instances, fixed sets " + r.details["fixed_sets"].dump()};
  });

  run(7, "invariance and transfer", 0.0, [] {
    const SuiteReport r = run_suite("invariance", 1000, 1);
    return Outcome{r.passed() && r.trials >= 500, summary(r)};
  });

  run(8, "sparse ellipsoid sandwich and relaxation round trip", 60.0, [] { return example("sparse_ellipsoid"); });

  std::printf("%s\n", all_ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all_ok ? 0 : 1;
}
