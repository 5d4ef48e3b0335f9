#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "specconv/harness.hpp"
#include "specconv/linalg/random.hpp"

namespace specconv::detail {

struct Trial {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  SpectralSystem sys;
  Rng rng;
};

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : rep_(r) {}

  bool check(bool ok, const Trial& t, const std::string& what, Json inputs, Json expected, Json got);
  void residual(double r) { rep_.max_residual = std::max(rep_.max_residual, r); }
  void skip() { ++rep_.skipped; }
  SuiteReport& report() { return rep_; }

 private:
  SuiteReport& rep_;
};

/// Samples this close to a decision boundary are skipped rather than judged.
inline bool in_band(double v) { return v > 1e-10 && v < 1e-6; }

SpectralSystem random_system(SystemKind k, Rng& rng, std::size_t max_vector = 4, std::size_t max_matrix = 5);

/// 2..6 standard normal points of W, about half of them moved into K; at least one lies in K.
std::vector<Vec> random_finite(const SpectralSystem& sys, Rng& rng, std::size_t lo = 2, std::size_t hi = 6);

Vec random_in_K(const SpectralSystem& sys, Rng& rng);
Vec convex_combination(const std::vector<Vec>& pts, Rng& rng);
PointV convex_combination(const std::vector<PointV>& pts, Rng& rng);
std::vector<Vec> in_K(const SpectralSystem& sys, const std::vector<Vec>& pts);

/// Orbit points of the generators: every one for vector systems, `per` samples each for matrix systems.
std::vector<PointV> orbit_cloud(const SpectralSystem& sys, const std::vector<Vec>& gens, std::size_t per, Rng& rng);

/// Max-norm distance from x to conv(pts), by LP.
double hull_distance(const std::vector<Vec>& pts, std::span<const double> x);

/// A point of V drawn from one of four families around the hull of the generators' orbits:
/// aligned hull points, orbit combinations, pushed-out combinations, scaled Gaussians.
PointV sample_point(const SpectralSystem& sys, const std::vector<Vec>& gens, const std::vector<PointV>& cloud,
                    std::size_t family, Rng& rng);

double radius(const std::vector<Vec>& pts);

Json jv(const SpectralSystem& sys, const PointV& x);
Json jset(const std::vector<Vec>& pts);

using TrialFn = std::function<void(Trial&, Recorder&)>;

/// Runs `trials` trials for every family (or for `only`), seeding each from (seed, family, trial).
void run_trials(SuiteReport& rep, const std::vector<SystemKind>& families, std::size_t trials, std::uint64_t seed,
                const std::optional<SpectralSystem>& only, const TrialFn& fn,
                const std::function<SpectralSystem(SystemKind, Rng&)>& make = nullptr);

const std::vector<SystemKind>& all_families();
const std::vector<SystemKind>& vector_families();

using SuiteFn = void (*)(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);

void suite_p1(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_p2_align(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_gowda(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_majorization(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_spectral_set(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_sup_equality(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_thm_main(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_thm_feasible(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_equal_hulls(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_thm35(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_lem_AB(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_lem_B(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);
void suite_invariance(SuiteReport&, std::size_t, std::uint64_t, const std::optional<SpectralSystem>&);

void reproduce_two_pt(SuiteReport&, std::uint64_t);
void reproduce_conv_order(SuiteReport&, std::uint64_t);
void reproduce_cl_nec(SuiteReport&, std::uint64_t);
void reproduce_sparse_ellipsoid(SuiteReport&, std::uint64_t);

}  // namespace specconv::detail
