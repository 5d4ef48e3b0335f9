#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specconv/json_io.hpp"
#include "specconv/sets.hpp"
#include "specconv/systems.hpp"

namespace specconv {

/// Hull membership by enumeration: every orbit point of every u in C cap K, then one LP.
/// Vector systems with n <= 7 only; more than 1e6 orbit points is a ResourceError.
struct BruteMembership {
  bool member = false;
  double violation = 0.0;  ///< max-norm distance reached by the LP
};
BruteMembership brute_conv_violation(const SpectralSystem& sys, const FinitePoints& c, const PointV& x);
bool brute_conv_member(const SpectralSystem& sys, const FinitePoints& c, const PointV& x);

struct SuiteFailure {
  std::size_t trial = 0;
  std::uint64_t seed = 0;  ///< Rng seed of the trial; replays it exactly
  std::string system;
  std::string check;
  Json inputs;
  Json expected;
  Json got;
};

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> systems;
  std::size_t checks = 0;
  std::size_t skipped = 0;  ///< samples within the 1e-6 boundary band
  std::size_t failure_count = 0;
  std::vector<SuiteFailure> failures;  ///< the first 100
  double max_residual = 0.0;
  std::vector<std::string> notes;
  Json details = Json::object();
  std::chrono::duration<double> elapsed{0.0};

  bool passed() const { return failure_count == 0; }
};

const std::vector<std::string>& suite_names();
const std::vector<std::string>& example_ids();

/// Runs `trials` seeded trials per system family (or on `only` when given).
/// Unknown names are an InputError.
SuiteReport run_suite(const std::string& name, std::size_t trials, std::uint64_t seed,
                      const std::optional<SpectralSystem>& only = std::nullopt);

/// Reproduces one worked example: two_pt, conv_order, cl_nec or sparse_ellipsoid.
SuiteReport reproduce(const std::string& id, std::uint64_t seed = 1);

/// Deterministic: omits the elapsed time.
Json to_json(const SuiteReport& r);

}  // namespace specconv
