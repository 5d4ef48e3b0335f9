#pragma once

#include <cstdint>

#include "specconv/sets.hpp"
#include "specconv/systems.hpp"

namespace specconv {

/// The W-to-W system (W, W, mu) attached to a spectral system. Its spectral map mu fixes K
/// pointwise and has range K; matrix systems reuse the vector system on W.
struct ReducedSystem {
  SpectralSystem parent;

  explicit ReducedSystem(SpectralSystem p) : parent(p) {}
  SpectralSystem as_system() const { return parent.reduced(); }
  PointW mu(std::span<const double> u) const { return reduced_map(parent, u); }
};

/// {mu(u) : u in C} for invariant C. Throws PreconditionError when C is not invariant, and
/// std::logic_error if the image differs from C cap K.
FinitePoints mu_image(const SpectralSystem& sys, const FinitePoints& c);

/// Every v in the mu-orbit of u satisfies v - mu(u) in the polar cone.
bool check_orbit_in_mu_polar(const SpectralSystem& sys, std::span<const double> u);

/// lambda(x) in conv C, which equals hull membership for invariant C. Throws PreconditionError otherwise.
bool transfer_conv_member(const SpectralSystem& sys, const FinitePoints& c, const PointV& x);

struct InsensitivityReport {
  std::size_t bodies = 0;
  std::size_t queries = 0;
  std::size_t disagreements = 0;
};

/// Samples convex D between conv(C cap K) and (conv C) cap K and compares membership through D
/// with hull membership for C on random x. C must be invariant.
InsensitivityReport corollary_D_insensitivity(const SpectralSystem& sys, const FinitePoints& c, std::size_t trials,
                                              std::uint64_t seed, std::size_t queries_per_body = 20);

/// Generators of (conv C) cap K: exact vertices for dim <= 3, LP vertices in random directions otherwise.
std::vector<Vec> convC_cap_K_generators(const SpectralSystem& sys, const FinitePoints& c, std::uint64_t seed,
                                        std::size_t directions = 200);

}  // namespace specconv
