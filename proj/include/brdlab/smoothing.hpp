#pragma once

#include <cstdint>
#include <string_view>

#include "brdlab/game.hpp"
#include "brdlab/rng.hpp"

namespace brdlab {

// A density-bounded distribution on [0,1]: the density never exceeds phi.
// UniformLow is uniform on [0, 1/phi] (the extremal family for the order-
// statistic bound); UniformWindow is uniform on a width-1/phi window that
// slides inside [0,1] to stay centered near a nominal value without ever
// shrinking (truncation would push the density above phi).
enum class FamilyKind { UniformLow, UniformWindow };

std::string_view family_kind_name(FamilyKind kind);
FamilyKind family_kind_from_name(std::string_view name);

struct PhiSmoothFamily {
  FamilyKind kind = FamilyKind::UniformLow;
  double phi = 1.0;     // >= 1
  double center = 0.0;  // UniformWindow only
};

struct PerturbationSpec {
  double phi = 1.0;
  FamilyKind family = FamilyKind::UniformWindow;
  std::uint64_t seed = 0;
};

// One draw from the family; always lands in [0,1], density exactly phi.
double sample_phi_smooth(const PhiSmoothFamily& family, CounterRng& rng);

// Replaces exactly the designated parameters of the skeleton with independent
// phi-smooth samples:
//   Tabular      every table entry
//   Step         every jump (break points stay fixed)
//   Polynomial   coefficients on the support (supports stay fixed)
//   CostSharing  every fixed cost
// UniformWindow centers each draw at the skeleton's nominal value; UniformLow
// ignores nominals. Parameters are indexed resource-major and each index owns
// its own rng stream, so the (seed -> Game) map is a pure function. For the
// positivity-constrained models a literal 0.0 draw is rejected and resampled.
Game perturb(const AdversarialSkeleton& skeleton, const PerturbationSpec& spec);

}  // namespace brdlab
