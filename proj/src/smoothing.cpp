#include "brdlab/smoothing.hpp"

#include <algorithm>
#include <string>

#include "brdlab/errors.hpp"

namespace brdlab {

namespace {

void check_phi(double phi) {
  if (!(phi >= 1.0)) throw ValidationError("phi must be at least 1");
}

// One parameter draw. Parameter index k owns stream (seed, k); the rejection
// loop for strictly-positive parameters consumes further draws of the same
// stream, so draws stay independent of generation order.
double draw_parameter(std::uint64_t seed, std::uint64_t index, const PerturbationSpec& spec,
                      double nominal, bool strictly_positive) {
  PhiSmoothFamily family;
  family.kind = spec.family;
  family.phi = spec.phi;
  family.center = nominal;
  CounterRng rng(derive_seed(seed, index));
  double x = sample_phi_smooth(family, rng);
  while (strictly_positive && x == 0.0) x = sample_phi_smooth(family, rng);
  return x;
}

}  // namespace

std::string_view family_kind_name(FamilyKind kind) {
  return kind == FamilyKind::UniformLow ? "uniform_low" : "uniform_window";
}

FamilyKind family_kind_from_name(std::string_view name) {
  if (name == "uniform_low" || name == "low") return FamilyKind::UniformLow;
  if (name == "uniform_window" || name == "window") return FamilyKind::UniformWindow;
  throw ValidationError("unknown smoothing family: " + std::string(name));
}

double sample_phi_smooth(const PhiSmoothFamily& family, CounterRng& rng) {
  check_phi(family.phi);
  const double width = 1.0 / family.phi;
  const double u = rng.next_double();
  if (family.kind == FamilyKind::UniformLow) return u * width;
  // Slide the window inside [0,1] instead of truncating; the density stays
  // exactly phi.
  const double lo = std::clamp(family.center - width / 2.0, 0.0, 1.0 - width);
  return lo + u * width;
}

Game perturb(const AdversarialSkeleton& skeleton, const PerturbationSpec& spec) {
  check_phi(spec.phi);
  validate_game_or_throw(skeleton);

  Game out = skeleton;
  const std::uint64_t root = derive_seed(spec.seed, 0x70657274ULL);  // perturbation stream
  std::uint64_t index = 0;

  std::visit(
      [&](auto& model) {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, TabularCosts>) {
          // Resource-major, then load: index = r*n + (load-1).
          for (auto& row : model.table) {
            for (double& v : row) v = draw_parameter(root, index++, spec, v, false);
          }
        } else if constexpr (std::is_same_v<T, StepFunctionCosts>) {
          // Jumps only; break points stay adversarially fixed.
          for (auto& sr : model.resources) {
            for (double& a : sr.jumps) a = draw_parameter(root, index++, spec, a, true);
          }
        } else if constexpr (std::is_same_v<T, PolynomialCosts>) {
          // Coefficients on the support only; absent coefficients stay 0.
          for (auto& pr : model.resources) {
            for (double& a : pr.coeffs) a = draw_parameter(root, index++, spec, a, true);
          }
        } else {
          static_assert(std::is_same_v<T, CostSharingCosts>);
          for (double& a : model.fixed_costs) a = draw_parameter(root, index++, spec, a, true);
        }
      },
      out.cost_model);

  return out;
}

}  // namespace brdlab
