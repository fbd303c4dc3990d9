#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace brdlab {

struct Game;

using ResourceId = std::int32_t;

// ---------------------------------------------------------------------------
// Resource cost parameterizations.
//
// All numeric parameters live in [0,1] (jumps, polynomial coefficients and
// fixed costs must be strictly positive). Loads are 1-based: c_r(l) is defined
// for l in [1, n].
// ---------------------------------------------------------------------------

// Explicit table: table[r][l-1] = c_r(l), entries in [0,1], no monotonicity
// assumed.
struct TabularCosts {
  std::vector<std::vector<double>> table;  // [m][n]
};

// Nondecreasing step function per resource: integer break points
// 1 = b_1 < b_2 < ... <= n with jumps a_j in (0,1];
// c_r(l) = sum of jumps whose break point is <= l.
struct StepResource {
  std::vector<int> breaks;
  std::vector<double> jumps;
};

struct StepFunctionCosts {
  std::vector<StepResource> resources;  // [m]

  int total_breaks() const {
    int d = 0;
    for (const auto& r : resources) d += static_cast<int>(r.breaks.size());
    return d;
  }
};

// Polynomial with nonnegative coefficients: c_r(l) = sum_{j in support} a_j l^j.
// Only the listed (nonzero) coefficients exist; all others are exactly 0.
struct PolyResource {
  std::vector<int> support;    // sorted exponent indices, subset of [0..degree]
  std::vector<double> coeffs;  // parallel to support, in (0,1]
};

struct PolynomialCosts {
  int degree = 0;  // max exponent, small constant (validation caps at 8)
  std::vector<PolyResource> resources;  // [m]

  // Total number of nonzero coefficients across all resources.
  int total_terms() const {
    int t = 0;
    for (const auto& r : resources) t += static_cast<int>(r.support.size());
    return t;
  }
};

// Fair cost sharing: c_r(l) = a_r / l with fixed cost a_r in (0,1].
struct CostSharingCosts {
  std::vector<double> fixed_costs;  // [m]
};

using CostModel = std::variant<TabularCosts, StepFunctionCosts, PolynomialCosts, CostSharingCosts>;

enum class ModelKind { Tabular, StepFunction, Polynomial, CostSharing };

ModelKind model_kind(const CostModel& model);
std::string_view model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(std::string_view name);

// c_r(load). Throws ValidationError unless 1 <= load <= n and r is in range.
double resource_cost(const CostModel& model, ResourceId r, int load, int n);

// Structural checks for a model attached to a game with n players and m
// resources. Returns human-readable violations (empty when ok).
std::vector<std::string> validate_cost_model(const CostModel& model, int n, int m);

// Extremes over the model's numeric parameters: table entries for Tabular,
// jumps / nonzero coefficients / fixed costs otherwise.
double max_parameter(const CostModel& model);
double min_parameter(const CostModel& model);

double harmonic_number(int n);

// Realized per-load costs with prefix sums, precomputed once per game so the
// dynamics loop can evaluate potentials and potential differences touching
// only the resources of a move.
class CostTable {
 public:
  CostTable(const CostModel& model, int n, int m);

  double cost(ResourceId r, int load) const { return cost_[static_cast<std::size_t>(r) * (n_ + 1) + load]; }

  // sum_{j=1}^{load} c_r(j); prefix(r, 0) == 0.
  double prefix(ResourceId r, int load) const { return prefix_[static_cast<std::size_t>(r) * (n_ + 1) + load]; }

  int players() const { return n_; }
  int resource_count() const { return m_; }

 private:
  int n_;
  int m_;
  std::vector<double> cost_;    // [m][n+1], index 0 unused (= 0)
  std::vector<double> prefix_;  // [m][n+1]
};

// ---------------------------------------------------------------------------
// Closed-form bounds derived from the model parameters.
// ---------------------------------------------------------------------------

// Upper bound on the Rosenthal potential over all profiles:
//   Tabular      n * m * c_max
//   Step         n * d * a_max          (d = total break count)
//   Polynomial   d~ * n^(degree+1) * a_max   (d~ = total nonzero coefficients)
//   CostSharing  m * H_n * a_max
double potential_upper_bound(const Game& game);

// Lower bound on any player's cost at any profile:
//   Tabular      c_min
//   Step / Poly  a_min
//   CostSharing  a_min / n
// Throws ValidationError when every parameter is zero (degenerate instance).
double min_cost_lower_bound(const Game& game);

}  // namespace brdlab
