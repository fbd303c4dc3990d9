#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "brdlab/cost_model.hpp"
#include "brdlab/network.hpp"

namespace brdlab {

// A nonempty set of resources, stored as a sorted unique array so iteration
// is deterministic and membership is O(log |s|).
class Strategy {
 public:
  Strategy() = default;
  explicit Strategy(std::vector<ResourceId> ids) : resources_(std::move(ids)) {
    std::sort(resources_.begin(), resources_.end());
    resources_.erase(std::unique(resources_.begin(), resources_.end()), resources_.end());
  }

  const std::vector<ResourceId>& resources() const { return resources_; }
  std::size_t size() const { return resources_.size(); }
  bool empty() const { return resources_.empty(); }

  bool contains(ResourceId r) const {
    return std::binary_search(resources_.begin(), resources_.end(), r);
  }

  bool operator==(const Strategy&) const = default;
  auto operator<=>(const Strategy&) const = default;

 private:
  std::vector<ResourceId> resources_;
};

using ExplicitStrategies = std::vector<std::vector<Strategy>>;  // [player][choice]

// A congestion game: n players, m resources, per-player strategy sets (given
// explicitly or induced by a network), and one resource cost model.
// Immutable after construction; all operations here are pure.
struct Game {
  int n = 0;
  int m = 0;
  std::variant<ExplicitStrategies, NetworkSpec> strategies;
  CostModel cost_model;

  bool is_network() const { return std::holds_alternative<NetworkSpec>(strategies); }
  const ExplicitStrategies& explicit_sets() const { return std::get<ExplicitStrategies>(strategies); }
  const NetworkSpec& network() const { return std::get<NetworkSpec>(strategies); }
};

// Skeletons share the game structure; only the designated numeric parameters
// get replaced when perturbing.
using AdversarialSkeleton = Game;

struct StrategyProfile {
  std::vector<Strategy> choices;  // length n

  bool operator==(const StrategyProfile&) const = default;
};

struct LoadProfile {
  std::vector<int> loads;  // length m, loads[r] in [0, n]

  bool operator==(const LoadProfile&) const = default;
};

// Checks choices[i] against player i's strategy set (set membership for
// explicit games, simple-path validity for network games). Throws
// ValidationError naming the offending player.
void validate_profile(const Game& game, const StrategyProfile& profile);

// loads[r] = |{i : r in choices[i]}|. Validates the profile first.
LoadProfile compute_loads(const Game& game, const StrategyProfile& profile);

// C_i(s) = sum over r in s_i of c_r(l_r(s)).
double player_cost(const Game& game, const StrategyProfile& profile, int player);

// Structural invariant check; returns human-readable violations, empty when
// the game is well-formed. Indices in messages are 1-based.
std::vector<std::string> validate_game(const Game& game);
void validate_game_or_throw(const Game& game);

// Rosenthal potential Phi(s) = sum_r sum_{j=1}^{l_r(s)} c_r(j).
double potential(const Game& game, const StrategyProfile& profile);

// (Phi(s) - Phi(s'), C_i(s) - C_i(s')) for the unilateral deviation of
// `player` to `deviation`; the two components agree up to rounding.
std::pair<double, double> potential_difference_check(const Game& game, const StrategyProfile& profile,
                                                     int player, const Strategy& deviation);

}  // namespace brdlab
