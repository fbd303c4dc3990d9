#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "brdlab/game.hpp"

namespace brdlab {

// Brute-force ground truth for small instances. Cost evaluation here is an
// independent re-implementation (direct definition-level summation, no prefix
// sums, no incremental state) so that agreement with the engine is a real
// cross-check rather than a shared code path.

struct EnumerationBudget {
  std::int64_t max_profiles = 1'000'000;
  std::int64_t max_paths_per_player = 10'000;
};

// Deterministic lexicographic stream over the full strategy-profile space
// (player 0 most significant, strategies in stored/enumerated order).
class ProfileEnumerator {
 public:
  // Materializes per-player strategy lists (explicit sets as stored, network
  // path sets enumerated lexicographically). Throws BudgetExceededError when
  // the product exceeds max_profiles or a path set exceeds
  // max_paths_per_player.
  ProfileEnumerator(const Game& game, const EnumerationBudget& budget);

  std::int64_t profile_count() const { return profile_count_; }
  const std::vector<std::vector<Strategy>>& strategy_lists() const { return lists_; }

  // Writes the next profile; returns false when the stream is exhausted.
  bool next(StrategyProfile& out);

  void reset();

 private:
  std::vector<std::vector<Strategy>> lists_;
  std::vector<std::size_t> cursor_;
  std::int64_t profile_count_ = 0;
  bool done_ = false;
};

// Definition-level cost evaluation (oracle side).
double oracle_player_cost(const Game& game, const StrategyProfile& profile, int player);
double oracle_potential(const Game& game, const StrategyProfile& profile);

// Global minimizer of the Rosenthal potential, first in lexicographic order
// among ties. The minimizer is an exact pure Nash equilibrium.
std::pair<StrategyProfile, double> brute_force_min_potential(const Game& game,
                                                             const EnumerationBudget& budget);

// Literal universally-quantified check of the alpha-PNE definition over every
// (player, deviation) pair.
bool brute_force_is_alpha_pne(const Game& game, const StrategyProfile& profile, double alpha,
                              const EnumerationBudget& budget);

}  // namespace brdlab
