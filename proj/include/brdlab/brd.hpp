#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "brdlab/game.hpp"
#include "brdlab/rng.hpp"

namespace brdlab {

enum class PivotRule { FirstImprovement, BestResponsePivot, MaxGain, RandomImproving };

std::string_view pivot_rule_name(PivotRule rule);
PivotRule pivot_rule_from_name(std::string_view name);

struct BrdConfig {
  double epsilon = 0.0;  // moves must beat the current cost by factor alpha = 1 + epsilon
  PivotRule pivot_rule = PivotRule::FirstImprovement;
  std::int64_t max_iterations = 0;  // 0 = min(iteration cap of the instance, 1e8)
  std::uint64_t seed = 0;           // consumed only by RandomImproving
};

struct Move {
  int player = 0;
  Strategy from_strategy;
  Strategy to_strategy;
  double cost_before = 0.0;
  double cost_after = 0.0;      // satisfies (1+epsilon) * cost_after < cost_before
  double potential_after = 0.0;
};

enum class RunStatus { Converged, IterationCapHit };

struct RunTrace {
  StrategyProfile start_profile;
  StrategyProfile final_profile;
  std::vector<Move> moves;
  std::int64_t iterations = 0;  // == moves.size()
  RunStatus status = RunStatus::Converged;
  double start_potential = 0.0;
  double final_potential = 0.0;
};

// True iff C_i(s) <= alpha * C_i(s_i', s_{-i}) for every player i and every
// deviation s_i'. Explicit games scan all deviations; network games query the
// best response per player (the inequality fails somewhere iff it fails at a
// best response).
bool is_alpha_pne(const Game& game, const StrategyProfile& profile, double alpha);

// Strict test alpha * C_i(deviation, s_{-i}) < C_i(s).
bool is_alpha_improving(const Game& game, const StrategyProfile& profile, int player,
                        const Strategy& deviation, double alpha);

// argmin over player i's strategy set of C_i(., s_{-i}). Explicit games scan
// in stored order (first minimum wins); network games run a shortest-path
// query.
Strategy best_response(const Game& game, const StrategyProfile& profile, int player);

// Selects an alpha-improving move under the pivot rule, or nullopt iff the
// profile is an alpha-PNE. For network games every rule deviates to the
// player's best response (path sets are not enumerable).
std::optional<Move> find_improving_move(const Game& game, const StrategyProfile& profile, double alpha,
                                        PivotRule rule, CounterRng& rng);

// Iteration cap implied by the realized instance: one move lowers the
// potential by more than epsilon/(1+epsilon) times the minimum player cost,
// and no load profile repeats, so
//   T <= min( (1 + 1/epsilon) * potential_upper_bound / min_cost_lower_bound,
//             (n+1)^m ).
double iteration_cap(const Game& game, double epsilon);

// Runs (1+epsilon)-better-response dynamics from `start` until no improving
// move exists (Converged) or the iteration limit is hit. Deterministic given
// (game, start, config).
RunTrace run_brd(const Game& game, const StrategyProfile& start, const BrdConfig& config);

}  // namespace brdlab
