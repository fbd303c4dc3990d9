#include "brdlab/brd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "brdlab/errors.hpp"

namespace brdlab {

namespace {

constexpr std::int64_t kHardIterationLimit = 100'000'000;

// Mutable view of one running dynamics: loads, running potential, and
// incremental cost queries. A move touches only the resources in
// from ∪ to, so updates cost O(|from| + |to|) table lookups.
class DynamicsState {
 public:
  DynamicsState(const Game& game, StrategyProfile profile)
      : game_(game), table_(game.cost_model, game.n, game.m), profile_(std::move(profile)) {
    validate_profile(game_, profile_);
    loads_.assign(static_cast<std::size_t>(game_.m), 0);
    for (const Strategy& s : profile_.choices) {
      for (ResourceId r : s.resources()) ++loads_[static_cast<std::size_t>(r)];
    }
    phi_ = 0.0;
    for (int r = 0; r < game_.m; ++r) phi_ += table_.prefix(r, loads_[static_cast<std::size_t>(r)]);
  }

  const Game& game() const { return game_; }
  const StrategyProfile& profile() const { return profile_; }
  double potential() const { return phi_; }
  int load(ResourceId r) const { return loads_[static_cast<std::size_t>(r)]; }

  double player_cost(int i) const {
    double total = 0.0;
    for (ResourceId r : profile_.choices[static_cast<std::size_t>(i)].resources()) {
      total += table_.cost(r, loads_[static_cast<std::size_t>(r)]);
    }
    return total;
  }

  // C_i(to, s_{-i}): resources the player already uses keep their load,
  // new ones gain the player.
  double deviation_cost(int i, const Strategy& to) const {
    const Strategy& cur = profile_.choices[static_cast<std::size_t>(i)];
    double total = 0.0;
    for (ResourceId r : to.resources()) {
      const int l = loads_[static_cast<std::size_t>(r)] + (cur.contains(r) ? 0 : 1);
      total += table_.cost(r, l);
    }
    return total;
  }

  void apply(int i, const Strategy& to) {
    Strategy& cur = profile_.choices[static_cast<std::size_t>(i)];
    for (ResourceId r : cur.resources()) {
      if (!to.contains(r)) {
        phi_ -= table_.cost(r, loads_[static_cast<std::size_t>(r)]);
        --loads_[static_cast<std::size_t>(r)];
      }
    }
    for (ResourceId r : to.resources()) {
      if (!cur.contains(r)) {
        ++loads_[static_cast<std::size_t>(r)];
        phi_ += table_.cost(r, loads_[static_cast<std::size_t>(r)]);
      }
    }
    cur = to;
  }

  // Best response of player i together with its cost.
  std::pair<Strategy, double> best_response(int i) const {
    if (game_.is_network()) {
      NetworkBestResponse br = network_best_response_local(i);
      return {br.path.to_strategy(), br.cost};
    }
    const auto& set = game_.explicit_sets()[static_cast<std::size_t>(i)];
    const Strategy* best = nullptr;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const Strategy& s : set) {
      const double c = deviation_cost(i, s);
      if (c < best_cost) {
        best_cost = c;
        best = &s;
      }
    }
    return {*best, best_cost};
  }

  // Same computation as the public network_best_response but reusing this
  // state's loads and cost table.
  NetworkBestResponse network_best_response_local(int i) const;

 private:
  const Game& game_;
  CostTable table_;
  StrategyProfile profile_;
  std::vector<int> loads_;
  double phi_ = 0.0;
};

NetworkBestResponse DynamicsState::network_best_response_local(int i) const {
  const NetworkSpec& spec = game_.network();
  const Strategy& cur = profile_.choices[static_cast<std::size_t>(i)];
  auto weight = [&](int e) {
    const int other_load = loads_[static_cast<std::size_t>(e)] - (cur.contains(e) ? 1 : 0);
    return table_.cost(e, other_load + 1);
  };
  const auto& [origin, destination] = spec.od_pairs[static_cast<std::size_t>(i)];
  return shortest_weighted_path(spec, origin, destination, weight);
}

// Move selection. Shared by the public find_improving_move and the run loop.
std::optional<Move> select_move(DynamicsState& state, double alpha, PivotRule rule, CounterRng& rng) {
  const Game& game = state.game();

  auto make_move = [&](int i, Strategy to, double cost_before, double cost_after) {
    Move mv;
    mv.player = i;
    mv.from_strategy = state.profile().choices[static_cast<std::size_t>(i)];
    mv.to_strategy = std::move(to);
    mv.cost_before = cost_before;
    mv.cost_after = cost_after;
    return mv;
  };

  if (rule == PivotRule::FirstImprovement && !game.is_network()) {
    for (int i = 0; i < game.n; ++i) {
      const double cost = state.player_cost(i);
      for (const Strategy& s : game.explicit_sets()[static_cast<std::size_t>(i)]) {
        const double c = state.deviation_cost(i, s);
        if (alpha * c < cost) return make_move(i, s, cost, c);
      }
    }
    return std::nullopt;
  }

  if (rule == PivotRule::FirstImprovement || rule == PivotRule::BestResponsePivot) {
    // Network games cannot scan their (possibly exponential) path sets, so
    // FirstImprovement degrades to the best-response deviation there.
    for (int i = 0; i < game.n; ++i) {
      const double cost = state.player_cost(i);
      auto [br, br_cost] = state.best_response(i);
      if (alpha * br_cost < cost) return make_move(i, std::move(br), cost, br_cost);
    }
    return std::nullopt;
  }

  if (rule == PivotRule::MaxGain) {
    std::optional<Move> best;
    double best_gain = -1.0;
    for (int i = 0; i < game.n; ++i) {
      const double cost = state.player_cost(i);
      auto [br, br_cost] = state.best_response(i);
      if (alpha * br_cost < cost && cost - br_cost > best_gain) {
        best_gain = cost - br_cost;
        best = make_move(i, std::move(br), cost, br_cost);
      }
    }
    return best;
  }

  // RandomImproving: uniform over the players whose best response passes.
  std::vector<Move> candidates;
  for (int i = 0; i < game.n; ++i) {
    const double cost = state.player_cost(i);
    auto [br, br_cost] = state.best_response(i);
    if (alpha * br_cost < cost) candidates.push_back(make_move(i, std::move(br), cost, br_cost));
  }
  if (candidates.empty()) return std::nullopt;
  return candidates[static_cast<std::size_t>(rng.next_below(candidates.size()))];
}

void check_alpha(double alpha) {
  if (!(alpha >= 1.0)) throw ValidationError("alpha must be at least 1");
}

}  // namespace

std::string_view pivot_rule_name(PivotRule rule) {
  switch (rule) {
    case PivotRule::FirstImprovement: return "first_improvement";
    case PivotRule::BestResponsePivot: return "best_response";
    case PivotRule::MaxGain: return "max_gain";
    case PivotRule::RandomImproving: return "random_improving";
  }
  return "?";
}

PivotRule pivot_rule_from_name(std::string_view name) {
  if (name == "first_improvement") return PivotRule::FirstImprovement;
  if (name == "best_response") return PivotRule::BestResponsePivot;
  if (name == "max_gain") return PivotRule::MaxGain;
  if (name == "random_improving") return PivotRule::RandomImproving;
  throw ValidationError("unknown pivot rule: " + std::string(name));
}

bool is_alpha_pne(const Game& game, const StrategyProfile& profile, double alpha) {
  check_alpha(alpha);
  DynamicsState state(game, profile);
  if (game.is_network()) {
    for (int i = 0; i < game.n; ++i) {
      const auto [br, br_cost] = state.best_response(i);
      if (state.player_cost(i) > alpha * br_cost) return false;
    }
    return true;
  }
  for (int i = 0; i < game.n; ++i) {
    const double cost = state.player_cost(i);
    for (const Strategy& s : game.explicit_sets()[static_cast<std::size_t>(i)]) {
      if (cost > alpha * state.deviation_cost(i, s)) return false;
    }
  }
  return true;
}

bool is_alpha_improving(const Game& game, const StrategyProfile& profile, int player,
                        const Strategy& deviation, double alpha) {
  check_alpha(alpha);
  DynamicsState state(game, profile);
  if (player < 0 || player >= game.n) throw ValidationError("player index out of range");
  StrategyProfile deviated = profile;
  deviated.choices[static_cast<std::size_t>(player)] = deviation;
  validate_profile(game, deviated);
  return alpha * state.deviation_cost(player, deviation) < state.player_cost(player);
}

Strategy best_response(const Game& game, const StrategyProfile& profile, int player) {
  if (player < 0 || player >= game.n) throw ValidationError("player index out of range");
  DynamicsState state(game, profile);
  return state.best_response(player).first;
}

std::optional<Move> find_improving_move(const Game& game, const StrategyProfile& profile, double alpha,
                                        PivotRule rule, CounterRng& rng) {
  check_alpha(alpha);
  DynamicsState state(game, profile);
  auto mv = select_move(state, alpha, rule, rng);
  if (mv) {
    state.apply(mv->player, mv->to_strategy);
    mv->potential_after = state.potential();
  }
  return mv;
}

double iteration_cap(const Game& game, double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  const double ub = potential_upper_bound(game);
  const double lb = min_cost_lower_bound(game);
  const double ratio_cap =
      lb > 0.0 ? (1.0 + 1.0 / epsilon) * ub / lb : std::numeric_limits<double>::infinity();
  const double load_cap = std::pow(static_cast<double>(game.n) + 1.0, static_cast<double>(game.m));
  return std::min(ratio_cap, load_cap);
}

RunTrace run_brd(const Game& game, const StrategyProfile& start, const BrdConfig& config) {
  if (!(config.epsilon > 0.0)) throw ValidationError("epsilon must be positive");
  validate_game_or_throw(game);

  std::int64_t limit = config.max_iterations;
  if (limit <= 0) {
    double cap = kHardIterationLimit;
    try {
      cap = std::ceil(iteration_cap(game, config.epsilon));
    } catch (const ValidationError&) {
      // Degenerate all-zero instance: no move can be strictly improving.
    }
    limit = cap < kHardIterationLimit ? static_cast<std::int64_t>(cap) : kHardIterationLimit;
    limit = std::max<std::int64_t>(limit, 1);
  }

  const double alpha = 1.0 + config.epsilon;
  DynamicsState state(game, start);
  CounterRng rng(config.seed);

  RunTrace trace;
  trace.start_profile = start;
  trace.start_potential = state.potential();
  trace.status = RunStatus::Converged;

  while (true) {
    if (trace.iterations >= limit) {
      trace.status = RunStatus::IterationCapHit;
      break;
    }
    const double phi_before = state.potential();
    auto mv = select_move(state, alpha, config.pivot_rule, rng);
    if (!mv) break;
    state.apply(mv->player, mv->to_strategy);
    mv->potential_after = state.potential();
    if (!(mv->potential_after < phi_before)) {
      throw BoundViolationError("potential did not strictly decrease on an improving move");
    }
    trace.moves.push_back(std::move(*mv));
    ++trace.iterations;
  }

  trace.final_profile = state.profile();
  trace.final_potential = state.potential();
  return trace;
}

}  // namespace brdlab
