#include "brdlab/oracle.hpp"

#include <string>

#include "brdlab/errors.hpp"
#include "brdlab/network.hpp"

namespace brdlab {

namespace {

// Definition-level c_r(l), re-derived from the model formulas rather than
// shared with the engine's cost table.
double direct_resource_cost(const Game& game, ResourceId r, int load) {
  return std::visit(
      [&](const auto& model) -> double {
        using T = std::decay_t<decltype(model)>;
        const auto ri = static_cast<std::size_t>(r);
        if constexpr (std::is_same_v<T, TabularCosts>) {
          return model.table[ri][static_cast<std::size_t>(load) - 1];
        } else if constexpr (std::is_same_v<T, StepFunctionCosts>) {
          const StepResource& sr = model.resources[ri];
          double c = 0.0;
          for (std::size_t j = 0; j < sr.breaks.size(); ++j) {
            if (sr.breaks[j] <= load) c += sr.jumps[j];
          }
          return c;
        } else if constexpr (std::is_same_v<T, PolynomialCosts>) {
          const PolyResource& pr = model.resources[ri];
          double c = 0.0;
          for (std::size_t j = 0; j < pr.support.size(); ++j) {
            double power = 1.0;
            for (int k = 0; k < pr.support[j]; ++k) power *= static_cast<double>(load);
            c += pr.coeffs[j] * power;
          }
          return c;
        } else {
          return model.fixed_costs[ri] / static_cast<double>(load);
        }
      },
      game.cost_model);
}

std::vector<int> direct_loads(const Game& game, const StrategyProfile& profile) {
  std::vector<int> loads(static_cast<std::size_t>(game.m), 0);
  for (const Strategy& s : profile.choices) {
    for (ResourceId r : s.resources()) ++loads[static_cast<std::size_t>(r)];
  }
  return loads;
}

// Per-player strategy lists: explicit sets as stored, network path sets
// enumerated lexicographically under the per-player cap.
std::vector<std::vector<Strategy>> materialize_strategy_lists(const Game& game,
                                                              const EnumerationBudget& budget) {
  if (budget.max_profiles < 1 || budget.max_paths_per_player < 1) {
    throw ValidationError("enumeration budget must be positive");
  }
  if (!game.is_network()) return game.explicit_sets();
  const NetworkSpec& spec = game.network();
  std::vector<std::vector<Strategy>> lists;
  lists.reserve(static_cast<std::size_t>(game.n));
  for (int i = 0; i < game.n; ++i) {
    const auto& [o, d] = spec.od_pairs[static_cast<std::size_t>(i)];
    auto paths = enumerate_simple_paths(spec, o, d, budget.max_paths_per_player);
    std::vector<Strategy> list;
    list.reserve(paths.size());
    for (const auto& p : paths) list.push_back(p.to_strategy());
    lists.push_back(std::move(list));
  }
  return lists;
}

}  // namespace

double oracle_player_cost(const Game& game, const StrategyProfile& profile, int player) {
  const auto loads = direct_loads(game, profile);
  double total = 0.0;
  for (ResourceId r : profile.choices[static_cast<std::size_t>(player)].resources()) {
    total += direct_resource_cost(game, r, loads[static_cast<std::size_t>(r)]);
  }
  return total;
}

double oracle_potential(const Game& game, const StrategyProfile& profile) {
  const auto loads = direct_loads(game, profile);
  double phi = 0.0;
  for (int r = 0; r < game.m; ++r) {
    for (int j = 1; j <= loads[static_cast<std::size_t>(r)]; ++j) {
      phi += direct_resource_cost(game, r, j);
    }
  }
  return phi;
}

ProfileEnumerator::ProfileEnumerator(const Game& game, const EnumerationBudget& budget)
    : lists_(materialize_strategy_lists(game, budget)) {
  profile_count_ = 1;
  for (const auto& list : lists_) {
    if (list.empty()) throw ValidationError("a player has an empty strategy set");
    if (profile_count_ > budget.max_profiles / static_cast<std::int64_t>(list.size())) {
      throw BudgetExceededError("profile space exceeds budget of " + std::to_string(budget.max_profiles) +
                                " profiles");
    }
    profile_count_ *= static_cast<std::int64_t>(list.size());
  }
  reset();
}

void ProfileEnumerator::reset() {
  cursor_.assign(lists_.size(), 0);
  done_ = false;
}

bool ProfileEnumerator::next(StrategyProfile& out) {
  if (done_) return false;
  out.choices.resize(lists_.size());
  for (std::size_t i = 0; i < lists_.size(); ++i) out.choices[i] = lists_[i][cursor_[i]];
  // Advance like an odometer, last player fastest (player 0 most significant).
  for (std::size_t i = lists_.size(); i-- > 0;) {
    if (++cursor_[i] < lists_[i].size()) return true;
    cursor_[i] = 0;
  }
  done_ = true;
  return true;
}

std::pair<StrategyProfile, double> brute_force_min_potential(const Game& game,
                                                             const EnumerationBudget& budget) {
  ProfileEnumerator en(game, budget);
  StrategyProfile profile;
  StrategyProfile best;
  double best_phi = 0.0;
  bool first = true;
  while (en.next(profile)) {
    const double phi = oracle_potential(game, profile);
    if (first || phi < best_phi) {
      best = profile;
      best_phi = phi;
      first = false;
    }
  }
  return {best, best_phi};
}

bool brute_force_is_alpha_pne(const Game& game, const StrategyProfile& profile, double alpha,
                              const EnumerationBudget& budget) {
  if (!(alpha >= 1.0)) throw ValidationError("alpha must be at least 1");
  // Only per-player deviation lists are needed here, not the profile product.
  const auto lists = materialize_strategy_lists(game, budget);
  StrategyProfile scratch = profile;
  for (int i = 0; i < game.n; ++i) {
    const double cost = oracle_player_cost(game, profile, i);
    for (const Strategy& deviation : lists[static_cast<std::size_t>(i)]) {
      scratch.choices[static_cast<std::size_t>(i)] = deviation;
      if (cost > alpha * oracle_player_cost(game, scratch, i)) return false;
    }
    scratch.choices[static_cast<std::size_t>(i)] = profile.choices[static_cast<std::size_t>(i)];
  }
  return true;
}

}  // namespace brdlab
