#include "brdlab/game.hpp"

#include <algorithm>
#include <string>

#include "brdlab/errors.hpp"

namespace brdlab {

namespace {

std::string player_label(int i) { return "player " + std::to_string(i + 1); }

void check_player_index(const Game& game, int player) {
  if (player < 0 || player >= game.n) {
    throw ValidationError("player index " + std::to_string(player) + " out of range [0, " +
                          std::to_string(game.n) + ")");
  }
}

}  // namespace

void validate_profile(const Game& game, const StrategyProfile& profile) {
  if (static_cast<int>(profile.choices.size()) != game.n) {
    throw ValidationError("profile has " + std::to_string(profile.choices.size()) +
                          " choices, expected " + std::to_string(game.n));
  }
  for (int i = 0; i < game.n; ++i) {
    const Strategy& s = profile.choices[static_cast<std::size_t>(i)];
    if (s.empty()) throw ValidationError(player_label(i) + ": empty strategy");
    for (ResourceId r : s.resources()) {
      if (r < 0 || r >= game.m) {
        throw ValidationError(player_label(i) + ": resource id " + std::to_string(r) + " out of range");
      }
    }
    if (game.is_network()) {
      const auto& [o, d] = game.network().od_pairs[static_cast<std::size_t>(i)];
      if (!decode_path(game.network(), o, d, s)) {
        throw ValidationError(player_label(i) + ": chosen edges do not form a simple origin-destination path");
      }
    } else {
      const auto& set = game.explicit_sets()[static_cast<std::size_t>(i)];
      if (std::find(set.begin(), set.end(), s) == set.end()) {
        throw ValidationError(player_label(i) + ": strategy not in the player's strategy set");
      }
    }
  }
}

LoadProfile compute_loads(const Game& game, const StrategyProfile& profile) {
  validate_profile(game, profile);
  LoadProfile lp;
  lp.loads.assign(static_cast<std::size_t>(game.m), 0);
  for (const Strategy& s : profile.choices) {
    for (ResourceId r : s.resources()) ++lp.loads[static_cast<std::size_t>(r)];
  }
  return lp;
}

double player_cost(const Game& game, const StrategyProfile& profile, int player) {
  check_player_index(game, player);
  const LoadProfile lp = compute_loads(game, profile);
  double total = 0.0;
  for (ResourceId r : profile.choices[static_cast<std::size_t>(player)].resources()) {
    total += resource_cost(game.cost_model, r, lp.loads[static_cast<std::size_t>(r)], game.n);
  }
  return total;
}

std::vector<std::string> validate_game(const Game& game) {
  std::vector<std::string> out;
  if (game.n < 1) out.push_back("player count must be at least 1");
  if (game.m < 1) out.push_back("resource count must be at least 1");
  if (!out.empty()) return out;

  if (game.is_network()) {
    const NetworkSpec& net = game.network();
    auto net_issues = validate_network(net, game.m);
    out.insert(out.end(), net_issues.begin(), net_issues.end());
    if (static_cast<int>(net.od_pairs.size()) != game.n) {
      out.push_back("network has " + std::to_string(net.od_pairs.size()) + " od pairs, expected " +
                    std::to_string(game.n));
    }
  } else {
    const ExplicitStrategies& sets = game.explicit_sets();
    if (static_cast<int>(sets.size()) != game.n) {
      out.push_back("game has " + std::to_string(sets.size()) + " strategy sets, expected " +
                    std::to_string(game.n));
      return out;
    }
    for (int i = 0; i < game.n; ++i) {
      const auto& set = sets[static_cast<std::size_t>(i)];
      if (set.empty()) {
        out.push_back(player_label(i) + ": empty strategy set");
        continue;
      }
      for (const Strategy& s : set) {
        if (s.empty()) out.push_back(player_label(i) + ": contains an empty strategy");
        for (ResourceId r : s.resources()) {
          if (r < 0 || r >= game.m) {
            out.push_back(player_label(i) + ": strategy uses resource id " + std::to_string(r) +
                          " out of range");
          }
        }
      }
      auto sorted = set;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        out.push_back(player_label(i) + ": duplicate strategy in strategy set");
      }
    }
  }

  auto model_issues = validate_cost_model(game.cost_model, game.n, game.m);
  out.insert(out.end(), model_issues.begin(), model_issues.end());
  return out;
}

void validate_game_or_throw(const Game& game) {
  auto issues = validate_game(game);
  if (issues.empty()) return;
  std::string msg = "invalid game:";
  for (const auto& s : issues) msg += "\n  - " + s;
  throw ValidationError(msg);
}

double potential(const Game& game, const StrategyProfile& profile) {
  const LoadProfile lp = compute_loads(game, profile);
  double phi = 0.0;
  for (int r = 0; r < game.m; ++r) {
    const int load = lp.loads[static_cast<std::size_t>(r)];
    for (int j = 1; j <= load; ++j) phi += resource_cost(game.cost_model, r, j, game.n);
  }
  return phi;
}

std::pair<double, double> potential_difference_check(const Game& game, const StrategyProfile& profile,
                                                     int player, const Strategy& deviation) {
  check_player_index(game, player);
  StrategyProfile deviated = profile;
  deviated.choices[static_cast<std::size_t>(player)] = deviation;
  validate_profile(game, deviated);

  const double d_phi = potential(game, profile) - potential(game, deviated);
  const double d_cost = player_cost(game, profile, player) - player_cost(game, deviated, player);
  return {d_phi, d_cost};
}

}  // namespace brdlab
