#pragma once

#include <vector>

#include "brdlab/game.hpp"
#include "brdlab/generator.hpp"
#include "brdlab/rng.hpp"

namespace brdlab::testing {

// Two players, two resources, tabular costs
//   c_r1 = (0.2, 0.5), c_r2 = (0.3, 0.4) for loads 1, 2;
// both players choose between {r1} and {r2}. Exact PNEs are the two
// split profiles; worst deviation ratio at ({r1},{r1}) is 0.5/0.3.
inline Game g1() {
  Game game;
  game.n = 2;
  game.m = 2;
  game.cost_model = TabularCosts{{{0.2, 0.5}, {0.3, 0.4}}};
  ExplicitStrategies sets(2, {Strategy({0}), Strategy({1})});
  game.strategies = sets;
  return game;
}

inline StrategyProfile profile(std::vector<std::vector<ResourceId>> choices) {
  StrategyProfile p;
  for (auto& ids : choices) p.choices.emplace_back(std::move(ids));
  return p;
}

inline ModelKind model_of(int index) {
  switch (index % 4) {
    case 0: return ModelKind::Tabular;
    case 1: return ModelKind::StepFunction;
    case 2: return ModelKind::Polynomial;
    default: return ModelKind::CostSharing;
  }
}

// Small random instance, enumerable strategy space.
inline Game random_instance(ModelKind kind, std::uint64_t seed, int max_n = 6, int max_m = 6) {
  CounterRng rng(derive_seed(seed, 0x74657374ULL));
  GeneratorSpec spec;
  spec.model = kind;
  spec.n = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_n)));
  spec.m = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_m)));
  spec.strategies_per_player = 2 + static_cast<int>(rng.next_below(3));
  spec.max_strategy_size = 1 + static_cast<int>(rng.next_below(3));
  spec.total_breaks = spec.m + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.m * std::max(1, spec.n - 1)) + 1));
  spec.degree = 1 + static_cast<int>(rng.next_below(3));
  spec.seed = rng.next_u64();
  return generate_skeleton(spec);
}

inline StrategyProfile random_profile(const Game& game, CounterRng& rng) {
  StrategyProfile p;
  for (int i = 0; i < game.n; ++i) {
    const auto& set = game.explicit_sets()[static_cast<std::size_t>(i)];
    p.choices.push_back(set[static_cast<std::size_t>(rng.next_below(set.size()))]);
  }
  return p;
}

}  // namespace brdlab::testing
