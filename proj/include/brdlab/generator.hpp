#pragma once

#include <cstdint>

#include "brdlab/game.hpp"
#include "brdlab/rng.hpp"

namespace brdlab {

// Deterministic random-instance generator used by the experiment harness and
// the test suites. Nominal parameter values are uniform on (0,1]; structure
// (strategy sets, break points, supports, graphs) is what an adversary would
// fix before perturbation.
struct GeneratorSpec {
  ModelKind model = ModelKind::Tabular;
  int n = 2;
  int m = 2;
  int strategies_per_player = 3;
  int max_strategy_size = 3;
  int total_breaks = 0;  // step only; 0 = one break per resource; clamped to [m, m*n]
  int degree = 2;        // polynomial only; <= 8
  std::uint64_t seed = 0;
};

AdversarialSkeleton generate_skeleton(const GeneratorSpec& spec);

// Random directed multigraph with guaranteed o->d connectivity per player.
NetworkSpec random_network(int max_nodes, int max_edges, int players, CounterRng& rng);

// Network skeleton: random graph plus nominal cost parameters for its edges.
AdversarialSkeleton generate_network_skeleton(ModelKind model, int max_nodes, int max_edges,
                                              int players, int degree, std::uint64_t seed);

}  // namespace brdlab
