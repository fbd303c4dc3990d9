#include "brdlab/generator.hpp"

#include <algorithm>
#include <string>

#include "brdlab/errors.hpp"
#include "brdlab/network.hpp"

namespace brdlab {

namespace {

double positive_unit(CounterRng& rng) {
  double x = rng.next_double();
  while (x == 0.0) x = rng.next_double();
  return x;
}

// Random nonempty resource subset of size <= max_size.
Strategy random_strategy(int m, int max_size, CounterRng& rng) {
  const int size = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(std::min(max_size, m))));
  std::vector<ResourceId> ids;
  ids.reserve(static_cast<std::size_t>(size));
  while (static_cast<int>(ids.size()) < size) {
    const auto r = static_cast<ResourceId>(rng.next_below(static_cast<std::uint64_t>(m)));
    if (std::find(ids.begin(), ids.end(), r) == ids.end()) ids.push_back(r);
  }
  return Strategy(std::move(ids));
}

ExplicitStrategies random_strategy_sets(const GeneratorSpec& spec, CounterRng& rng) {
  ExplicitStrategies sets(static_cast<std::size_t>(spec.n));
  for (auto& set : sets) {
    int duplicate_streak = 0;
    while (static_cast<int>(set.size()) < spec.strategies_per_player && duplicate_streak < 64) {
      Strategy s = random_strategy(spec.m, spec.max_strategy_size, rng);
      if (std::find(set.begin(), set.end(), s) == set.end()) {
        set.push_back(std::move(s));
        duplicate_streak = 0;
      } else {
        ++duplicate_streak;  // tiny resource pools may not have enough distinct subsets
      }
    }
  }
  return sets;
}

CostModel random_cost_model(ModelKind kind, int n, int m, int total_breaks, int degree, CounterRng& rng) {
  switch (kind) {
    case ModelKind::Tabular: {
      TabularCosts model;
      model.table.resize(static_cast<std::size_t>(m));
      for (auto& row : model.table) {
        row.resize(static_cast<std::size_t>(n));
        for (double& v : row) v = rng.next_double();
      }
      return model;
    }
    case ModelKind::StepFunction: {
      int d = total_breaks <= 0 ? m : total_breaks;
      d = std::clamp(d, m, m * n);
      // One mandatory break at 1 per resource; spread the rest over loads 2..n.
      std::vector<int> per_resource(static_cast<std::size_t>(m), 1);
      int remaining = d - m;
      while (remaining > 0) {
        const auto r = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(m)));
        if (per_resource[r] < n) {
          ++per_resource[r];
          --remaining;
        }
      }
      StepFunctionCosts model;
      model.resources.resize(static_cast<std::size_t>(m));
      for (int r = 0; r < m; ++r) {
        StepResource& sr = model.resources[static_cast<std::size_t>(r)];
        sr.breaks.push_back(1);
        while (static_cast<int>(sr.breaks.size()) < per_resource[static_cast<std::size_t>(r)]) {
          const int b = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1)));
          if (std::find(sr.breaks.begin(), sr.breaks.end(), b) == sr.breaks.end()) sr.breaks.push_back(b);
        }
        std::sort(sr.breaks.begin(), sr.breaks.end());
        sr.jumps.resize(sr.breaks.size());
        for (double& a : sr.jumps) a = positive_unit(rng);
      }
      return model;
    }
    case ModelKind::Polynomial: {
      PolynomialCosts model;
      model.degree = std::clamp(degree, 0, 8);
      model.resources.resize(static_cast<std::size_t>(m));
      for (auto& pr : model.resources) {
        for (int j = 0; j <= model.degree; ++j) {
          if (rng.next_double() < 0.5) pr.support.push_back(j);
        }
        if (pr.support.empty()) {
          pr.support.push_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(model.degree + 1))));
        }
        pr.coeffs.resize(pr.support.size());
        for (double& a : pr.coeffs) a = positive_unit(rng);
      }
      return model;
    }
    case ModelKind::CostSharing: {
      CostSharingCosts model;
      model.fixed_costs.resize(static_cast<std::size_t>(m));
      for (double& a : model.fixed_costs) a = positive_unit(rng);
      return model;
    }
  }
  throw ValidationError("unknown model kind");
}

}  // namespace

AdversarialSkeleton generate_skeleton(const GeneratorSpec& spec) {
  if (spec.n < 1 || spec.m < 1) throw ValidationError("generator needs n >= 1 and m >= 1");
  if (spec.strategies_per_player < 1) throw ValidationError("generator needs at least 1 strategy per player");
  if (spec.max_strategy_size < 1) throw ValidationError("generator needs max strategy size >= 1");

  CounterRng rng(derive_seed(spec.seed, 0x67656e00ULL));
  Game game;
  game.n = spec.n;
  game.m = spec.m;
  game.strategies = random_strategy_sets(spec, rng);
  game.cost_model = random_cost_model(spec.model, spec.n, spec.m, spec.total_breaks, spec.degree, rng);
  validate_game_or_throw(game);
  return game;
}

NetworkSpec random_network(int max_nodes, int max_edges, int players, CounterRng& rng) {
  if (max_nodes < 2) throw ValidationError("network generator needs at least 2 nodes");
  if (players < 1) throw ValidationError("network generator needs at least 1 player");

  NetworkSpec spec;
  spec.node_count = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_nodes - 1)));

  auto add_edge = [&](int tail, int head) {
    spec.edges.push_back({tail, head});
  };

  // Per-player od pair with a guaranteed spine (direct edge or one hop).
  for (int i = 0; i < players; ++i) {
    const int o = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.node_count)));
    int d = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.node_count)));
    while (d == o) d = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.node_count)));
    spec.od_pairs.emplace_back(o, d);
    if (spec.node_count > 2 && rng.next_double() < 0.5) {
      int v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.node_count)));
      while (v == o || v == d) v = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.node_count)));
      add_edge(o, v);
      add_edge(v, d);
    } else {
      add_edge(o, d);
    }
  }

  // Extra random edges up to the cap.
  while (static_cast<int>(spec.edges.size()) < max_edges && rng.next_double() < 0.8) {
    const int tail = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.node_count)));
    int head = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.node_count)));
    while (head == tail) head = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(spec.node_count)));
    add_edge(tail, head);
  }

  if (static_cast<int>(spec.edges.size()) > max_edges) {
    throw ValidationError("network generator: players * 2 spine edges exceed the edge cap");
  }
  return spec;
}

AdversarialSkeleton generate_network_skeleton(ModelKind model, int max_nodes, int max_edges, int players,
                                              int degree, std::uint64_t seed) {
  CounterRng rng(derive_seed(seed, 0x6e657400ULL));
  NetworkSpec spec = random_network(max_nodes, max_edges, players, rng);
  Game game;
  game.n = players;
  game.m = static_cast<int>(spec.edges.size());
  game.strategies = spec;
  game.cost_model = random_cost_model(model, game.n, game.m, /*total_breaks=*/0, degree, rng);
  validate_game_or_throw(game);
  return game;
}

}  // namespace brdlab
