#include <doctest.h>

#include <cmath>

#include "brdlab/errors.hpp"
#include "brdlab/game.hpp"
#include "brdlab/oracle.hpp"
#include "support.hpp"

using namespace brdlab;
using brdlab::testing::profile;

namespace {

// Two nodes joined by parallel edges e0, e1; both players travel 0 -> 1.
// Edge costs mirror the reference tabular game.
Game parallel_game() {
  Game game;
  game.n = 2;
  game.m = 2;
  game.cost_model = TabularCosts{{{0.2, 0.5}, {0.3, 0.4}}};
  NetworkSpec net;
  net.node_count = 2;
  net.edges = {{0, 1}, {0, 1}};
  net.od_pairs = {{0, 1}, {0, 1}};
  game.strategies = net;
  return game;
}

Game line_game() {
  Game game;
  game.n = 1;
  game.m = 2;
  game.cost_model = TabularCosts{{{0.1}, {0.2}}};
  NetworkSpec net;
  net.node_count = 3;
  net.edges = {{0, 1}, {1, 2}};
  net.od_pairs = {{0, 2}};
  game.strategies = net;
  return game;
}

NetworkSpec diamond() {
  NetworkSpec net;
  net.node_count = 4;
  net.edges = {{0, 1}, {1, 3}, {0, 2}, {2, 3}};
  net.od_pairs = {{0, 3}};
  return net;
}

}  // namespace

TEST_CASE("best response avoids the congested parallel edge") {
  const Game game = parallel_game();
  const auto br = network_best_response(game, profile({{0}, {0}}), 1);
  CHECK(br.path.edges == std::vector<ResourceId>{1});
  CHECK(br.cost == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("single path is returned with its summed cost") {
  const Game game = line_game();
  const auto br = network_best_response(game, profile({{0, 1}}), 0);
  CHECK(br.path.edges == std::vector<ResourceId>{0, 1});
  CHECK(br.cost == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("enumerate_simple_paths is lexicographic and capped") {
  SUBCASE("parallel edges") {
    const auto paths = enumerate_simple_paths(parallel_game().network(), 0, 1, 10);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].edges == std::vector<ResourceId>{0});
    CHECK(paths[1].edges == std::vector<ResourceId>{1});
  }
  SUBCASE("line has exactly one path") {
    CHECK(enumerate_simple_paths(line_game().network(), 0, 2, 10).size() == 1);
  }
  SUBCASE("diamond in edge-index order") {
    const auto paths = enumerate_simple_paths(diamond(), 0, 3, 10);
    REQUIRE(paths.size() == 2);
    CHECK(paths[0].edges == std::vector<ResourceId>{0, 1});
    CHECK(paths[1].edges == std::vector<ResourceId>{2, 3});
  }
  SUBCASE("cap exceeded") {
    CHECK_THROWS_AS(enumerate_simple_paths(diamond(), 0, 3, 1), BudgetExceededError);
  }
}

TEST_CASE("decode_path accepts exactly the simple o-d edge sets") {
  const NetworkSpec net = diamond();
  CHECK(decode_path(net, 0, 3, Strategy({0, 1})).has_value());
  CHECK(decode_path(net, 0, 3, Strategy({2, 3})).has_value());
  CHECK(!decode_path(net, 0, 3, Strategy({0, 3})).has_value());
  CHECK(!decode_path(net, 0, 3, Strategy({0, 1, 2, 3})).has_value());
  CHECK(!decode_path(net, 0, 3, Strategy({0})).has_value());
  const auto decoded = decode_path(net, 0, 3, Strategy({1, 0}));
  REQUIRE(decoded.has_value());
  CHECK(decoded->edges == std::vector<ResourceId>{0, 1});
}

TEST_CASE("validation catches unreachable destinations") {
  Game game = line_game();
  NetworkSpec net = game.network();
  net.od_pairs = {{2, 0}};
  game.strategies = net;
  const auto issues = validate_game(game);
  REQUIRE(!issues.empty());
  CHECK(issues[0].find("unreachable") != std::string::npos);
}

TEST_CASE("best response equals the enumerated minimum on random networks") {
  CounterRng rng(44);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    const Game game = generate_network_skeleton(brdlab::testing::model_of(it), 6, 10,
                                                1 + static_cast<int>(rng.next_below(3)), 2, rng.next_u64());
    const NetworkSpec& net = game.network();

    // Random start profile built from per-player path sets.
    StrategyProfile p;
    std::vector<std::vector<PathStrategy>> paths;
    for (int i = 0; i < game.n; ++i) {
      const auto& [o, d] = net.od_pairs[static_cast<std::size_t>(i)];
      paths.push_back(enumerate_simple_paths(net, o, d, 10'000));
      const auto& mine = paths.back();
      p.choices.push_back(mine[static_cast<std::size_t>(rng.next_below(mine.size()))].to_strategy());
    }

    for (int i = 0; i < game.n; ++i) {
      const auto br = network_best_response(game, p, i);

      // Returned path is simple.
      const auto& [o, d] = net.od_pairs[static_cast<std::size_t>(i)];
      CHECK(decode_path(net, o, d, br.path.to_strategy()).has_value());

      // Weakly improving versus the current path.
      StrategyProfile cur = p;
      const double current_cost = player_cost(game, cur, i);
      CHECK(br.cost <= current_cost + 1e-12);

      // Equals the brute-force minimum over all simple paths.
      double best = std::numeric_limits<double>::infinity();
      for (const auto& path : paths[static_cast<std::size_t>(i)]) {
        StrategyProfile q = p;
        q.choices[static_cast<std::size_t>(i)] = path.to_strategy();
        best = std::min(best, player_cost(game, q, i));
      }
      CHECK(std::abs(br.cost - best) <= 1e-9);

      // And matches a direct evaluation of the returned path's cost.
      StrategyProfile q = p;
      q.choices[static_cast<std::size_t>(i)] = br.path.to_strategy();
      CHECK(br.cost == doctest::Approx(player_cost(game, q, i)).epsilon(1e-9));
      ++checked;
    }
  }
  CHECK(checked > 60);
}
