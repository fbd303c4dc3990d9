#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "brdlab/cost_model.hpp"
#include "brdlab/rng.hpp"

namespace brdlab {

struct Game;
struct StrategyProfile;
class Strategy;

// Directed multigraph strategy representation: edge k *is* resource k, and
// player i's strategies are the simple o_i -> d_i paths. Path sets are never
// enumerated by the engine; best responses are shortest-path queries.
struct NetworkSpec {
  struct Edge {
    int tail = 0;
    int head = 0;
  };

  int node_count = 0;
  std::vector<Edge> edges;                       // edge index == ResourceId
  std::vector<std::pair<int, int>> od_pairs;     // per player (origin, destination)
};

// An ordered sequence of edge indices forming a simple path.
struct PathStrategy {
  std::vector<ResourceId> edges;

  Strategy to_strategy() const;
};

struct NetworkBestResponse {
  PathStrategy path;
  double cost = 0.0;  // C_i(path, s_{-i})
};

// Shortest o_i -> d_i path under edge weights c_e(l_e(s_{-i}) + 1), i.e. the
// cost player i would pay on each edge after joining it. Ties are broken by a
// deterministic priority-queue order on (distance, node, incoming edge index),
// which prefers lexicographically smaller edge sequences.
NetworkBestResponse network_best_response(const Game& game, const StrategyProfile& profile, int player);

// Dijkstra core shared by the engine: shortest path under caller-supplied
// nonnegative edge weights, deterministic tie-breaking as above. The returned
// cost is re-accumulated in path order.
NetworkBestResponse shortest_weighted_path(const NetworkSpec& spec, int origin, int destination,
                                           const std::function<double(int)>& weight);

// All simple origin -> destination paths in lexicographic order by edge index
// sequence. Throws BudgetExceededError once more than `cap` paths are found.
std::vector<PathStrategy> enumerate_simple_paths(const NetworkSpec& spec, int origin, int destination,
                                                 std::int64_t cap);

// Reconstructs the unique simple path with exactly this edge set, or nullopt
// if the set does not form a simple origin -> destination path.
std::optional<PathStrategy> decode_path(const NetworkSpec& spec, int origin, int destination,
                                        const Strategy& edge_set);

// First simple path in lexicographic (edge index) order. Throws
// ValidationError if the destination is unreachable.
PathStrategy lexicographic_first_path(const NetworkSpec& spec, int origin, int destination);

// A uniformly-shuffled DFS path: a cheap random (not uniform) element of the
// path set, used for randomized start profiles.
std::optional<PathStrategy> random_simple_path(const NetworkSpec& spec, int origin, int destination,
                                               CounterRng& rng);

// True if a directed path origin -> destination exists.
bool is_reachable(const NetworkSpec& spec, int origin, int destination);

std::vector<std::string> validate_network(const NetworkSpec& spec, int m);

}  // namespace brdlab
