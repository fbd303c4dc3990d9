#include "brdlab/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "brdlab/errors.hpp"
#include "brdlab/game.hpp"

namespace brdlab {

namespace {

// Out-edges per node, edge indices ascending so traversals are lexicographic.
std::vector<std::vector<int>> out_adjacency(const NetworkSpec& spec) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(spec.node_count));
  for (int e = 0; e < static_cast<int>(spec.edges.size()); ++e) {
    adj[static_cast<std::size_t>(spec.edges[static_cast<std::size_t>(e)].tail)].push_back(e);
  }
  return adj;
}

struct PqEntry {
  double dist;
  int node;
  int in_edge;

  bool operator>(const PqEntry& o) const {
    if (dist != o.dist) return dist > o.dist;
    if (node != o.node) return node > o.node;
    return in_edge > o.in_edge;
  }
};

}  // namespace

Strategy PathStrategy::to_strategy() const { return Strategy(edges); }

std::vector<std::string> validate_network(const NetworkSpec& spec, int m) {
  std::vector<std::string> out;
  if (spec.node_count < 2) out.push_back("network needs at least 2 nodes");
  if (static_cast<int>(spec.edges.size()) != m) {
    out.push_back("network has " + std::to_string(spec.edges.size()) + " edges but the game has " +
                  std::to_string(m) + " resources");
  }
  for (std::size_t e = 0; e < spec.edges.size(); ++e) {
    const auto& edge = spec.edges[e];
    if (edge.tail < 0 || edge.tail >= spec.node_count || edge.head < 0 || edge.head >= spec.node_count) {
      out.push_back("edge " + std::to_string(e + 1) + ": endpoint out of range");
    } else if (edge.tail == edge.head) {
      out.push_back("edge " + std::to_string(e + 1) + ": self loop");
    }
  }
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < spec.od_pairs.size(); ++i) {
    const auto& [o, d] = spec.od_pairs[i];
    if (o < 0 || o >= spec.node_count || d < 0 || d >= spec.node_count) {
      out.push_back("player " + std::to_string(i + 1) + ": origin/destination out of range");
      continue;
    }
    if (o == d) {
      out.push_back("player " + std::to_string(i + 1) + ": origin equals destination");
      continue;
    }
    if (!is_reachable(spec, o, d)) {
      out.push_back("player " + std::to_string(i + 1) + ": destination unreachable from origin");
    }
  }
  return out;
}

bool is_reachable(const NetworkSpec& spec, int origin, int destination) {
  std::vector<char> seen(static_cast<std::size_t>(spec.node_count), 0);
  std::vector<int> stack{origin};
  seen[static_cast<std::size_t>(origin)] = 1;
  const auto adj = out_adjacency(spec);
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u == destination) return true;
    for (int e : adj[static_cast<std::size_t>(u)]) {
      const int v = spec.edges[static_cast<std::size_t>(e)].head;
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  return false;
}

NetworkBestResponse shortest_weighted_path(const NetworkSpec& spec, int origin, int destination,
                                           const std::function<double(int)>& weight) {
  const auto adj = out_adjacency(spec);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(spec.node_count), inf);
  std::vector<int> best_in(static_cast<std::size_t>(spec.node_count), std::numeric_limits<int>::max());
  std::vector<int> parent_edge(static_cast<std::size_t>(spec.node_count), -1);
  std::vector<char> done(static_cast<std::size_t>(spec.node_count), 0);

  std::priority_queue<PqEntry, std::vector<PqEntry>, std::greater<>> pq;
  dist[static_cast<std::size_t>(origin)] = 0.0;
  best_in[static_cast<std::size_t>(origin)] = -1;
  pq.push({0.0, origin, -1});

  while (!pq.empty()) {
    const PqEntry top = pq.top();
    pq.pop();
    const auto u = static_cast<std::size_t>(top.node);
    if (done[u]) continue;
    done[u] = 1;
    parent_edge[u] = top.in_edge;
    if (top.node == destination) break;
    for (int e : adj[u]) {
      const auto v = static_cast<std::size_t>(spec.edges[static_cast<std::size_t>(e)].head);
      if (done[v]) continue;
      const double nd = top.dist + weight(e);
      if (nd < dist[v] || (nd == dist[v] && e < best_in[v])) {
        dist[v] = nd;
        best_in[v] = e;
        pq.push({nd, static_cast<int>(v), e});
      }
    }
  }

  if (!done[static_cast<std::size_t>(destination)]) {
    throw ValidationError("destination unreachable from origin");
  }

  PathStrategy path;
  for (int v = destination; v != origin;) {
    const int e = parent_edge[static_cast<std::size_t>(v)];
    path.edges.push_back(e);
    v = spec.edges[static_cast<std::size_t>(e)].tail;
  }
  std::reverse(path.edges.begin(), path.edges.end());

  // Recompute the cost in path order; it is the value the contract promises.
  double cost = 0.0;
  for (int e : path.edges) cost += weight(e);
  return {std::move(path), cost};
}

NetworkBestResponse network_best_response(const Game& game, const StrategyProfile& profile, int player) {
  if (!game.is_network()) throw ValidationError("best-response path query on a non-network game");
  if (player < 0 || player >= game.n) throw ValidationError("player index out of range");
  const NetworkSpec& spec = game.network();
  const LoadProfile lp = compute_loads(game, profile);
  const Strategy& current = profile.choices[static_cast<std::size_t>(player)];
  const CostTable table(game.cost_model, game.n, game.m);

  // Weight of edge e for this player: cost at the load excluding the player,
  // plus one for the player itself.
  auto weight = [&](int e) {
    const int other_load = lp.loads[static_cast<std::size_t>(e)] - (current.contains(e) ? 1 : 0);
    return table.cost(e, other_load + 1);
  };
  const auto& [origin, destination] = spec.od_pairs[static_cast<std::size_t>(player)];
  return shortest_weighted_path(spec, origin, destination, weight);
}

std::vector<PathStrategy> enumerate_simple_paths(const NetworkSpec& spec, int origin, int destination,
                                                 std::int64_t cap) {
  if (cap < 1) throw ValidationError("path enumeration cap must be at least 1");
  if (origin < 0 || origin >= spec.node_count || destination < 0 || destination >= spec.node_count) {
    throw ValidationError("origin/destination out of range");
  }
  const auto adj = out_adjacency(spec);
  std::vector<PathStrategy> result;
  std::vector<char> visited(static_cast<std::size_t>(spec.node_count), 0);
  std::vector<ResourceId> current;

  // Iterative DFS trying edges in ascending index order => lexicographic output.
  struct Frame {
    int node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  visited[static_cast<std::size_t>(origin)] = 1;
  stack.push_back({origin, 0});

  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& out_edges = adj[static_cast<std::size_t>(f.node)];
    if (f.next >= out_edges.size()) {
      visited[static_cast<std::size_t>(f.node)] = 0;
      stack.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    const int e = out_edges[f.next++];
    const int v = spec.edges[static_cast<std::size_t>(e)].head;
    if (visited[static_cast<std::size_t>(v)]) continue;
    if (v == destination) {
      current.push_back(e);
      if (static_cast<std::int64_t>(result.size()) >= cap) {
        throw BudgetExceededError("simple-path count exceeds cap " + std::to_string(cap) +
                                  "; instance unsuitable for enumeration");
      }
      result.push_back({current});
      current.pop_back();
      continue;
    }
    visited[static_cast<std::size_t>(v)] = 1;
    current.push_back(e);
    stack.push_back({v, 0});
  }
  return result;
}

std::optional<PathStrategy> decode_path(const NetworkSpec& spec, int origin, int destination,
                                        const Strategy& edge_set) {
  if (edge_set.empty()) return std::nullopt;
  // In a simple path every node has at most one outgoing edge of the set.
  std::vector<int> next_edge(static_cast<std::size_t>(spec.node_count), -1);
  for (ResourceId e : edge_set.resources()) {
    if (e < 0 || e >= static_cast<ResourceId>(spec.edges.size())) return std::nullopt;
    const int tail = spec.edges[static_cast<std::size_t>(e)].tail;
    if (next_edge[static_cast<std::size_t>(tail)] != -1) return std::nullopt;
    next_edge[static_cast<std::size_t>(tail)] = e;
  }
  PathStrategy path;
  std::vector<char> visited(static_cast<std::size_t>(spec.node_count), 0);
  int node = origin;
  while (node != destination) {
    if (visited[static_cast<std::size_t>(node)]) return std::nullopt;
    visited[static_cast<std::size_t>(node)] = 1;
    const int e = next_edge[static_cast<std::size_t>(node)];
    if (e == -1) return std::nullopt;
    path.edges.push_back(e);
    node = spec.edges[static_cast<std::size_t>(e)].head;
  }
  if (path.edges.size() != edge_set.size()) return std::nullopt;  // leftover edges off the walk
  return path;
}

PathStrategy lexicographic_first_path(const NetworkSpec& spec, int origin, int destination) {
  const auto adj = out_adjacency(spec);
  std::vector<char> visited(static_cast<std::size_t>(spec.node_count), 0);
  std::vector<ResourceId> current;

  struct Frame {
    int node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  visited[static_cast<std::size_t>(origin)] = 1;
  stack.push_back({origin, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& out_edges = adj[static_cast<std::size_t>(f.node)];
    if (f.next >= out_edges.size()) {
      visited[static_cast<std::size_t>(f.node)] = 0;
      stack.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    const int e = out_edges[f.next++];
    const int v = spec.edges[static_cast<std::size_t>(e)].head;
    if (visited[static_cast<std::size_t>(v)]) continue;
    if (v == destination) {
      current.push_back(e);
      return {current};
    }
    visited[static_cast<std::size_t>(v)] = 1;
    current.push_back(e);
    stack.push_back({v, 0});
  }
  throw ValidationError("destination unreachable from origin");
}

std::optional<PathStrategy> random_simple_path(const NetworkSpec& spec, int origin, int destination,
                                               CounterRng& rng) {
  auto adj = out_adjacency(spec);
  // Shuffle each node's out-edges once; the DFS then backtracks as needed.
  for (auto& edges : adj) {
    for (std::size_t i = edges.size(); i > 1; --i) {
      std::swap(edges[i - 1], edges[static_cast<std::size_t>(rng.next_below(i))]);
    }
  }
  std::vector<char> visited(static_cast<std::size_t>(spec.node_count), 0);
  std::vector<ResourceId> current;
  struct Frame {
    int node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  visited[static_cast<std::size_t>(origin)] = 1;
  stack.push_back({origin, 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& out_edges = adj[static_cast<std::size_t>(f.node)];
    if (f.next >= out_edges.size()) {
      visited[static_cast<std::size_t>(f.node)] = 0;
      stack.pop_back();
      if (!current.empty()) current.pop_back();
      continue;
    }
    const int e = out_edges[f.next++];
    const int v = spec.edges[static_cast<std::size_t>(e)].head;
    if (visited[static_cast<std::size_t>(v)]) continue;
    if (v == destination) {
      current.push_back(e);
      return PathStrategy{current};
    }
    visited[static_cast<std::size_t>(v)] = 1;
    current.push_back(e);
    stack.push_back({v, 0});
  }
  return std::nullopt;
}

}  // namespace brdlab
