#include "modbc/exact_bc.hpp"

#include <queue>

#include "modbc/parallel.hpp"

namespace modbc {
namespace {

using HeapEntry = std::pair<double, NodeId>;
using MinHeap = std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>>;

void reset_state(const Graph& g, NodeId source, SsspState& s) {
  const std::size_t n = g.node_count();
  s.source = source;
  s.dist.assign(n, kInfinity);
  s.sigma.assign(n, 0.0);
  s.delta.assign(n, 0.0);
  s.pred_count.assign(n, 0);
  s.settled_order.clear();
  s.settled_order.reserve(n);
  s.pred_offset.resize(n);
  for (NodeId v = 0; v < n; ++v) s.pred_offset[v] = g.adjacency_offset(v);
  s.pred_storage.resize(g.adjacency_size());
}

void accumulate_into(SsspState& s, const PairFilter& pair_filter, std::span<double> scores) {
  accumulate_dependencies(s, pair_filter);
  for (NodeId w : s.settled_order) {
    if (w != s.source) scores[w] += s.delta[w];
  }
}

}  // namespace

void sssp_dijkstra_into(const Graph& g, NodeId source, const EdgeFilter& filter,
                        SsspState& s) {
  reset_state(g, source, s);
  std::vector<char> settled(g.node_count(), 0);
  MinHeap heap;
  s.dist[source] = 0.0;
  s.sigma[source] = 1.0;
  heap.push({0.0, source});

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (settled[u] || d != s.dist[u]) continue;
    settled[u] = 1;
    s.settled_order.push_back(u);

    for (const Neighbor& nb : g.neighbors(u)) {
      const NodeId v = nb.node;
      if (settled[v]) continue;
      if (filter && !filter(u, v)) continue;
      const double candidate = d + nb.weight;
      if (s.dist[v] != kInfinity && same_length(candidate, s.dist[v])) {
        s.sigma[v] += s.sigma[u];
        s.pred_storage[s.pred_offset[v] + s.pred_count[v]++] = u;
      } else if (candidate < s.dist[v]) {
        s.dist[v] = candidate;
        s.sigma[v] = s.sigma[u];
        s.pred_count[v] = 1;
        s.pred_storage[s.pred_offset[v]] = u;
        heap.push({candidate, v});
      }
    }
  }
}

SsspState sssp_dijkstra(const Graph& g, NodeId source, const EdgeFilter& filter) {
  SsspState s;
  sssp_dijkstra_into(g, source, filter, s);
  return s;
}

void accumulate_dependencies(SsspState& s, const PairFilter& pair_filter) {
  std::fill(s.delta.begin(), s.delta.end(), 0.0);
  for (auto it = s.settled_order.rbegin(); it != s.settled_order.rend(); ++it) {
    const NodeId w = *it;
    const double terminal = (w != s.source && (!pair_filter || pair_filter(s.source, w))) ? 1.0 : 0.0;
    const double coeff = (terminal + s.delta[w]) / s.sigma[w];
    for (NodeId p : s.preds(w)) s.delta[p] += s.sigma[p] * coeff;
  }
}

CentralityVector brandes_bc(const Graph& g, const EdgeFilter& edge_filter,
                            const PairFilter& pair_filter, int threads) {
  const std::size_t n = g.node_count();
  auto scores = detail::blocked_sum(
      n, n, threads, [] { return SsspState{}; },
      [&](SsspState& state, std::size_t source, std::span<double> acc) {
        sssp_dijkstra_into(g, static_cast<NodeId>(source), edge_filter, state);
        accumulate_into(state, pair_filter, acc);
      });
  return {Measure::BC, std::move(scores)};
}

CentralityVector brandes_bc_serial(const Graph& g, const EdgeFilter& edge_filter,
                                   const PairFilter& pair_filter) {
  const std::size_t n = g.node_count();
  std::vector<double> scores(n, 0.0);
  SsspState state;
  for (NodeId s = 0; s < n; ++s) {
    sssp_dijkstra_into(g, s, edge_filter, state);
    accumulate_into(state, pair_filter, scores);
  }
  return {Measure::BC, std::move(scores)};
}

CentralityVector brute_force_bc(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n > kBruteForceNodeCap) {
    throw GraphError(GraphErrc::GraphTooLarge,
                     "brute-force betweenness is capped at " +
                         std::to_string(kBruteForceNodeCap) + " nodes, got " + std::to_string(n));
  }

  // Floyd-Warshall all-pairs distances.
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInfinity));
  for (std::size_t v = 0; v < n; ++v) dist[v][v] = 0.0;
  for (const Edge& e : g.edges()) {
    dist[e.u][e.v] = std::min(dist[e.u][e.v], e.weight);
    dist[e.v][e.u] = std::min(dist[e.v][e.u], e.weight);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];

  std::vector<double> scores(n, 0.0);
  std::vector<double> through(n);
  std::vector<NodeId> path;

  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t || dist[s][t] == kInfinity) continue;
      std::fill(through.begin(), through.end(), 0.0);
      double paths = 0.0;
      path.assign(1, s);

      // Walk every edge (u, v) with d(s,u) + w + d(v,t) = d(s,t).
      std::function<void(NodeId)> extend = [&](NodeId u) {
        if (u == t) {
          paths += 1.0;
          for (std::size_t i = 1; i + 1 < path.size(); ++i) through[path[i]] += 1.0;
          return;
        }
        for (const Neighbor& nb : g.neighbors(u)) {
          const double via = dist[s][u] + nb.weight;
          if (!same_length(via, dist[s][nb.node])) continue;
          if (!same_length(via + dist[nb.node][t], dist[s][t])) continue;
          path.push_back(nb.node);
          extend(nb.node);
          path.pop_back();
        }
      };
      extend(s);

      for (NodeId v = 0; v < n; ++v) {
        if (through[v] > 0.0) scores[v] += through[v] / paths;
      }
    }
  }
  return {Measure::BC, std::move(scores)};
}

CentralityVector halved(CentralityVector v) {
  for (double& x : v.scores) x *= 0.5;
  return v;
}

}  // namespace modbc
