#pragma once

#include <functional>
#include <span>
#include <vector>

#include "modbc/graph.hpp"

namespace modbc {

/// Keeps an edge (u, v) when true. An empty filter keeps every edge.
using EdgeFilter = std::function<bool(NodeId u, NodeId v)>;
/// Counts the ordered pair (source, target) when true. Empty counts all pairs.
using PairFilter = std::function<bool(NodeId source, NodeId target)>;

/// Single-source shortest-path record with the full predecessor DAG.
///
/// Predecessors of v are stored in the slice of `pred_storage` that starts at
/// the graph's adjacency offset of v, so no per-node allocation happens.
struct SsspState {
  NodeId source = 0;
  std::vector<double> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<NodeId> settled_order;
  std::vector<std::uint32_t> pred_count;
  std::vector<std::size_t> pred_offset;
  std::vector<NodeId> pred_storage;

  std::span<const NodeId> preds(NodeId v) const {
    return {pred_storage.data() + pred_offset[v], pred_count[v]};
  }
  bool reachable(NodeId v) const { return dist[v] != kInfinity; }
};

/// Dijkstra from `source` over the edges admitted by `filter`. Counts every
/// shortest path (sigma) and records every tied predecessor.
SsspState sssp_dijkstra(const Graph& g, NodeId source, const EdgeFilter& filter = {});

/// Buffer-reusing variant of sssp_dijkstra; `state` is resized as needed.
void sssp_dijkstra_into(const Graph& g, NodeId source, const EdgeFilter& filter,
                        SsspState& state);

/// Fills state.delta with pair dependencies by reverse settlement order.
/// Only targets t with pair_filter(source, t) contribute.
void accumulate_dependencies(SsspState& state, const PairFilter& pair_filter = {});

/// Exact betweenness over ordered pairs: score[v] sums sigma_st(v)/sigma_st
/// over s != v != t. Sources run in parallel over OpenMP; the result is
/// bitwise identical for every `threads` value.
CentralityVector brandes_bc(const Graph& g, const EdgeFilter& edge_filter = {},
                            const PairFilter& pair_filter = {}, int threads = 0);

/// Single-threaded reference for brandes_bc.
CentralityVector brandes_bc_serial(const Graph& g, const EdgeFilter& edge_filter = {},
                                   const PairFilter& pair_filter = {});

inline constexpr std::size_t kBruteForceNodeCap = 64;

/// Betweenness by explicit enumeration of every shortest path of every
/// ordered pair. Throws GraphError(GraphTooLarge) above kBruteForceNodeCap.
CentralityVector brute_force_bc(const Graph& g);

/// Halves every score: the unordered-pair convention.
CentralityVector halved(CentralityVector v);

}  // namespace modbc
