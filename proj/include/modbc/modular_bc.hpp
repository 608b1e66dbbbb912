#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "modbc/graph.hpp"

namespace modbc {

/// Shortest-path DAG inside one module, rooted at one member. Indices are
/// positions in the module's member list.
struct LocalDag {
  std::vector<double> dist;
  std::vector<double> sigma;
  std::vector<std::uint32_t> order;  // settlement order, root first
  std::vector<std::uint32_t> pred_begin;  // size members + 1
  std::vector<std::uint32_t> preds;

  std::span<const std::uint32_t> preds_of(std::uint32_t v) const {
    return {preds.data() + pred_begin[v], preds.data() + pred_begin[v + 1]};
  }
};

/// Intra-module shortest-path data recorded while computing local centrality.
struct ModuleSummary {
  ModuleId module = 0;
  std::vector<NodeId> members;
  std::vector<NodeId> external;  // global ids, sorted
  std::vector<std::uint32_t> external_local;  // member positions of `external`
  /// members x external, row-major: internal distance / path count from a
  /// member to an external vertex. Infinite / zero when unreachable.
  std::vector<double> to_ext_dist;
  std::vector<double> to_ext_sigma;
  /// One DAG per member. The DAGs rooted at external vertices are the ones the
  /// cross-module pass pushes dependencies into; the others serve as sources.
  std::vector<LocalDag> dags;

  std::size_t size() const { return members.size(); }
  double ext_dist(std::uint32_t member, std::size_t ext) const {
    return to_ext_dist[member * external.size() + ext];
  }
  double ext_sigma(std::uint32_t member, std::size_t ext) const {
    return to_ext_sigma[member * external.size() + ext];
  }
  const LocalDag& local_dag(std::size_t ext) const { return dags[external_local[ext]]; }
};

struct LocalCentrality {
  CentralityVector lc;
  std::vector<ModuleSummary> summaries;
};

/// Betweenness of each module on its own internal edges and intra-module
/// pairs. Modules run in parallel.
LocalCentrality local_centrality(const Graph& g, const ModulePartition& p, int threads = 0);

inline constexpr std::uint32_t kNoEdge = std::numeric_limits<std::uint32_t>::max();

struct EgressChoice {
  NodeId node = 0;
  double egress_cost = kInfinity;
  /// Index into ModulePartition::external_edges, kNoEdge when no exit exists.
  std::uint32_t egress_edge = kNoEdge;
};

/// Cheapest exit for every node: internal distance to an external vertex of
/// its module plus the weight of one external edge at that vertex.
std::vector<EgressChoice> egress_paths(const ModulePartition& p,
                                       std::span<const ModuleSummary> summaries,
                                       const Graph& g);

/// Dependencies of cross-module ordered pairs on every node.
///
/// For each source a Dijkstra runs over a skeleton whose vertices are the
/// external vertices (split into arrival and departure copies) joined by
/// precomputed intra-module segments and by external edges. Target distances
/// come from arrival vertices plus internal segments. Dependencies flowing
/// along each segment are pushed back down its intra-module DAG so interior
/// nodes get their share. Exact whenever every shortest path between two
/// nodes of one module stays inside that module.
CentralityVector cross_module_dependencies(const Graph& g, const ModulePartition& p,
                                           std::span<const ModuleSummary> summaries,
                                           int threads = 0);

/// Single-threaded reference for cross_module_dependencies.
CentralityVector cross_module_dependencies_serial(const Graph& g, const ModulePartition& p,
                                                  std::span<const ModuleSummary> summaries);

struct PreconditionCheck {
  bool holds = true;
  NodeId source = 0;
  NodeId target = 0;
  double inside = 0.0;   // best path that stays in the module
  double outside = 0.0;  // best path that uses an external edge
  std::size_t sources_checked = 0;
};

/// Checks that no pair of same-module nodes has a shortest path (strictly
/// shorter or tied) leaving the module. Up to `max_sources` evenly spaced
/// sources are examined, all nodes when max_sources == 0.
PreconditionCheck check_locality(const Graph& g, const ModulePartition& p,
                                 std::size_t max_sources = 0);

struct GlobalCentralityReport {
  CentralityVector lc;
  CentralityVector ec;
  CentralityVector gc;
  std::vector<double> ec_module;
  std::vector<EgressChoice> egress;
  NodeId global_central_node = 0;
  ModuleId global_central_module = 0;
};

struct ModularOptions {
  int threads = 0;
  /// Run check_locality first and throw GraphError(PreconditionViolated).
  bool validate = false;
  std::size_t validate_sources = 256;
};

GlobalCentralityReport global_centrality(const Graph& g, const ModulePartition& p,
                                         const ModularOptions& options = {});

}  // namespace modbc
