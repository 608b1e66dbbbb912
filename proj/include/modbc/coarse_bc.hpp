#pragma once

#include <array>
#include <vector>

#include "modbc/graph.hpp"

namespace modbc {

/// Betweenness of each module over the quotient graph (ordered pairs).
std::vector<double> module_graph_bc(const Graph& quotient);

/// Which external edges carry module-to-module traffic on quotient shortest
/// routes. A quotient edge is represented by every external edge of minimal
/// weight between its two modules.
struct QuotientRoutes {
  /// For external edge i: the modules, other than the endpoint's own, that
  /// communicate through that endpoint of edge i. Index 0 is edge.u, 1 is edge.v.
  std::vector<std::array<std::vector<ModuleId>, 2>> communicating;

  bool used(std::size_t edge) const {
    return !communicating[edge][0].empty() || !communicating[edge][1].empty();
  }
};

QuotientRoutes quotient_routes(const Graph& g, const ModulePartition& p, const Graph& quotient);

/// Connector counting: EC(v) = |module(v)| * (total size of the distinct
/// modules that communicate through v's external edges).
std::vector<double> node_ec_unweighted(const Graph& g, const ModulePartition& p,
                                       const QuotientRoutes& routes);

/// Per used external edge e at v: |module(v)| * l_e * w(e) / (sum of weights
/// of all external edges at v), summed over e.
std::vector<double> node_ec_weighted(const Graph& g, const ModulePartition& p,
                                     const QuotientRoutes& routes);

struct CoarseReport {
  std::vector<double> module_bc;
  std::vector<double> node_ec;
  CentralityVector ic;
  CentralityVector coarse_gc;
  NodeId coarse_central_node = 0;
  ModuleId coarse_central_module = 0;
};

CoarseReport coarse_global(const Graph& g, const ModulePartition& p, const CentralityVector& lc,
                           bool weighted);

}  // namespace modbc
