#include "modbc/coarse_bc.hpp"

#include <algorithm>
#include <map>

#include "modbc/exact_bc.hpp"

namespace modbc {
namespace {

void add_unique(std::vector<ModuleId>& set, ModuleId m) {
  auto it = std::lower_bound(set.begin(), set.end(), m);
  if (it == set.end() || *it != m) set.insert(it, m);
}

double size_sum(const ModulePartition& p, const std::vector<ModuleId>& modules) {
  double total = 0.0;
  for (ModuleId m : modules) total += static_cast<double>(p.members[m].size());
  return total;
}

}  // namespace

std::vector<double> module_graph_bc(const Graph& quotient) {
  return brandes_bc_serial(quotient).scores;
}

QuotientRoutes quotient_routes(const Graph& g, const ModulePartition& p, const Graph& quotient) {
  (void)g;
  QuotientRoutes routes;
  routes.communicating.resize(p.external_edges.size());

  // Representative external edges of each quotient edge.
  std::map<std::pair<ModuleId, ModuleId>, std::vector<std::uint32_t>> representatives;
  for (std::uint32_t i = 0; i < p.external_edges.size(); ++i) {
    const auto& x = p.external_edges[i];
    const auto key = std::minmax(x.module_u, x.module_v);
    representatives[{key.first, key.second}].push_back(i);
  }
  for (auto& [key, list] : representatives) {
    double lightest = kInfinity;
    for (auto i : list) lightest = std::min(lightest, p.external_edges[i].edge.weight);
    std::erase_if(list, [&](std::uint32_t i) {
      return !same_length(p.external_edges[i].edge.weight, lightest);
    });
  }

  const std::size_t k = quotient.node_count();
  std::vector<char> on_route(k);
  std::vector<ModuleId> stack;
  for (ModuleId a = 0; a < k; ++a) {
    const SsspState state = sssp_dijkstra(quotient, a);
    for (ModuleId b = 0; b < k; ++b) {
      if (b == a || !state.reachable(b)) continue;
      // Walk the predecessor DAG back from b; every DAG arc met lies on a
      // shortest a->b route.
      std::fill(on_route.begin(), on_route.end(), 0);
      stack.assign(1, b);
      on_route[b] = 1;
      while (!stack.empty()) {
        const ModuleId y = stack.back();
        stack.pop_back();
        for (NodeId x : state.preds(y)) {
          const auto key = std::minmax<ModuleId>(x, y);
          for (std::uint32_t i : representatives.at({key.first, key.second})) {
            const auto& ext = p.external_edges[i];
            for (int side = 0; side < 2; ++side) {
              const ModuleId own = side == 0 ? ext.module_u : ext.module_v;
              if (a != own) add_unique(routes.communicating[i][side], a);
              if (b != own) add_unique(routes.communicating[i][side], b);
            }
          }
          if (!on_route[x]) {
            on_route[x] = 1;
            stack.push_back(x);
          }
        }
      }
    }
  }
  return routes;
}

std::vector<double> node_ec_unweighted(const Graph& g, const ModulePartition& p,
                                       const QuotientRoutes& routes) {
  std::vector<double> ec(g.node_count(), 0.0);
  std::vector<ModuleId> reached;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    reached.clear();
    for (std::uint32_t i : p.incident_external[v]) {
      const int side = p.external_edges[i].edge.u == v ? 0 : 1;
      for (ModuleId m : routes.communicating[i][side]) add_unique(reached, m);
    }
    if (reached.empty()) continue;
    const double k = static_cast<double>(p.members[g.module_of(v)].size());
    ec[v] = k * size_sum(p, reached);
  }
  return ec;
}

std::vector<double> node_ec_weighted(const Graph& g, const ModulePartition& p,
                                     const QuotientRoutes& routes) {
  std::vector<double> ec(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto& incident = p.incident_external[v];
    if (incident.empty()) continue;
    double total_weight = 0.0;
    for (std::uint32_t i : incident) total_weight += p.external_edges[i].edge.weight;
    const double k = static_cast<double>(p.members[g.module_of(v)].size());
    for (std::uint32_t i : incident) {
      const int side = p.external_edges[i].edge.u == v ? 0 : 1;
      const auto& modules = routes.communicating[i][side];
      if (modules.empty()) continue;
      ec[v] += k * size_sum(p, modules) * p.external_edges[i].edge.weight / total_weight;
    }
  }
  return ec;
}

CoarseReport coarse_global(const Graph& g, const ModulePartition& p, const CentralityVector& lc,
                           bool weighted) {
  CoarseReport report;
  const Graph quotient = quotient_graph(p, g);
  report.module_bc = module_graph_bc(quotient);
  const QuotientRoutes routes = quotient_routes(g, p, quotient);
  report.node_ec = weighted ? node_ec_weighted(g, p, routes) : node_ec_unweighted(g, p, routes);

  report.ic = {Measure::IC, lc.scores};
  report.coarse_gc = {Measure::GC, lc.scores};
  for (std::size_t v = 0; v < g.node_count(); ++v) report.coarse_gc.scores[v] += report.node_ec[v];

  std::vector<double> per_module(p.module_count, 0.0);
  for (ModuleId m = 0; m < p.module_count; ++m) {
    for (NodeId x : p.external_vertices[m]) per_module[m] += report.node_ec[x];
  }
  report.coarse_central_module = static_cast<ModuleId>(argmax_smallest(per_module));
  report.coarse_central_node = static_cast<NodeId>(argmax_smallest(report.coarse_gc.scores));
  return report;
}

}  // namespace modbc
