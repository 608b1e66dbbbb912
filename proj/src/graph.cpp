#include "modbc/graph.hpp"

#include <map>
#include <string>

namespace modbc {

const char* to_string(GraphErrc code) {
  switch (code) {
    case GraphErrc::DuplicateEdge: return "DuplicateEdge";
    case GraphErrc::SelfLoop: return "SelfLoop";
    case GraphErrc::NonPositiveWeight: return "NonPositiveWeight";
    case GraphErrc::DanglingNodeId: return "DanglingNodeId";
    case GraphErrc::NonContiguousModules: return "NonContiguousModules";
    case GraphErrc::SyntaxError: return "SyntaxError";
    case GraphErrc::GraphTooLarge: return "GraphTooLarge";
    case GraphErrc::InvalidConfig: return "InvalidConfig";
    case GraphErrc::PreconditionViolated: return "PreconditionViolated";
  }
  return "Unknown";
}

const char* to_string(Measure m) {
  switch (m) {
    case Measure::BC: return "bc";
    case Measure::LC: return "lc";
    case Measure::EC: return "ec";
    case Measure::IC: return "ic";
    case Measure::GC: return "gc";
  }
  return "?";
}

Graph build_graph(std::size_t nodes, std::span<const Edge> edges,
                  std::span<const ModuleId> module_of) {
  if (module_of.size() != nodes) {
    throw GraphError(GraphErrc::DanglingNodeId,
                     "module assignment covers " + std::to_string(module_of.size()) +
                         " nodes, expected " + std::to_string(nodes));
  }

  ModuleId max_module = 0;
  for (ModuleId m : module_of) max_module = std::max(max_module, m);
  std::size_t module_count = nodes == 0 ? 0 : std::size_t{max_module} + 1;
  std::vector<char> seen(module_count, 0);
  for (ModuleId m : module_of) seen[m] = 1;
  for (std::size_t m = 0; m < module_count; ++m) {
    if (!seen[m]) {
      throw GraphError(GraphErrc::NonContiguousModules,
                       "module " + std::to_string(m) + " has no nodes");
    }
  }

  Graph g;
  g.edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= nodes || e.v >= nodes) {
      throw GraphError(GraphErrc::DanglingNodeId,
                       "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") references a node outside 0.." + std::to_string(nodes));
    }
    if (e.u == e.v) {
      throw GraphError(GraphErrc::SelfLoop, "self-loop on node " + std::to_string(e.u));
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw GraphError(GraphErrc::NonPositiveWeight,
                       "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") has weight " + std::to_string(e.weight));
    }
    g.edges_.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
  }
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < g.edges_.size(); ++i) {
    if (g.edges_[i].u == g.edges_[i - 1].u && g.edges_[i].v == g.edges_[i - 1].v) {
      throw GraphError(GraphErrc::DuplicateEdge,
                       "duplicate edge (" + std::to_string(g.edges_[i].u) + "," +
                           std::to_string(g.edges_[i].v) + ")");
    }
  }

  g.module_of_.assign(module_of.begin(), module_of.end());
  g.module_count_ = module_count;

  std::vector<std::size_t> degree(nodes, 0);
  for (const Edge& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(nodes + 1, 0);
  for (std::size_t v = 0; v < nodes; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[nodes]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t v = 0; v < nodes; ++v) {
    std::sort(g.adjacency_.begin() + g.offsets_[v], g.adjacency_.begin() + g.offsets_[v + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  return g;
}

ModulePartition classify_edges(const Graph& g) {
  ModulePartition p;
  const std::size_t n = g.node_count();
  p.module_count = g.module_count();
  p.members.resize(p.module_count);
  p.local_index.resize(n);
  p.internal_edges.resize(p.module_count);
  p.external_vertices.resize(p.module_count);
  p.incident_external.resize(n);

  for (NodeId v = 0; v < n; ++v) {
    auto& list = p.members[g.module_of(v)];
    p.local_index[v] = static_cast<std::uint32_t>(list.size());
    list.push_back(v);
  }

  for (const Edge& e : g.edges()) {
    const ModuleId mu = g.module_of(e.u);
    const ModuleId mv = g.module_of(e.v);
    if (mu == mv) {
      p.internal_edges[mu].push_back(e);
    } else {
      const auto idx = static_cast<std::uint32_t>(p.external_edges.size());
      p.external_edges.push_back({e, mu, mv});
      p.incident_external[e.u].push_back(idx);
      p.incident_external[e.v].push_back(idx);
    }
  }

  for (NodeId v = 0; v < n; ++v) {
    if (!p.incident_external[v].empty()) p.external_vertices[g.module_of(v)].push_back(v);
  }
  return p;
}

Graph quotient_graph(const ModulePartition& p, const Graph& g) {
  (void)g;
  std::map<std::pair<ModuleId, ModuleId>, double> lightest;
  for (const ExternalEdge& x : p.external_edges) {
    const auto key = std::minmax(x.module_u, x.module_v);
    auto [it, inserted] = lightest.try_emplace({key.first, key.second}, x.edge.weight);
    if (!inserted) it->second = std::min(it->second, x.edge.weight);
  }
  std::vector<Edge> edges;
  edges.reserve(lightest.size());
  for (const auto& [pair, w] : lightest) edges.push_back({pair.first, pair.second, w});
  std::vector<ModuleId> modules(p.module_count, 0);
  return build_graph(p.module_count, edges, modules);
}

Graph module_subgraph(const ModulePartition& p, ModuleId module) {
  const auto& members = p.members[module];
  std::vector<Edge> edges;
  edges.reserve(p.internal_edges[module].size());
  for (const Edge& e : p.internal_edges[module]) {
    edges.push_back({p.local_index[e.u], p.local_index[e.v], e.weight});
  }
  std::vector<ModuleId> modules(members.size(), 0);
  return build_graph(members.size(), edges, modules);
}

std::size_t argmax_smallest(std::span<const double> scores) {
  if (scores.empty()) return 0;
  double best = scores[0];
  for (double s : scores) best = std::max(best, s);
  const double slack = 1e-9 * std::max(1.0, std::abs(best));
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] >= best - slack) return i;
  }
  return 0;
}

}  // namespace modbc
