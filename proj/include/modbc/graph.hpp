#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace modbc {

using NodeId = std::uint32_t;
using ModuleId = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative tolerance applied when deciding whether two path lengths tie.
/// Integer weights produce exact sums, so this only matters for decimal input.
inline constexpr double kTieTolerance = 1e-12;

inline bool same_length(double a, double b) {
  if (a == b) return true;
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= kTieTolerance * scale;
}

enum class GraphErrc {
  DuplicateEdge,
  SelfLoop,
  NonPositiveWeight,
  DanglingNodeId,
  NonContiguousModules,
  SyntaxError,
  GraphTooLarge,
  InvalidConfig,
  PreconditionViolated,
};

const char* to_string(GraphErrc code);

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  GraphErrc code() const noexcept { return code_; }

 private:
  GraphErrc code_;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node;
  double weight;
};

/// Immutable weighted undirected graph in CSR form with a module label per node.
/// Adjacency lists are sorted by neighbor id, so two graphs built from the same
/// edge set compare equal regardless of input order.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const noexcept { return module_of_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t module_count() const noexcept { return module_count_; }

  std::span<const Neighbor> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  /// Offset of v's adjacency block inside the flat adjacency array.
  std::size_t adjacency_offset(NodeId v) const { return offsets_[v]; }
  std::size_t adjacency_size() const noexcept { return adjacency_.size(); }

  ModuleId module_of(NodeId v) const { return module_of_[v]; }
  std::span<const ModuleId> modules() const { return module_of_; }

  /// Canonical edge list: u < v, sorted lexicographically.
  std::span<const Edge> edges() const { return edges_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.module_of_ == b.module_of_ && a.edges_ == b.edges_;
  }

 private:
  friend Graph build_graph(std::size_t, std::span<const Edge>, std::span<const ModuleId>);

  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::vector<ModuleId> module_of_;
  std::vector<Edge> edges_;
  std::size_t module_count_ = 0;
};

/// Validates and builds a graph. Throws GraphError on duplicate edges,
/// self-loops, non-positive weights, out-of-range endpoints or module
/// labels that do not cover 0..k-1.
Graph build_graph(std::size_t nodes, std::span<const Edge> edges,
                  std::span<const ModuleId> module_of);

struct ExternalEdge {
  Edge edge;
  ModuleId module_u;
  ModuleId module_v;
};

struct ModulePartition {
  std::size_t module_count = 0;
  std::vector<std::vector<NodeId>> members;
  /// Position of each node inside members[module_of(node)].
  std::vector<std::uint32_t> local_index;
  std::vector<std::vector<Edge>> internal_edges;
  std::vector<ExternalEdge> external_edges;
  /// Sorted ids of the nodes of each module with at least one external edge.
  std::vector<std::vector<NodeId>> external_vertices;
  /// Indices into external_edges incident to each node.
  std::vector<std::vector<std::uint32_t>> incident_external;

  bool is_external_vertex(NodeId v) const { return !incident_external[v].empty(); }
};

ModulePartition classify_edges(const Graph& g);

/// Module-level graph: one node per module, one edge per connected module
/// pair weighted by the lightest external edge between them. Every node of
/// the result is in module 0.
Graph quotient_graph(const ModulePartition& p, const Graph& g);

/// Induced subgraph on one module, using internal edges only. Node i of the
/// result is p.members[module][i].
Graph module_subgraph(const ModulePartition& p, ModuleId module);

enum class Measure { BC, LC, EC, IC, GC };

const char* to_string(Measure m);

struct CentralityVector {
  Measure measure = Measure::BC;
  std::vector<double> scores;

  std::size_t size() const { return scores.size(); }
  double operator[](std::size_t i) const { return scores[i]; }
};

/// Index of the maximum score. Scores within 1e-9 (relative) of the maximum
/// count as tied and the smallest index wins.
std::size_t argmax_smallest(std::span<const double> scores);

}  // namespace modbc
