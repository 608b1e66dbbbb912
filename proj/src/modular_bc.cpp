#include "modbc/modular_bc.hpp"

#include <queue>

#include "modbc/exact_bc.hpp"
#include "modbc/parallel.hpp"

namespace modbc {
namespace {

LocalDag to_local_dag(const SsspState& s) {
  const std::size_t n = s.dist.size();
  LocalDag dag;
  dag.dist = s.dist;
  dag.sigma = s.sigma;
  dag.order.assign(s.settled_order.begin(), s.settled_order.end());
  dag.pred_begin.resize(n + 1);
  dag.pred_begin[0] = 0;
  for (std::size_t v = 0; v < n; ++v) dag.pred_begin[v + 1] = dag.pred_begin[v] + s.pred_count[v];
  dag.preds.reserve(dag.pred_begin[n]);
  for (std::size_t v = 0; v < n; ++v) {
    for (NodeId p : s.preds(static_cast<NodeId>(v))) dag.preds.push_back(p);
  }
  return dag;
}

/// Flattened index of external vertices plus the external adjacency among
/// them. Built once per call and shared read-only by every source.
struct SkeletonLayout {
  std::vector<NodeId> node;           // ext id -> global node
  std::vector<ModuleId> module;       // ext id -> module
  std::vector<std::uint32_t> pos;     // ext id -> position in summary.external
  std::vector<std::uint32_t> module_begin;  // module -> first ext id (size k + 1)
  std::vector<std::uint32_t> adj_begin;
  std::vector<std::pair<std::uint32_t, double>> adj;  // (other ext id, weight)
  std::vector<std::size_t> weight_offset;  // ext id -> slice in per-root weights
  std::size_t weight_size = 0;
  std::size_t max_module = 0;

  std::size_t count() const { return node.size(); }
};

SkeletonLayout make_layout(const ModulePartition& p, std::span<const ModuleSummary> summaries) {
  SkeletonLayout L;
  const std::size_t k = p.module_count;
  std::vector<std::int64_t> ext_id(p.local_index.size(), -1);
  L.module_begin.resize(k + 1, 0);
  for (ModuleId m = 0; m < k; ++m) {
    L.module_begin[m] = static_cast<std::uint32_t>(L.node.size());
    L.max_module = std::max(L.max_module, summaries[m].size());
    for (std::uint32_t j = 0; j < summaries[m].external.size(); ++j) {
      const NodeId x = summaries[m].external[j];
      ext_id[x] = static_cast<std::int64_t>(L.node.size());
      L.node.push_back(x);
      L.module.push_back(m);
      L.pos.push_back(j);
      L.weight_offset.push_back(L.weight_size);
      L.weight_size += summaries[m].size();
    }
  }
  L.module_begin[k] = static_cast<std::uint32_t>(L.node.size());

  L.adj_begin.assign(L.count() + 1, 0);
  for (std::size_t e = 0; e < L.count(); ++e) {
    L.adj_begin[e + 1] = L.adj_begin[e] + static_cast<std::uint32_t>(p.incident_external[L.node[e]].size());
  }
  L.adj.resize(L.adj_begin.back());
  for (std::size_t e = 0; e < L.count(); ++e) {
    const NodeId x = L.node[e];
    std::size_t slot = L.adj_begin[e];
    for (std::uint32_t idx : p.incident_external[x]) {
      const Edge& edge = p.external_edges[idx].edge;
      const NodeId other = edge.u == x ? edge.v : edge.u;
      L.adj[slot++] = {static_cast<std::uint32_t>(ext_id[other]), edge.weight};
    }
  }
  return L;
}

struct Arc {
  std::uint32_t from;
  double multiplicity;
};

/// Per-thread scratch for one source at a time.
struct CrossWorkspace {
  std::vector<double> dist, sigma, delta;
  std::vector<char> settled;
  std::vector<std::uint32_t> order;
  std::vector<std::vector<Arc>> preds;
  std::vector<double> terminal;      // per ext id: flow ending at that node
  std::vector<double> root_weight;   // per ext id slice over its module
  std::vector<char> root_active;
  std::vector<std::uint32_t> active_roots;
  std::vector<double> source_weight;
  std::vector<double> acc;
  std::vector<std::pair<double, std::uint32_t>> heap;

  CrossWorkspace(const SkeletonLayout& L) {
    const std::size_t vertices = 2 * L.count() + 1;
    dist.resize(vertices);
    sigma.resize(vertices);
    delta.resize(vertices);
    settled.resize(vertices);
    preds.resize(vertices);
    terminal.assign(L.count(), 0.0);
    root_weight.assign(L.weight_size, 0.0);
    root_active.assign(L.count(), 0);
    source_weight.assign(L.max_module, 0.0);
    acc.resize(L.max_module);
  }
};

constexpr std::uint32_t arrival(std::uint32_t e) { return 2 * e; }
constexpr std::uint32_t departure(std::uint32_t e) { return 2 * e + 1; }

/// Reverse accumulation over an intra-module DAG where member w receives
/// `weight[w]` units of flow ending (or exiting) there. Interior nodes are
/// credited with the flow passing through them; the root is skipped.
void push_down(const LocalDag& dag, std::span<const double> weight, const ModuleSummary& module,
               std::vector<double>& acc, std::span<double> ec) {
  const std::size_t m = module.size();
  std::fill(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
  for (std::size_t i = dag.order.size(); i-- > 1;) {
    const std::uint32_t w = dag.order[i];
    const double through = weight[w] + acc[w];
    if (through == 0.0) continue;
    const double coeff = through / dag.sigma[w];
    for (std::uint32_t p : dag.preds_of(w)) acc[p] += dag.sigma[p] * coeff;
  }
  const std::uint32_t root = dag.order.front();
  for (std::size_t z = 0; z < m; ++z) {
    if (z != root && acc[z] != 0.0) ec[module.members[z]] += acc[z];
  }
}

void cross_from_source(const Graph& g, const ModulePartition& p,
                       std::span<const ModuleSummary> summaries, const SkeletonLayout& L,
                       NodeId s, CrossWorkspace& ws, std::span<double> ec) {
  const std::size_t X = L.count();
  const std::uint32_t S = static_cast<std::uint32_t>(2 * X);
  const ModuleId ms = g.module_of(s);
  const ModuleSummary& home = summaries[ms];
  const LocalDag& source_dag = home.dags[p.local_index[s]];

  std::fill(ws.dist.begin(), ws.dist.end(), kInfinity);
  std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
  std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
  std::fill(ws.settled.begin(), ws.settled.end(), 0);
  std::fill(ws.terminal.begin(), ws.terminal.end(), 0.0);
  for (auto& list : ws.preds) list.clear();
  ws.order.clear();
  ws.heap.clear();

  auto heap_push = [&](double d, std::uint32_t v) {
    ws.heap.emplace_back(d, v);
    std::push_heap(ws.heap.begin(), ws.heap.end(), std::greater<>{});
  };
  auto relax = [&](std::uint32_t from, std::uint32_t to, double length, double multiplicity) {
    if (ws.settled[to]) return;
    const double candidate = ws.dist[from] + length;
    if (ws.dist[to] != kInfinity && same_length(candidate, ws.dist[to])) {
      ws.sigma[to] += ws.sigma[from] * multiplicity;
      ws.preds[to].push_back({from, multiplicity});
    } else if (candidate < ws.dist[to]) {
      ws.dist[to] = candidate;
      ws.sigma[to] = ws.sigma[from] * multiplicity;
      ws.preds[to].assign(1, {from, multiplicity});
      heap_push(candidate, to);
    }
  };

  ws.dist[S] = 0.0;
  ws.sigma[S] = 1.0;
  heap_push(0.0, S);

  // Ties at equal distance pop by vertex id, so arrival(e) settles before
  // departure(e) and the zero-length arc between them stays topological.
  while (!ws.heap.empty()) {
    std::pop_heap(ws.heap.begin(), ws.heap.end(), std::greater<>{});
    const auto [d, u] = ws.heap.back();
    ws.heap.pop_back();
    if (ws.settled[u] || d != ws.dist[u]) continue;
    ws.settled[u] = 1;
    ws.order.push_back(u);

    if (u == S) {
      for (std::uint32_t j = 0; j < home.external.size(); ++j) {
        const std::uint32_t x = home.external_local[j];
        if (source_dag.dist[x] == kInfinity) continue;
        relax(S, departure(L.module_begin[ms] + j), source_dag.dist[x], source_dag.sigma[x]);
      }
    } else if (u % 2 == 0) {
      const std::uint32_t e = u / 2;
      const ModuleId m = L.module[e];
      const ModuleSummary& mod = summaries[m];
      const LocalDag& dag = mod.local_dag(L.pos[e]);
      for (std::uint32_t j = 0; j < mod.external.size(); ++j) {
        const std::uint32_t y = mod.external_local[j];
        if (dag.dist[y] == kInfinity) continue;
        relax(u, departure(L.module_begin[m] + j), dag.dist[y], dag.sigma[y]);
      }
    } else {
      const std::uint32_t e = u / 2;
      for (std::uint32_t a = L.adj_begin[e]; a < L.adj_begin[e + 1]; ++a) {
        relax(u, arrival(L.adj[a].first), L.adj[a].second, 1.0);
      }
    }
  }

  // Targets: every node outside the source module, entered through the
  // cheapest arrival vertex (or vertices, on ties) of its module.
  for (ModuleId mt = 0; mt < p.module_count; ++mt) {
    if (mt == ms) continue;
    const ModuleSummary& mod = summaries[mt];
    const std::uint32_t base = L.module_begin[mt];
    const std::size_t ext_count = mod.external.size();
    for (std::uint32_t t = 0; t < mod.size(); ++t) {
      double best = kInfinity;
      for (std::uint32_t j = 0; j < ext_count; ++j) {
        const double a = ws.dist[arrival(base + j)];
        const double inner = mod.ext_dist(t, j);
        if (a == kInfinity || inner == kInfinity) continue;
        const double candidate = a + inner;
        if (best == kInfinity || (candidate < best && !same_length(candidate, best))) best = candidate;
      }
      if (best == kInfinity) continue;
      double paths = 0.0;
      for (std::uint32_t j = 0; j < ext_count; ++j) {
        const double a = ws.dist[arrival(base + j)];
        const double inner = mod.ext_dist(t, j);
        if (a == kInfinity || inner == kInfinity || !same_length(a + inner, best)) continue;
        paths += ws.sigma[arrival(base + j)] * mod.ext_sigma(t, j);
      }
      for (std::uint32_t j = 0; j < ext_count; ++j) {
        const std::uint32_t e = base + j;
        const double a = ws.dist[arrival(e)];
        const double inner = mod.ext_dist(t, j);
        if (a == kInfinity || inner == kInfinity || !same_length(a + inner, best)) continue;
        const double flow = ws.sigma[arrival(e)] * mod.ext_sigma(t, j) / paths;
        if (mod.external_local[j] == t) {
          ws.terminal[e] += flow;
        } else {
          ws.delta[arrival(e)] += flow;
          ws.root_weight[L.weight_offset[e] + t] += flow;
          if (!ws.root_active[e]) {
            ws.root_active[e] = 1;
            ws.active_roots.push_back(e);
          }
        }
      }
    }
  }

  // Dependency accumulation on the skeleton.
  for (std::size_t i = ws.order.size(); i-- > 1;) {
    const std::uint32_t w = ws.order[i];
    const std::uint32_t e = w / 2;
    const bool is_arrival = (w % 2 == 0);
    // delta of an arrival vertex excludes paths that end at that very node;
    // those still travel the skeleton arcs into it.
    double carried = ws.delta[w];
    if (is_arrival) {
      ec[L.node[e]] += ws.delta[w];
      carried += ws.terminal[e];
    }
    if (carried == 0.0) continue;
    const double coeff = carried / ws.sigma[w];
    for (const Arc& arc : ws.preds[w]) {
      const double flow = ws.sigma[arc.from] * arc.multiplicity * coeff;
      ws.delta[arc.from] += flow;
      if (is_arrival) continue;  // external edge: credited at the arrival vertex
      if (arc.from == S) {
        if (L.node[e] == s) continue;
        ec[L.node[e]] += flow;
        ws.source_weight[home.external_local[L.pos[e]]] += flow;
      } else {
        const std::uint32_t root = arc.from / 2;
        if (root == e) continue;  // zero-length hand-over at the same node
        ec[L.node[e]] += flow;
        ws.root_weight[L.weight_offset[root] + summaries[L.module[e]].external_local[L.pos[e]]] += flow;
        if (!ws.root_active[root]) {
          ws.root_active[root] = 1;
          ws.active_roots.push_back(root);
        }
      }
    }
  }

  // Push segment flows down into the intra-module DAGs.
  push_down(source_dag, std::span<const double>(ws.source_weight.data(), home.size()), home, ws.acc, ec);
  std::fill(ws.source_weight.begin(), ws.source_weight.begin() + static_cast<std::ptrdiff_t>(home.size()), 0.0);

  for (std::uint32_t e : ws.active_roots) {
    const ModuleSummary& mod = summaries[L.module[e]];
    double* weights = ws.root_weight.data() + L.weight_offset[e];
    push_down(mod.local_dag(L.pos[e]), std::span<const double>(weights, mod.size()), mod, ws.acc, ec);
    std::fill(weights, weights + mod.size(), 0.0);
    ws.root_active[e] = 0;
  }
  ws.active_roots.clear();
}

}  // namespace

LocalCentrality local_centrality(const Graph& g, const ModulePartition& p, int threads) {
  const std::size_t k = p.module_count;
  LocalCentrality out;
  out.lc = {Measure::LC, std::vector<double>(g.node_count(), 0.0)};
  out.summaries.resize(k);

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_threads(threads))
  for (std::ptrdiff_t mi = 0; mi < static_cast<std::ptrdiff_t>(k); ++mi) {
    const auto m = static_cast<ModuleId>(mi);
    const Graph sub = module_subgraph(p, m);
    ModuleSummary& sum = out.summaries[m];
    sum.module = m;
    sum.members = p.members[m];
    sum.external = p.external_vertices[m];
    for (NodeId x : sum.external) sum.external_local.push_back(p.local_index[x]);

    const std::size_t size = sum.members.size();
    std::vector<double> local(size, 0.0);
    sum.dags.reserve(size);
    SsspState state;
    for (NodeId src = 0; src < size; ++src) {
      sssp_dijkstra_into(sub, src, {}, state);
      accumulate_dependencies(state);
      for (NodeId w : state.settled_order) {
        if (w != src) local[w] += state.delta[w];
      }
      sum.dags.push_back(to_local_dag(state));
    }
    for (std::size_t i = 0; i < size; ++i) out.lc.scores[sum.members[i]] = local[i];

    const std::size_t ext = sum.external.size();
    sum.to_ext_dist.resize(size * ext);
    sum.to_ext_sigma.resize(size * ext);
    for (std::size_t j = 0; j < ext; ++j) {
      const LocalDag& dag = sum.dags[sum.external_local[j]];
      for (std::size_t i = 0; i < size; ++i) {
        sum.to_ext_dist[i * ext + j] = dag.dist[i];
        sum.to_ext_sigma[i * ext + j] = dag.sigma[i];
      }
    }
  }
  return out;
}

std::vector<EgressChoice> egress_paths(const ModulePartition& p,
                                       std::span<const ModuleSummary> summaries,
                                       const Graph& g) {
  std::vector<EgressChoice> out(g.node_count());
  for (const ModuleSummary& mod : summaries) {
    for (std::uint32_t i = 0; i < mod.size(); ++i) {
      EgressChoice choice;
      choice.node = mod.members[i];
      for (std::size_t j = 0; j < mod.external.size(); ++j) {
        const double inner = mod.ext_dist(i, j);
        if (inner == kInfinity) continue;
        for (std::uint32_t idx : p.incident_external[mod.external[j]]) {
          const double cost = inner + p.external_edges[idx].edge.weight;
          if (cost < choice.egress_cost) {
            choice.egress_cost = cost;
            choice.egress_edge = idx;
          }
        }
      }
      out[choice.node] = choice;
    }
  }
  return out;
}

CentralityVector cross_module_dependencies(const Graph& g, const ModulePartition& p,
                                           std::span<const ModuleSummary> summaries,
                                           int threads) {
  const SkeletonLayout layout = make_layout(p, summaries);
  const std::size_t n = g.node_count();
  auto scores = detail::blocked_sum(
      n, n, threads, [&] { return CrossWorkspace(layout); },
      [&](CrossWorkspace& ws, std::size_t s, std::span<double> acc) {
        cross_from_source(g, p, summaries, layout, static_cast<NodeId>(s), ws, acc);
      });
  return {Measure::EC, std::move(scores)};
}

CentralityVector cross_module_dependencies_serial(const Graph& g, const ModulePartition& p,
                                                  std::span<const ModuleSummary> summaries) {
  const SkeletonLayout layout = make_layout(p, summaries);
  std::vector<double> scores(g.node_count(), 0.0);
  CrossWorkspace ws(layout);
  for (NodeId s = 0; s < g.node_count(); ++s) {
    cross_from_source(g, p, summaries, layout, s, ws, scores);
  }
  return {Measure::EC, std::move(scores)};
}

PreconditionCheck check_locality(const Graph& g, const ModulePartition& p,
                                 std::size_t max_sources) {
  (void)p;
  const std::size_t n = g.node_count();
  PreconditionCheck result;
  if (n == 0) return result;
  const std::size_t sources = (max_sources == 0 || max_sources >= n) ? n : max_sources;

  // Two layers per node: layer 0 has only used internal edges of the source
  // module, layer 1 has crossed at least one external edge.
  std::vector<double> dist(2 * n);
  std::vector<char> done(2 * n);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;

  for (std::size_t i = 0; i < sources; ++i) {
    const auto s = static_cast<NodeId>(i * n / sources);
    const ModuleId ms = g.module_of(s);
    std::fill(dist.begin(), dist.end(), kInfinity);
    std::fill(done.begin(), done.end(), 0);
    dist[2 * s] = 0.0;
    heap.push({0.0, 2 * std::size_t{s}});
    while (!heap.empty()) {
      const auto [d, state] = heap.top();
      heap.pop();
      if (done[state] || d != dist[state]) continue;
      done[state] = 1;
      const auto u = static_cast<NodeId>(state / 2);
      const std::size_t layer = state % 2;
      for (const Neighbor& nb : g.neighbors(u)) {
        const bool crosses = g.module_of(nb.node) != g.module_of(u);
        const std::size_t next_layer = (layer == 1 || crosses) ? 1 : 0;
        const std::size_t next = 2 * std::size_t{nb.node} + next_layer;
        if (d + nb.weight < dist[next]) {
          dist[next] = d + nb.weight;
          heap.push({dist[next], next});
        }
      }
    }
    ++result.sources_checked;
    for (NodeId t = 0; t < n; ++t) {
      if (t == s || g.module_of(t) != ms) continue;
      const double inside = dist[2 * t];
      const double outside = dist[2 * t + 1];
      if (outside == kInfinity) continue;
      if (inside == kInfinity || outside < inside || same_length(outside, inside)) {
        result.holds = false;
        result.source = s;
        result.target = t;
        result.inside = inside;
        result.outside = outside;
        return result;
      }
    }
  }
  return result;
}

GlobalCentralityReport global_centrality(const Graph& g, const ModulePartition& p,
                                         const ModularOptions& options) {
  if (options.validate) {
    const auto check = check_locality(g, p, options.validate_sources);
    if (!check.holds) {
      throw GraphError(GraphErrc::PreconditionViolated,
                       "nodes " + std::to_string(check.source) + " and " +
                           std::to_string(check.target) + " share module " +
                           std::to_string(g.module_of(check.source)) +
                           " but a path leaving the module is at least as short (" +
                           std::to_string(check.outside) + " vs " +
                           std::to_string(check.inside) + ")");
    }
  }

  GlobalCentralityReport report;
  auto local = local_centrality(g, p, options.threads);
  report.egress = egress_paths(p, local.summaries, g);
  report.ec = cross_module_dependencies(g, p, local.summaries, options.threads);
  report.lc = std::move(local.lc);

  const std::size_t n = g.node_count();
  report.gc = {Measure::GC, std::vector<double>(n)};
  for (std::size_t v = 0; v < n; ++v) report.gc.scores[v] = report.lc.scores[v] + report.ec.scores[v];

  report.ec_module.assign(p.module_count, 0.0);
  for (ModuleId m = 0; m < p.module_count; ++m) {
    for (NodeId x : p.external_vertices[m]) report.ec_module[m] += report.ec.scores[x];
  }
  report.global_central_node = static_cast<NodeId>(argmax_smallest(report.gc.scores));
  report.global_central_module = static_cast<ModuleId>(argmax_smallest(report.ec_module));
  return report;
}

}  // namespace modbc
