#include <gtest/gtest.h>

#include "modbc/coarse_bc.hpp"
#include "modbc/exact_bc.hpp"
#include "modbc/modular_bc.hpp"
#include "test_support.hpp"

namespace modbc {
namespace {

using testing::make_graph;

struct Coarse {
  ModulePartition p;
  QuotientRoutes routes;
  std::vector<double> unweighted;
  std::vector<double> weighted;
};

Coarse coarse(const Graph& g) {
  Coarse c;
  c.p = classify_edges(g);
  const Graph q = quotient_graph(c.p, g);
  c.routes = quotient_routes(g, c.p, q);
  c.unweighted = node_ec_unweighted(g, c.p, c.routes);
  c.weighted = node_ec_weighted(g, c.p, c.routes);
  return c;
}

TEST(ModuleGraphBc, SmallQuotients) {
  EXPECT_EQ(module_graph_bc(testing::path_graph(3)), (std::vector<double>{0, 2, 0}));
  EXPECT_EQ(module_graph_bc(testing::path_graph(2)), (std::vector<double>{0, 0}));
}

TEST(ModuleGraphBc, MatchesBruteForceOnRandomQuotients) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Graph base = testing::random_small_graph(seed, 10, 30, 8);
    const Graph q = quotient_graph(classify_edges(base), base);
    EXPECT_LE(testing::max_abs_diff(module_graph_bc(q), brute_force_bc(q).scores), 1e-9) << "seed " << seed;
  }
}

TEST(NodeEc, TwoTriangles) {
  const auto c = coarse(testing::two_triangles());
  EXPECT_EQ(c.unweighted, (std::vector<double>{0, 0, 9, 9, 0, 0}));
  EXPECT_EQ(c.weighted, c.unweighted);
}

TEST(NodeEc, SingleModuleIsZero) {
  const auto c = coarse(testing::path_graph(5));
  EXPECT_EQ(c.unweighted, std::vector<double>(5, 0.0));
  EXPECT_EQ(c.weighted, std::vector<double>(5, 0.0));
}

TEST(NodeEc, PathOfThreeModules) {
  // M0 = {0,1,2} - M1 = {3,4,5} - M2 = {6,7,8}; M1 enters at 3 and leaves at 5.
  const std::size_t m = 3;
  const Graph g = make_graph(9,
                             {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}, {6, 7, 1}, {7, 8, 1},
                              {2, 3, 5}, {5, 6, 5}},
                             {0, 0, 0, 1, 1, 1, 2, 2, 2});
  const auto c = coarse(g);
  EXPECT_EQ(c.unweighted[3], double(m * 2 * m));
  EXPECT_EQ(c.unweighted[5], double(m * 2 * m));
  // End modules talk to both others through their single connector.
  EXPECT_EQ(c.unweighted[2], double(m * 2 * m));
  EXPECT_EQ(c.unweighted[4], 0.0);
}

TEST(NodeEc, WeightedSplitsByEdgeWeight) {
  // Node 0 (module of 3) has used external edges of weight 10 and 30 into
  // two modules of 5 nodes each. The direct 7-8 link keeps traffic between
  // those two modules away from node 0.
  std::vector<Edge> edges{{0, 1, 1}, {1, 2, 1}};
  std::vector<ModuleId> modules{0, 0, 0};
  for (NodeId base : {3u, 8u}) {
    for (NodeId i = 0; i < 4; ++i) edges.push_back({base + i, base + i + 1, 1});
    modules.insert(modules.end(), 5, modules.back() + 1);
  }
  edges.push_back({0, 3, 10});
  edges.push_back({0, 8, 30});
  edges.push_back({7, 8, 35});
  const auto c = coarse(make_graph(13, edges, modules));
  EXPECT_DOUBLE_EQ(c.weighted[0], 3.0 * 5 * 10 / 40 + 3.0 * 5 * 30 / 40);
  EXPECT_EQ(c.weighted[0], 15.0);
  EXPECT_EQ(c.unweighted[0], 3.0 * 10);
}

TEST(NodeEc, SingleUsedEdgePerNodeMakesVariantsAgree) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenConfig cfg;
    cfg.n = 60;
    cfg.seed = seed;
    cfg.external_edges_per_module_pair = 1.0;
    const Graph g = generate(cfg).graph;
    const auto c = coarse(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (c.p.incident_external[v].size() != 1) continue;
      const auto e = c.p.incident_external[v][0];
      const int side = c.p.external_edges[e].edge.u == v ? 0 : 1;
      double l = 0.0;
      for (ModuleId m : c.routes.communicating[e][side]) l += static_cast<double>(c.p.members[m].size());
      EXPECT_DOUBLE_EQ(c.weighted[v], static_cast<double>(c.p.members[g.module_of(v)].size()) * l);
      EXPECT_DOUBLE_EQ(c.weighted[v], c.unweighted[v]);
    }
  }
}

TEST(NodeEc, SupportedOnlyOnUsedConnectors) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenConfig cfg;
    cfg.n = 80;
    cfg.seed = seed;
    cfg.extra_module_links = 4;
    const Graph g = generate(cfg).graph;
    const auto c = coarse(g);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      bool used = false;
      for (auto e : c.p.incident_external[v]) used = used || c.routes.used(e);
      if (!used) {
        EXPECT_EQ(c.unweighted[v], 0.0);
        EXPECT_EQ(c.weighted[v], 0.0);
      }
    }
  }
}

TEST(CoarseGlobal, TwoTriangles) {
  const Graph g = testing::two_triangles();
  const ModulePartition p = classify_edges(g);
  const auto lc = local_centrality(g, p).lc;
  const auto r = coarse_global(g, p, lc, false);
  EXPECT_EQ(r.coarse_gc.scores, (std::vector<double>{0, 0, 9, 9, 0, 0}));
  EXPECT_EQ(r.coarse_central_node, 2u);
  EXPECT_EQ(r.coarse_central_module, 0u);
}

TEST(CoarseGlobal, SingleModuleIsLocalCentrality) {
  const Graph g = testing::random_small_graph(3, 12, 12);
  const ModulePartition p = classify_edges(g);
  const auto lc = local_centrality(g, p).lc;
  EXPECT_EQ(coarse_global(g, p, lc, true).coarse_gc.scores, lc.scores);
}

TEST(CoarseGlobal, SumIsExact) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GenConfig cfg;
    cfg.n = 70;
    cfg.seed = seed;
    cfg.extra_module_links = 2;
    const Graph g = generate(cfg).graph;
    const ModulePartition p = classify_edges(g);
    const auto lc = local_centrality(g, p).lc;
    for (bool weighted : {false, true}) {
      const auto r = coarse_global(g, p, lc, weighted);
      for (NodeId v = 0; v < g.node_count(); ++v) EXPECT_EQ(r.coarse_gc[v], r.ic[v] + r.node_ec[v]);
      EXPECT_EQ(r.ic.scores, lc.scores);
    }
  }
}

}  // namespace
}  // namespace modbc
