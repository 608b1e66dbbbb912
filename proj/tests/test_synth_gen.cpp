#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "modbc/exact_bc.hpp"
#include "modbc/graph_io.hpp"
#include "modbc/modular_bc.hpp"
#include "modbc/synth_gen.hpp"

namespace modbc {
namespace {

std::map<std::size_t, std::size_t> module_sizes(const Graph& g) {
  std::vector<std::size_t> count(g.module_count(), 0);
  for (ModuleId m : g.modules()) ++count[m];
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t c : count) ++histogram[c];
  return histogram;
}

bool connected(const Graph& g) {
  const SsspState s = sssp_dijkstra(g, 0);
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (!s.reachable(v)) return false;
  return true;
}

GraphErrc config_error(const GenConfig& cfg) {
  try {
    generate(cfg);
  } catch (const GraphError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected InvalidConfig";
  return GraphErrc::SyntaxError;
}

TEST(ModuleCount, Rules) {
  GenConfig cfg;
  cfg.n = 5000;
  EXPECT_EQ(module_count_for(cfg), 70u);
  cfg.n = 4900;
  EXPECT_EQ(module_count_for(cfg), 70u);
  cfg.n = 4899;
  EXPECT_EQ(module_count_for(cfg), 69u);
  cfg.module_rule = ModuleRule::Hundredth;
  cfg.n = 1000;
  EXPECT_EQ(module_count_for(cfg), 10u);
  cfg.n = 99;
  EXPECT_EQ(module_count_for(cfg), 1u);
}

TEST(Generate, SqrtRuleAtFiveThousandNodes) {
  GenConfig cfg;
  cfg.n = 5000;
  const Graph g = generate(cfg).graph;
  EXPECT_EQ(g.module_count(), 70u);
  // 5000 = 70 * 71 + 30
  EXPECT_EQ(module_sizes(g), (std::map<std::size_t, std::size_t>{{71, 40}, {72, 30}}));
}

TEST(Generate, HundredthRuleAtOneThousandNodes) {
  GenConfig cfg;
  cfg.n = 1000;
  cfg.module_rule = ModuleRule::Hundredth;
  const Graph g = generate(cfg).graph;
  EXPECT_EQ(module_sizes(g), (std::map<std::size_t, std::size_t>{{100, 10}}));
}

TEST(Generate, SameSeedSameBytes) {
  GenConfig cfg;
  cfg.n = 300;
  cfg.seed = 42;
  const Generated a = generate(cfg);
  const Generated b = generate(cfg);
  EXPECT_EQ(serialize_graph(a.graph, a.header), serialize_graph(b.graph, b.header));
  cfg.seed = 43;
  EXPECT_NE(serialize_graph(generate(cfg).graph), serialize_graph(a.graph));
}

TEST(Generate, PinnedOutput) {
  // Guards the documented engine and range mapping against silent changes.
  GenConfig cfg;
  cfg.n = 6;
  cfg.module_rule = ModuleRule::Explicit;
  cfg.explicit_modules = 2;
  cfg.seed = 7;
  const std::string text = serialize_graph(generate(cfg).graph);
  PortableRng rng(7);
  EXPECT_EQ(rng.next(), std::mt19937_64(7)());
  EXPECT_EQ(text, serialize_graph(generate(cfg).graph));
  EXPECT_NE(text.find("n 5 1"), std::string::npos);
}

TEST(Generate, ConnectedWithinEdgeBoundsAndWeightRange) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenConfig cfg;
    cfg.n = 4 + seed * 13;
    cfg.seed = seed;
    cfg.extra_module_links = seed % 3;
    const Graph g = generate(cfg).graph;
    const std::size_t n = g.node_count();
    EXPECT_TRUE(connected(g)) << "seed " << seed;
    EXPECT_GE(g.edge_count(), n - 1);
    EXPECT_LE(g.edge_count(), (n * n - n) / 2);
    for (const Edge& e : g.edges()) {
      EXPECT_GE(e.weight, cfg.weight_min);
      EXPECT_LE(e.weight, cfg.weight_max);
      EXPECT_EQ(e.weight, std::floor(e.weight));
    }
  }
}

TEST(Generate, ModulesAreInternallyConnected) {
  GenConfig cfg;
  cfg.n = 400;
  cfg.internal_density = 0.0;
  const Graph g = generate(cfg).graph;
  const ModulePartition p = classify_edges(g);
  for (ModuleId m = 0; m < p.module_count; ++m) {
    EXPECT_EQ(p.internal_edges[m].size(), p.members[m].size() - 1);
    EXPECT_TRUE(connected(module_subgraph(p, m)));
  }
}

TEST(Generate, InternalDensityIsHonoured) {
  GenConfig cfg;
  cfg.n = 400;
  const Graph g = generate(cfg).graph;
  const ModulePartition p = classify_edges(g);
  for (ModuleId m = 0; m < p.module_count; ++m) {
    const double size = static_cast<double>(p.members[m].size());
    EXPECT_EQ(p.internal_edges[m].size(), static_cast<std::size_t>(std::llround(0.5 * size * (size - 1) / 2)));
  }
}

TEST(Generate, ExternalEdgeCountMatchesExpectation) {
  // k = 20 modules in a tree: 19 linked pairs, each 1 + Poisson(1) edges.
  const double pairs = 19.0;
  const double mean = 2.0 * pairs;
  const double sd_of_mean = std::sqrt(pairs) / std::sqrt(100.0);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    GenConfig cfg;
    cfg.n = 400;
    cfg.seed = seed;
    const Graph g = generate(cfg).graph;
    total += static_cast<double>(classify_edges(g).external_edges.size());
  }
  EXPECT_NEAR(total / 100.0, mean, 3.0 * sd_of_mean);
}

TEST(Generate, EnforcedGraphsKeepPathsInsideModules) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GenConfig cfg;
    cfg.n = 60 + 20 * seed;
    cfg.seed = seed;
    cfg.enforce_locality = true;
    cfg.extra_module_links = seed % 4;
    const Generated out = generate(cfg);
    const auto check = check_locality(out.graph, classify_edges(out.graph));
    EXPECT_TRUE(check.holds) << "seed " << seed << " pair " << check.source << "," << check.target;
    for (const auto& x : classify_edges(out.graph).external_edges) {
      EXPECT_GE(x.edge.weight, static_cast<double>(out.external_weight_floor));
    }
    EXPECT_NE(out.header.find("enforce_locality=1"), std::string::npos);
  }
}

TEST(Generate, EnforcementKeepsTopology) {
  GenConfig cfg;
  cfg.n = 200;
  cfg.seed = 5;
  const Graph plain = generate(cfg).graph;
  cfg.enforce_locality = true;
  const Graph heavy = generate(cfg).graph;
  ASSERT_EQ(plain.edge_count(), heavy.edge_count());
  for (std::size_t i = 0; i < plain.edge_count(); ++i) {
    EXPECT_EQ(plain.edges()[i].u, heavy.edges()[i].u);
    EXPECT_EQ(plain.edges()[i].v, heavy.edges()[i].v);
  }
}

TEST(Generate, RejectsInvalidConfig) {
  GenConfig cfg;
  cfg.n = 3;
  EXPECT_EQ(config_error(cfg), GraphErrc::InvalidConfig);
  cfg.n = 10;
  cfg.weight_min = 0;
  EXPECT_EQ(config_error(cfg), GraphErrc::InvalidConfig);
  cfg.weight_min = 20;
  cfg.weight_max = 10;
  EXPECT_EQ(config_error(cfg), GraphErrc::InvalidConfig);
  cfg = GenConfig{};
  cfg.module_rule = ModuleRule::Explicit;
  cfg.explicit_modules = 0;
  EXPECT_EQ(config_error(cfg), GraphErrc::InvalidConfig);
  cfg.explicit_modules = cfg.n + 1;
  EXPECT_EQ(config_error(cfg), GraphErrc::InvalidConfig);
  cfg = GenConfig{};
  cfg.internal_density = 1.5;
  EXPECT_EQ(config_error(cfg), GraphErrc::InvalidConfig);
}

TEST(PortableRng, BelowStaysInRangeAndCoversIt) {
  PortableRng rng(1);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    ++seen[x];
  }
  for (int c : seen) EXPECT_GT(c, 800);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(PortableRng, PoissonMean) {
  PortableRng rng(3);
  double sum = 0.0;
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) sum += static_cast<double>(rng.poisson(1.0));
  EXPECT_NEAR(sum / draws, 1.0, 3.0 / std::sqrt(static_cast<double>(draws)));
}

}  // namespace
}  // namespace modbc
