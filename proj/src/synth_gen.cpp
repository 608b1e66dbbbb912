#include "modbc/synth_gen.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "modbc/exact_bc.hpp"

namespace modbc {

std::uint64_t PortableRng::below(std::uint64_t bound) {
  // Reject the top partial copy of [0, bound) so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t PortableRng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  const double threshold = std::exp(-mean);
  std::uint64_t count = 0;
  double product = unit();
  while (product > threshold) {
    ++count;
    product *= unit();
  }
  return count;
}

std::size_t module_count_for(const GenConfig& cfg) {
  switch (cfg.module_rule) {
    case ModuleRule::Sqrt: {
      auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(cfg.n)));
      while (k * k > cfg.n) --k;
      while ((k + 1) * (k + 1) <= cfg.n) ++k;
      return std::max<std::size_t>(k, 1);
    }
    case ModuleRule::Hundredth:
      return std::max<std::size_t>(1, cfg.n / 100);
    case ModuleRule::Explicit:
      return cfg.explicit_modules;
  }
  return 1;
}

namespace {

const char* rule_name(ModuleRule r) {
  switch (r) {
    case ModuleRule::Sqrt: return "sqrt";
    case ModuleRule::Hundredth: return "hundredth";
    case ModuleRule::Explicit: return "explicit";
  }
  return "?";
}

void validate(const GenConfig& cfg, std::size_t k) {
  auto fail = [](const std::string& msg) { throw GraphError(GraphErrc::InvalidConfig, msg); };
  if (cfg.n < 4) fail("n must be at least 4");
  if (k < 1 || k > cfg.n) fail("module count must lie in 1..n");
  if (cfg.weight_min < 1 || cfg.weight_max < cfg.weight_min) fail("weight range must satisfy 1 <= min <= max");
  if (!(cfg.internal_density >= 0.0 && cfg.internal_density <= 1.0)) fail("internal density must lie in [0, 1]");
  if (!(cfg.external_edges_per_module_pair >= 1.0)) fail("external edges per module pair must be >= 1");
}

std::uint64_t pair_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

std::vector<std::uint32_t> shuffled(std::size_t count, PortableRng& rng) {
  std::vector<std::uint32_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = count; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  return order;
}

double largest_module_diameter(const Graph& g) {
  const ModulePartition p = classify_edges(g);
  double diameter = 0.0;
  SsspState state;
  for (ModuleId m = 0; m < p.module_count; ++m) {
    const Graph sub = module_subgraph(p, m);
    for (NodeId s = 0; s < sub.node_count(); ++s) {
      sssp_dijkstra_into(sub, s, {}, state);
      for (double d : state.dist) {
        if (d != kInfinity) diameter = std::max(diameter, d);
      }
    }
  }
  return diameter;
}

}  // namespace

Generated generate(const GenConfig& cfg) {
  const std::size_t k = module_count_for(cfg);
  validate(cfg, k);
  PortableRng rng(cfg.seed);
  const std::size_t n = cfg.n;
  const std::uint64_t weight_span = cfg.weight_max - cfg.weight_min + 1;
  auto draw_weight = [&] { return static_cast<double>(cfg.weight_min + rng.below(weight_span)); };

  // Balanced contiguous blocks: the first n % k modules get one extra node.
  std::vector<ModuleId> module_of(n);
  std::vector<NodeId> first(k + 1, 0);
  for (std::size_t m = 0; m < k; ++m) {
    const std::size_t size = n / k + (m < n % k ? 1 : 0);
    first[m + 1] = first[m] + static_cast<NodeId>(size);
    for (NodeId v = first[m]; v < first[m + 1]; ++v) module_of[v] = static_cast<ModuleId>(m);
  }

  std::vector<Edge> edges;
  for (std::size_t m = 0; m < k; ++m) {
    const NodeId base = first[m];
    const std::size_t size = first[m + 1] - base;
    const auto order = shuffled(size, rng);
    std::unordered_set<std::uint64_t> used;
    for (std::size_t i = 1; i < size; ++i) {
      const NodeId a = base + order[i];
      const NodeId b = base + order[rng.below(i)];
      used.insert(pair_key(a, b));
      edges.push_back({a, b, draw_weight()});
    }
    const std::size_t pairs = size * (size - 1) / 2;
    const auto target = std::max<std::size_t>(
        size - 1, static_cast<std::size_t>(std::llround(cfg.internal_density * static_cast<double>(pairs))));
    std::size_t extra = target - (size - 1);
    if (extra == 0) continue;
    if (pairs <= (std::size_t{1} << 22)) {
      std::vector<std::uint64_t> free_pairs;
      free_pairs.reserve(pairs - (size - 1));
      for (NodeId a = base; a < first[m + 1]; ++a)
        for (NodeId b = a + 1; b < first[m + 1]; ++b)
          if (!used.count(pair_key(a, b))) free_pairs.push_back(pair_key(a, b));
      for (std::size_t i = 0; i < extra; ++i) {
        std::swap(free_pairs[i], free_pairs[i + rng.below(free_pairs.size() - i)]);
        const auto key = free_pairs[i];
        edges.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu), draw_weight()});
      }
    } else {
      while (extra > 0) {
        const NodeId a = base + static_cast<NodeId>(rng.below(size));
        const NodeId b = base + static_cast<NodeId>(rng.below(size));
        if (a == b || !used.insert(pair_key(a, b)).second) continue;
        edges.push_back({a, b, draw_weight()});
        --extra;
      }
    }
  }

  // Module-level spanning tree plus optional extra module links.
  std::vector<std::pair<std::size_t, std::size_t>> module_pairs;
  std::unordered_set<std::uint64_t> linked;
  const auto module_order = shuffled(k, rng);
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t a = module_order[i];
    const std::size_t b = module_order[rng.below(i)];
    module_pairs.emplace_back(a, b);
    linked.insert(pair_key(static_cast<NodeId>(a), static_cast<NodeId>(b)));
  }
  const std::size_t possible_links = k * (k - 1) / 2;
  for (std::size_t i = 0; i < cfg.extra_module_links && linked.size() < possible_links; ++i) {
    std::size_t a, b;
    do {
      a = rng.below(k);
      b = rng.below(k);
    } while (a == b || linked.count(pair_key(static_cast<NodeId>(a), static_cast<NodeId>(b))));
    module_pairs.emplace_back(a, b);
    linked.insert(pair_key(static_cast<NodeId>(a), static_cast<NodeId>(b)));
  }

  std::vector<std::pair<NodeId, NodeId>> external;
  for (const auto& [a, b] : module_pairs) {
    const std::size_t size_a = first[a + 1] - first[a];
    const std::size_t size_b = first[b + 1] - first[b];
    const std::size_t count = std::min<std::uint64_t>(
        1 + rng.poisson(cfg.external_edges_per_module_pair - 1.0), size_a * size_b);
    std::unordered_set<std::uint64_t> chosen;
    while (chosen.size() < count) {
      const NodeId x = first[a] + static_cast<NodeId>(rng.below(size_a));
      const NodeId y = first[b] + static_cast<NodeId>(rng.below(size_b));
      if (chosen.insert(pair_key(x, y)).second) external.emplace_back(x, y);
    }
  }

  Generated out;
  if (cfg.enforce_locality) {
    const Graph internal_only = build_graph(n, edges, module_of);
    out.external_weight_floor = static_cast<std::uint64_t>(largest_module_diameter(internal_only)) + 1;
  }
  for (const auto& [x, y] : external) {
    const std::uint64_t offset = rng.below(weight_span);
    const double w = cfg.enforce_locality
                         ? static_cast<double>(out.external_weight_floor + offset)
                         : static_cast<double>(cfg.weight_min + offset);
    edges.push_back({x, y, w});
  }

  out.graph = build_graph(n, edges, module_of);
  std::ostringstream header;
  header << "modular graph generator (prng mt19937_64)\n"
         << "n=" << n << " modules=" << k << " rule=" << rule_name(cfg.module_rule)
         << " internal_density=" << cfg.internal_density
         << " external_edges_per_module_pair=" << cfg.external_edges_per_module_pair
         << " extra_module_links=" << cfg.extra_module_links << "\n"
         << "weights=[" << cfg.weight_min << "," << cfg.weight_max << "] seed=" << cfg.seed
         << " enforce_locality=" << (cfg.enforce_locality ? 1 : 0);
  if (cfg.enforce_locality) header << " external_weight_floor=" << out.external_weight_floor;
  out.header = header.str();
  return out;
}

}  // namespace modbc
