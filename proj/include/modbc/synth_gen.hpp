#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "modbc/graph.hpp"

namespace modbc {

enum class ModuleRule { Sqrt, Hundredth, Explicit };

struct GenConfig {
  std::size_t n = 1000;
  ModuleRule module_rule = ModuleRule::Sqrt;
  std::size_t explicit_modules = 1;  // used with ModuleRule::Explicit
  /// Fraction of intra-module node pairs joined by an edge (spanning tree included).
  double internal_density = 0.5;
  /// Expected external edges per adjacent module pair: one tree edge plus
  /// Poisson(external_edges_per_module_pair - 1) parallel extras.
  double external_edges_per_module_pair = 2.0;
  /// Additional random module pairs joined on top of the module spanning
  /// tree, giving the quotient cycles. Zero keeps the quotient a tree.
  std::size_t extra_module_links = 0;
  std::uint32_t weight_min = 10;
  std::uint32_t weight_max = 50;
  std::uint64_t seed = 1;
  /// Raise every external weight above the largest module diameter, so no
  /// shortest path between two nodes of one module ever leaves it.
  bool enforce_locality = false;
};

/// Module count implied by the rule: floor(sqrt(n)), max(1, floor(n/100)) or
/// the explicit value.
std::size_t module_count_for(const GenConfig& cfg);

struct Generated {
  Graph graph;
  /// Human-readable config record, emitted as the file's header comment.
  std::string header;
  /// Lower bound applied to external weights when enforce_locality is set.
  std::uint64_t external_weight_floor = 0;
};

/// Deterministic for a given config. Throws GraphError(InvalidConfig).
Generated generate(const GenConfig& cfg);

/// Seeded source of portable random numbers: std::mt19937_64 (whose output
/// sequence the standard pins down) mapped to ranges by hand, since the
/// standard distributions differ between library implementations.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Poisson variate by Knuth's product method (fine for small means).
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace modbc
