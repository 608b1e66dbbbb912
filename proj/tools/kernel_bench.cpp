// kernel_bench: serial reference vs OpenMP kernels on one generated graph.
//
//   kernel_bench [n] [threads] [seed]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "modbc/exact_bc.hpp"
#include "modbc/modular_bc.hpp"
#include "modbc/parallel.hpp"
#include "modbc/synth_gen.hpp"

namespace {

template <typename F>
double time_best_of(int rounds, F&& body) {
  double best = 1e300;
  for (int r = 0; r < rounds; ++r) {
    const auto start = std::chrono::steady_clock::now();
    body();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

// Largest |a - b| / max(1, |b|); the two paths sum in different orders.
double max_difference(const modbc::CentralityVector& a, const modbc::CentralityVector& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1.0, std::abs(b[i])));
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2000;
  const int threads = argc > 2 ? std::atoi(argv[2]) : 0;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 1;

  modbc::GenConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  cfg.enforce_locality = true;
  const modbc::Graph g = modbc::generate(cfg).graph;
  const modbc::ModulePartition p = modbc::classify_edges(g);
  const auto local = modbc::local_centrality(g, p, threads);

  std::printf("kernel,n,k,threads,serial_seconds,parallel_seconds,speedup,max_rel_diff\n");
  const int used = modbc::resolve_threads(threads);

  modbc::CentralityVector serial, parallel;
  const double bs = time_best_of(3, [&] { serial = modbc::brandes_bc_serial(g); });
  const double bp = time_best_of(3, [&] { parallel = modbc::brandes_bc(g, {}, {}, threads); });
  std::printf("brandes,%zu,%zu,%d,%.6f,%.6f,%.3f,%.3g\n", g.node_count(), g.module_count(), used, bs, bp,
              bs / bp, max_difference(parallel, serial));

  const double cs = time_best_of(3, [&] {
    serial = modbc::cross_module_dependencies_serial(g, p, local.summaries);
  });
  const double cp = time_best_of(3, [&] {
    parallel = modbc::cross_module_dependencies(g, p, local.summaries, threads);
  });
  std::printf("cross_module,%zu,%zu,%d,%.6f,%.6f,%.3f,%.3g\n", g.node_count(), g.module_count(), used, cs,
              cp, cs / cp, max_difference(parallel, serial));
  return 0;
}
