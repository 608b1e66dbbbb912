#include "modbc/bench.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "modbc/coarse_bc.hpp"
#include "modbc/exact_bc.hpp"
#include "modbc/graph_io.hpp"
#include "modbc/modular_bc.hpp"
#include "modbc/parallel.hpp"

namespace modbc {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Exact: return "exact";
    case Algorithm::Modular: return "modular";
    case Algorithm::Coarse: return "coarse";
    case Algorithm::Oracle: return "oracle";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "exact") return Algorithm::Exact;
  if (name == "modular") return Algorithm::Modular;
  if (name == "coarse") return Algorithm::Coarse;
  if (name == "oracle") return Algorithm::Oracle;
  throw GraphError(GraphErrc::InvalidConfig, "unknown algorithm '" + name + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void scale(std::vector<double>& v, double factor) {
  for (double& x : v) x *= factor;
}

std::string module_table(const std::vector<double>& per_module) {
  std::string out = "module,ec_module\n";
  for (std::size_t m = 0; m < per_module.size(); ++m) {
    out += std::to_string(m) + "," + format_score(per_module[m]) + "\n";
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline(const Graph& g, const PipelineOptions& options) {
  PipelineResult result;
  const std::size_t n = g.node_count();
  const double factor = options.halve ? 0.5 : 1.0;
  std::ostringstream csv;

  switch (options.algorithm) {
    case Algorithm::Exact:
    case Algorithm::Oracle: {
      const auto start = Clock::now();
      CentralityVector bc = options.algorithm == Algorithm::Exact
                                ? brandes_bc(g, {}, {}, options.threads)
                                : brute_force_bc(g);
      result.wall_seconds = seconds_since(start);
      scale(bc.scores, factor);
      csv << "node,module,bc\n";
      for (NodeId v = 0; v < n; ++v) {
        csv << v << ',' << g.module_of(v) << ',' << format_score(bc.scores[v]) << '\n';
      }
      result.argmax_node = static_cast<NodeId>(argmax_smallest(bc.scores));
      result.argmax_score = n ? bc.scores[result.argmax_node] : 0.0;
      break;
    }
    case Algorithm::Modular: {
      const auto start = Clock::now();
      const ModulePartition p = classify_edges(g);
      ModularOptions mo;
      mo.threads = options.threads;
      mo.validate = options.validate;
      GlobalCentralityReport report = global_centrality(g, p, mo);
      result.wall_seconds = seconds_since(start);
      scale(report.lc.scores, factor);
      scale(report.ec.scores, factor);
      scale(report.gc.scores, factor);
      scale(report.ec_module, factor);
      csv << "node,module,lc,ec,gc\n";
      for (NodeId v = 0; v < n; ++v) {
        csv << v << ',' << g.module_of(v) << ',' << format_score(report.lc.scores[v]) << ','
            << format_score(report.ec.scores[v]) << ',' << format_score(report.gc.scores[v]) << '\n';
      }
      result.module_csv = module_table(report.ec_module);
      result.argmax_node = report.global_central_node;
      result.argmax_score = n ? report.gc.scores[report.global_central_node] : 0.0;
      break;
    }
    case Algorithm::Coarse: {
      const auto start = Clock::now();
      const ModulePartition p = classify_edges(g);
      if (options.validate) {
        const auto check = check_locality(g, p);
        if (!check.holds) {
          throw GraphError(GraphErrc::PreconditionViolated,
                           "nodes " + std::to_string(check.source) + " and " +
                               std::to_string(check.target) + " leave their module on a shortest path");
        }
      }
      const LocalCentrality local = local_centrality(g, p, options.threads);
      CoarseReport report = coarse_global(g, p, local.lc, options.coarse_weighted);
      result.wall_seconds = seconds_since(start);
      // Connector counts are already unordered; only the local part halves.
      for (std::size_t v = 0; v < n; ++v) {
        report.ic.scores[v] *= factor;
        report.coarse_gc.scores[v] = report.ic.scores[v] + report.node_ec[v];
      }
      csv << "node,module,ic,ec,coarse_gc\n";
      for (NodeId v = 0; v < n; ++v) {
        csv << v << ',' << g.module_of(v) << ',' << format_score(report.ic.scores[v]) << ','
            << format_score(report.node_ec[v]) << ',' << format_score(report.coarse_gc.scores[v])
            << '\n';
      }
      std::vector<double> per_module(p.module_count, 0.0);
      for (ModuleId m = 0; m < p.module_count; ++m) {
        for (NodeId x : p.external_vertices[m]) per_module[m] += report.node_ec[x];
      }
      result.module_csv = module_table(per_module);
      result.argmax_node = static_cast<NodeId>(argmax_smallest(report.coarse_gc.scores));
      result.argmax_score = n ? report.coarse_gc.scores[result.argmax_node] : 0.0;
      break;
    }
  }
  result.csv = csv.str();
  return result;
}

std::string bench_result_row(const BenchResult& r) {
  std::ostringstream row;
  row << to_string(r.algorithm) << ',' << r.n << ',' << r.k << ',' << format_score(r.wall_seconds)
      << ',' << r.seed << ',' << r.argmax_node << ',' << format_score(r.argmax_score) << ','
      << r.threads;
  return row.str();
}

void append_bench_result(const std::string& path, const BenchResult& r) {
  bool fresh = true;
  {
    std::ifstream probe(path, std::ios::binary | std::ios::ate);
    fresh = !probe || probe.tellg() == 0;
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::ios_base::failure("cannot append to " + path);
  if (fresh) out << kBenchResultHeader << '\n';
  out << bench_result_row(r) << '\n';
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<TimingRow> bench_compare(const CompareConfig& cfg) {
  if (cfg.repeats < 3) throw GraphError(GraphErrc::InvalidConfig, "repeats must be at least 3");
  if (!std::is_sorted(cfg.sizes.begin(), cfg.sizes.end())) {
    throw GraphError(GraphErrc::InvalidConfig, "sizes must be ascending");
  }
  std::vector<TimingRow> rows;
  for (ModuleRule rule : cfg.rules) {
    for (std::size_t n : cfg.sizes) {
      GenConfig gen;
      gen.n = n;
      gen.module_rule = rule;
      gen.seed = cfg.seed;
      gen.enforce_locality = cfg.enforce_locality;
      const Generated generated = generate(gen);
      for (Algorithm algo : cfg.algorithms) {
        PipelineOptions options;
        options.algorithm = algo;
        options.threads = cfg.threads;
        std::vector<double> times;
        NodeId argmax = 0;
        for (std::size_t r = 0; r < cfg.repeats; ++r) {
          const PipelineResult res = run_pipeline(generated.graph, options);
          times.push_back(res.wall_seconds);
          argmax = res.argmax_node;
        }
        rows.push_back({algo, n, generated.graph.module_count(), median(times),
                        resolve_threads(cfg.threads), argmax});
      }
    }
  }
  return rows;
}

std::string timing_csv(const std::vector<TimingRow>& rows) {
  std::ostringstream out;
  out << kTimingHeader << '\n';
  for (const TimingRow& r : rows) {
    out << to_string(r.algorithm) << ',' << r.n << ',' << r.k << ',' << format_score(r.median_seconds)
        << ',' << r.threads << '\n';
  }
  return out.str();
}

}  // namespace modbc
