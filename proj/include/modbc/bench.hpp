#pragma once

#include <string>
#include <vector>

#include "modbc/graph.hpp"
#include "modbc/synth_gen.hpp"

namespace modbc {

enum class Algorithm { Exact, Modular, Coarse, Oracle };

const char* to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct PipelineOptions {
  Algorithm algorithm = Algorithm::Modular;
  bool halve = false;
  bool coarse_weighted = false;
  bool validate = false;
  int threads = 0;
};

struct PipelineResult {
  std::string csv;         // per-node scores
  std::string module_csv;  // per-module scores, empty for exact/oracle
  NodeId argmax_node = 0;
  double argmax_score = 0.0;
  double wall_seconds = 0.0;  // algorithm call only
};

/// Runs one algorithm and renders its CSV. Timing covers the algorithm call,
/// not formatting.
PipelineResult run_pipeline(const Graph& g, const PipelineOptions& options);

struct BenchResult {
  Algorithm algorithm = Algorithm::Exact;
  std::size_t n = 0;
  std::size_t k = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  NodeId argmax_node = 0;
  double argmax_score = 0.0;
  int threads = 1;
};

inline constexpr const char* kBenchResultHeader =
    "algorithm,n,k,wall_seconds,seed,argmax_node,argmax_score,threads";
std::string bench_result_row(const BenchResult& r);
/// Appends one row, writing the header first if the file is new or empty.
void append_bench_result(const std::string& path, const BenchResult& r);

struct TimingRow {
  Algorithm algorithm = Algorithm::Exact;
  std::size_t n = 0;
  std::size_t k = 0;
  double median_seconds = 0.0;
  int threads = 1;
  NodeId argmax_node = 0;
};

struct CompareConfig {
  std::vector<std::size_t> sizes;
  std::vector<ModuleRule> rules{ModuleRule::Sqrt};
  std::vector<Algorithm> algorithms{Algorithm::Exact, Algorithm::Modular};
  std::size_t repeats = 3;
  std::uint64_t seed = 1;
  int threads = 1;
  bool enforce_locality = false;
};

/// For each (rule, n): generate once, then time each algorithm `repeats`
/// times and keep the median. Rows are ordered by rule, n, algorithm.
std::vector<TimingRow> bench_compare(const CompareConfig& cfg);

inline constexpr const char* kTimingHeader = "algo,n,k,median_seconds,threads";
std::string timing_csv(const std::vector<TimingRow>& rows);

double median(std::vector<double> values);

}  // namespace modbc
