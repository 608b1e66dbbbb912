// centrality: betweenness over weighted modular graphs.
//
//   centrality --generate 1000 --modules sqrt --seed 7 --algo modular --out gc.csv
//   centrality --input g.txt --algo exact --halve
//   centrality compare --sizes 1000,2000,3000 --rules sqrt,hundredth --repeats 3
//
// Exit status: 0 ok, 1 I/O or input error, 2 usage error, 3 algorithm precondition.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "modbc/bench.hpp"
#include "modbc/graph_io.hpp"
#include "modbc/parallel.hpp"
#include "modbc/synth_gen.hpp"

namespace {

enum Exit { kOk = 0, kIoError = 1, kUsage = 2, kPrecondition = 3 };

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

modbc::ModuleRule parse_rule(const std::string& text, std::size_t& explicit_k) {
  if (text == "sqrt") return modbc::ModuleRule::Sqrt;
  if (text == "hundredth") return modbc::ModuleRule::Hundredth;
  try {
    std::size_t used = 0;
    const long long k = std::stoll(text, &used);
    if (used == text.size() && k >= 1) {
      explicit_k = static_cast<std::size_t>(k);
      return modbc::ModuleRule::Explicit;
    }
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--modules", "expected sqrt, hundredth or a positive integer, got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Betweenness centrality for weighted modular graphs"};

  std::string input;
  std::size_t generate_n = 0;
  std::string modules = "sqrt";
  std::uint64_t seed = 1;
  std::string algo = "modular";
  bool coarse_weighted = false;
  bool halve = false;
  bool validate = false;
  bool enforce_p = false;
  bool bench = false;
  std::string bench_file = "timing.csv";
  std::string out_path;
  std::string module_out;
  std::string graph_out;
  int threads = 0;

  auto* source = app.add_option_group("source");
  source->add_option("--input", input, "Graph file to read");
  source->add_option("--generate", generate_n, "Generate a synthetic modular graph with N nodes");
  source->require_option(0, 1);
  app.add_option("--modules", modules, "Module rule for --generate: sqrt, hundredth or K");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--algo", algo, "exact | modular | coarse | oracle")
      ->check(CLI::IsMember({"exact", "modular", "coarse", "oracle"}));
  app.add_flag("--coarse-weighted", coarse_weighted, "Weighted connector rule for --algo coarse");
  app.add_flag("--halve", halve, "Report unordered-pair betweenness (ordered / 2)");
  app.add_flag("--validate", validate, "Check that shortest paths between same-module nodes stay in the module");
  app.add_flag("--enforce-p", enforce_p, "Generator: make external edges heavier than any module diameter");
  app.add_flag("--bench", bench, "Append a timing row to --bench-file");
  app.add_option("--bench-file", bench_file, "Timing CSV for --bench");
  app.add_option("--out", out_path, "Per-node CSV (stdout when omitted)");
  app.add_option("--module-out", module_out, "Per-module CSV (modular and coarse)");
  app.add_option("--graph-out", graph_out, "Also write the input/generated graph file");
  app.add_option("--threads", threads, "Worker threads (0 = all available)")->check(CLI::NonNegativeNumber);

  auto* compare = app.add_subcommand("compare", "Time exact vs modular across graph sizes");
  std::vector<std::size_t> sizes{1000, 2000, 3000, 4000, 5000};
  std::vector<std::string> rules{"sqrt"};
  std::vector<std::string> algos{"exact", "modular"};
  std::size_t repeats = 3;
  std::string compare_out;
  bool compare_enforce = false;
  int compare_threads = 1;
  compare->add_option("--sizes", sizes, "Ascending node counts")->delimiter(',');
  compare->add_option("--rules", rules, "Module rules")->delimiter(',');
  compare->add_option("--algos", algos, "Algorithms to time")->delimiter(',');
  compare->add_option("--repeats", repeats, "Repeats per cell (>= 3); the median is kept");
  compare->add_option("--seed", seed, "Generator seed");
  compare->add_option("--threads", compare_threads, "Worker threads (0 = all available)");
  compare->add_flag("--enforce-p", compare_enforce, "Generate with heavy external edges");
  compare->add_option("--out", compare_out, "Timing CSV (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compare) {
      modbc::CompareConfig cfg;
      cfg.sizes = sizes;
      cfg.rules.clear();
      for (const auto& r : rules) {
        std::size_t k = 0;
        cfg.rules.push_back(parse_rule(r, k));
        if (cfg.rules.back() == modbc::ModuleRule::Explicit) {
          throw CLI::ValidationError("--rules", "compare accepts sqrt and hundredth only");
        }
      }
      cfg.algorithms.clear();
      for (const auto& a : algos) cfg.algorithms.push_back(modbc::parse_algorithm(a));
      cfg.repeats = repeats;
      cfg.seed = seed;
      cfg.threads = compare_threads;
      cfg.enforce_locality = compare_enforce;
      const auto rows = modbc::bench_compare(cfg);
      const std::string table = modbc::timing_csv(rows);
      if (compare_out.empty()) {
        std::cout << table;
      } else {
        write_text(compare_out, table);
      }
      return kOk;
    }

    if (input.empty() && generate_n == 0) {
      std::cerr << "error: one of --input or --generate is required\n";
      return kUsage;
    }

    modbc::Graph graph;
    std::string header;
    if (!input.empty()) {
      graph = modbc::read_graph_file(input);
    } else {
      modbc::GenConfig gen;
      gen.n = generate_n;
      gen.module_rule = parse_rule(modules, gen.explicit_modules);
      gen.seed = seed;
      gen.enforce_locality = enforce_p;
      auto generated = modbc::generate(gen);
      graph = std::move(generated.graph);
      header = std::move(generated.header);
    }
    if (!graph_out.empty()) modbc::write_graph_file(graph_out, graph, header);

    modbc::PipelineOptions options;
    options.algorithm = modbc::parse_algorithm(algo);
    options.halve = halve;
    options.coarse_weighted = coarse_weighted;
    options.validate = validate;
    options.threads = threads;
    const auto result = modbc::run_pipeline(graph, options);

    if (out_path.empty()) {
      std::cout << result.csv;
    } else {
      write_text(out_path, result.csv);
    }
    if (!module_out.empty() && !result.module_csv.empty()) write_text(module_out, result.module_csv);

    if (bench) {
      modbc::BenchResult row;
      row.algorithm = options.algorithm;
      row.n = graph.node_count();
      row.k = graph.module_count();
      row.wall_seconds = result.wall_seconds;
      row.seed = seed;
      row.argmax_node = result.argmax_node;
      row.argmax_score = result.argmax_score;
      row.threads = modbc::resolve_threads(threads);
      modbc::append_bench_result(bench_file, row);
    }
    std::cerr << "argmax node " << result.argmax_node << " score "
              << modbc::format_score(result.argmax_score) << " in "
              << modbc::format_score(result.wall_seconds) << " s\n";
    return kOk;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const modbc::GraphError& e) {
    std::cerr << "error: " << modbc::to_string(e.code()) << ": " << e.what() << '\n';
    switch (e.code()) {
      case modbc::GraphErrc::PreconditionViolated:
      case modbc::GraphErrc::GraphTooLarge:
        return kPrecondition;
      case modbc::GraphErrc::InvalidConfig:
        return kUsage;
      default:
        return kIoError;
    }
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  }
}
