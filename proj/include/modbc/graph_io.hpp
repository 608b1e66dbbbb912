#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "modbc/graph.hpp"

namespace modbc {

// Line format:
//   # comment
//   n <id> <module>
//   e <u> <v> <weight>
// Node lines precede edge lines and ids cover 0..N-1 exactly once.

/// Strict parser. Syntax problems raise GraphError(SyntaxError) with the
/// 1-based line number in the message; semantic problems raise the same
/// errors as build_graph.
Graph parse_graph(std::string_view text);
Graph parse_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

/// Writes the graph in the line format. `header` lines are emitted as
/// comments first. Weights use the shortest representation that parses back
/// to the identical double.
std::string serialize_graph(const Graph& g, std::string_view header = {});
void write_graph_file(const std::string& path, const Graph& g, std::string_view header = {});

/// "%.9g" formatting used by every CSV writer.
std::string format_score(double value);

}  // namespace modbc
