#include "modbc/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace modbc {
namespace {

[[noreturn]] void syntax_error(std::size_t line, const std::string& msg) {
  throw GraphError(GraphErrc::SyntaxError, "line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint32_t parse_index(std::string_view token, std::size_t line, const char* what) {
  std::uint32_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    syntax_error(line, std::string("expected non-negative integer ") + what + ", got '" +
                           std::string(token) + "'");
  }
  return value;
}

double parse_weight(std::string_view token, std::size_t line) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value, std::chars_format::general);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    syntax_error(line, "expected decimal weight, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::vector<std::int64_t> module_of;
  std::vector<Edge> edges;
  bool in_edges = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto tokens = split_tokens(line);
    if (tokens.empty() || tokens[0].front() == '#') continue;

    if (tokens[0] == "n") {
      if (in_edges) syntax_error(line_no, "node line after edge lines");
      if (tokens.size() != 3) syntax_error(line_no, "node line needs: n <id> <module>");
      const auto id = parse_index(tokens[1], line_no, "node id");
      const auto module = parse_index(tokens[2], line_no, "module");
      if (id >= module_of.size()) module_of.resize(std::size_t{id} + 1, -1);
      if (module_of[id] != -1) syntax_error(line_no, "node " + std::to_string(id) + " declared twice");
      module_of[id] = module;
    } else if (tokens[0] == "e") {
      if (!in_edges) {
        for (std::size_t v = 0; v < module_of.size(); ++v) {
          if (module_of[v] == -1) {
            syntax_error(line_no, "node ids have a gap at " + std::to_string(v));
          }
        }
        in_edges = true;
      }
      if (tokens.size() != 4) syntax_error(line_no, "edge line needs: e <u> <v> <weight>");
      const auto u = parse_index(tokens[1], line_no, "endpoint");
      const auto v = parse_index(tokens[2], line_no, "endpoint");
      const double w = parse_weight(tokens[3], line_no);
      edges.push_back({u, v, w});
    } else {
      syntax_error(line_no, "unknown record '" + std::string(tokens[0]) + "'");
    }
  }

  for (std::size_t v = 0; v < module_of.size(); ++v) {
    if (module_of[v] == -1) {
      throw GraphError(GraphErrc::SyntaxError, "node ids have a gap at " + std::to_string(v));
    }
  }
  std::vector<ModuleId> modules(module_of.begin(), module_of.end());
  return build_graph(modules.size(), edges, modules);
}

Graph parse_graph(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph(buffer.str());
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return parse_graph(in);
}

std::string serialize_graph(const Graph& g, std::string_view header) {
  std::string out;
  out.reserve(16 * (g.node_count() + 2 * g.edge_count()));
  std::size_t pos = 0;
  while (pos < header.size()) {
    std::size_t nl = header.find('\n', pos);
    if (nl == std::string_view::npos) nl = header.size();
    out += "# ";
    out += header.substr(pos, nl - pos);
    out += '\n';
    pos = nl + 1;
  }
  char buf[64];
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const int len = std::snprintf(buf, sizeof buf, "n %u %u\n", v, g.module_of(v));
    out.append(buf, static_cast<std::size_t>(len));
  }
  for (const Edge& e : g.edges()) {
    int len = std::snprintf(buf, sizeof buf, "e %u %u ", e.u, e.v);
    out.append(buf, static_cast<std::size_t>(len));
    auto res = std::to_chars(buf, buf + sizeof buf, e.weight);
    out.append(buf, res.ptr);
    out += '\n';
  }
  return out;
}

void write_graph_file(const std::string& path, const Graph& g, std::string_view header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << serialize_graph(g, header);
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

std::string format_score(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

}  // namespace modbc
