#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "xc/graph_io.hpp"

namespace xc::io {

using tseitin::Edge;
using tseitin::LabeledGraph;

LabeledGraph graph_from_json(const json& j) {
  const int n = j.at("nodes").get<int>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    const int u = e.at(0).get<int>();
    const int v = e.at(1).get<int>();
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::vector<std::uint8_t> labels;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::uint8_t>());
  }
  return LabeledGraph(n, std::move(edges), std::move(labels));
}

json graph_to_json(const LabeledGraph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(json::array({u, v}));
  return json{{"nodes", g.node_count()}, {"edges", edges}, {"labels", g.labels()}};
}

LabeledGraph graph_from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::size_t m = 0;
  std::vector<Edge> edges;
  std::vector<std::uint8_t> labels;
  bool any_label = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    auto fail = [&](const std::string& why) {
      return Error("line " + std::to_string(lineno) + ": " + why);
    };
    if (tag == "p") {
      std::string kind;
      if (!(ls >> kind >> n >> m) || kind != "edge" || n <= 0) throw fail("expected 'p edge <n> <m>'");
      labels.assign(static_cast<std::size_t>(n), 0);
    } else if (tag == "e" || tag == "l") {
      if (n < 0) throw fail("missing problem line");
      int u = 0, v = 0;
      if (tag == "e") {
        if (!(ls >> u >> v) || u < 1 || v < 1 || u > n || v > n) throw fail("bad edge");
        edges.emplace_back(std::min(u, v) - 1, std::max(u, v) - 1);
      } else {
        if (!(ls >> u) || u < 1 || u > n) throw fail("bad label node");
        labels[static_cast<std::size_t>(u - 1)] ^= 1;
        any_label = true;
      }
    } else {
      throw fail("unknown line type '" + tag + "'");
    }
  }
  if (n < 0) throw Error("missing problem line");
  if (edges.size() != m) throw Error("edge count does not match problem line");
  if (!any_label) labels.clear();
  return LabeledGraph(n, std::move(edges), std::move(labels));
}

std::string graph_to_dimacs(const LabeledGraph& g) {
  std::ostringstream out;
  out << "p edge " << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  for (int v = 0; v < g.node_count(); ++v) {
    if (g.label(v)) out << "l " << v + 1 << '\n';
  }
  return out.str();
}

LabeledGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return graph_from_json(json::parse(text));
  return graph_from_dimacs(text);
}

LabeledGraph resolve_graph(const std::string& source) {
  const auto names = tseitin::builtin_graph_names();
  if (std::find(names.begin(), names.end(), source) != names.end() || !std::filesystem::exists(source)) {
    return tseitin::builtin_graph(source);
  }
  return read_graph_file(source);
}

}  // namespace xc::io
