#include <map>

#include "xc/tseitin.hpp"

namespace xc::tseitin {

LabeledGraph complete_graph(int m) {
  if (m < 1) throw Error("complete graph needs at least one node");
  std::vector<Edge> edges;
  for (Node u = 0; u < m; ++u) {
    for (Node v = u + 1; v < m; ++v) edges.emplace_back(u, v);
  }
  return LabeledGraph(m, std::move(edges));
}

LabeledGraph cycle_graph(int m) {
  if (m < 3) throw Error("cycle needs at least three nodes");
  std::vector<Edge> edges;
  for (Node v = 0; v < m; ++v) edges.emplace_back(v, (v + 1) % m);
  return LabeledGraph(m, std::move(edges));
}

namespace {

const std::map<std::string, std::pair<int, std::vector<Edge>>>& fixed_graphs() {
  static const std::map<std::string, std::pair<int, std::vector<Edge>>> graphs{
      {"edge", {2, {{0, 1}}}},
      {"path3", {3, {{0, 1}, {1, 2}}}},
      {"star4", {4, {{0, 1}, {0, 2}, {0, 3}}}},
      {"petersen", {10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},
                         {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                         {5, 7}, {7, 9}, {6, 9}, {6, 8}, {5, 8}}}},
      {"cube", {8, {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3},
                    {2, 6}, {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7}}}},
      {"k33", {6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}}}},
      {"prism", {6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}}}},
  };
  return graphs;
}

}  // namespace

LabeledGraph builtin_graph(const std::string& name) {
  if (name == "triangle") {
    return LabeledGraph(3, {{0, 1}, {1, 2}, {0, 2}}, {}, {"a", "b", "c"});
  }
  if (name == "c5") return cycle_graph(5);
  const auto& graphs = fixed_graphs();
  if (const auto it = graphs.find(name); it != graphs.end()) return LabeledGraph(it->second.first, it->second.second);
  if (name.size() >= 2 && name[0] == 'k' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
    const int m = std::stoi(name.substr(1));
    if (m < 4 || m > 12) throw Error("unknown built-in graph: " + name);
    return complete_graph(m);
  }
  throw Error("unknown built-in graph: " + name);
}

std::vector<std::string> builtin_graph_names() {
  std::vector<std::string> names{"edge", "path3", "star4", "triangle", "c5"};
  for (int m = 4; m <= 12; ++m) names.push_back("k" + std::to_string(m));
  for (const char* n : {"petersen", "cube", "k33", "prism"}) names.emplace_back(n);
  return names;
}

}  // namespace xc::tseitin
