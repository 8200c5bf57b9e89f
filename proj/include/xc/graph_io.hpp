#pragma once

// Graph files: JSON {"nodes", "edges", "labels"} or a DIMACS-style text
// ("p edge n m", "e u v" with 1-based nodes, optional "l v" labelled nodes).

#include <string>

#include "xc/report.hpp"
#include "xc/tseitin.hpp"

namespace xc::io {

tseitin::LabeledGraph graph_from_json(const json& j);
json graph_to_json(const tseitin::LabeledGraph& g);

tseitin::LabeledGraph graph_from_dimacs(const std::string& text);
std::string graph_to_dimacs(const tseitin::LabeledGraph& g);

/// Reads a file, choosing the format by a leading '{'.
tseitin::LabeledGraph read_graph_file(const std::string& path);

/// A builtin name, or a path to a graph file.
tseitin::LabeledGraph resolve_graph(const std::string& source);

}  // namespace xc::io
