#include <algorithm>
#include <deque>
#include <set>

#include "xc/tseitin.hpp"

namespace xc::tseitin {

std::optional<EdgeSet> shortest_path(const LabeledGraph& g, Node s, Node t, const EdgeSet* blocked) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::ptrdiff_t> via(n, -1);
  std::vector<bool> seen(n, false);
  std::deque<Node> queue{s};
  seen[static_cast<std::size_t>(s)] = true;
  while (!queue.empty() && !seen[static_cast<std::size_t>(t)]) {
    const Node v = queue.front();
    queue.pop_front();
    for (auto e : g.incident(v)) {
      if (blocked != nullptr && (*blocked)[e]) continue;
      const Node w = g.other_end(e, v);
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      via[static_cast<std::size_t>(w)] = static_cast<std::ptrdiff_t>(e);
      queue.push_back(w);
    }
  }
  if (!seen[static_cast<std::size_t>(t)]) return std::nullopt;
  EdgeSet p(g.edge_count());
  for (Node v = t; v != s;) {
    const auto e = static_cast<std::size_t>(via[static_cast<std::size_t>(v)]);
    p.flip(e);
    v = g.other_end(e, v);
  }
  return p;
}

TerminalSet complete_terminals(const LabeledGraph& g) {
  const auto m = static_cast<std::size_t>(g.node_count());
  if (g.edge_count() != m * (m - 1) / 2) throw Error("complete_terminals requires a complete graph");
  TerminalSet t;
  for (Node v = 0; v < g.node_count(); ++v) t.terminals.push_back(v);
  t.k = (g.node_count() - 1) / 2;
  t.terminals.resize(static_cast<std::size_t>(2 * t.k + 1));
  return t;
}

namespace {

void validate_pairing(const LabeledGraph& g, const TerminalSet& t, const Pairing& pairing) {
  if (static_cast<int>(pairing.size()) > t.k) throw Error("pairing has more than k pairs");
  std::set<Node> terminals(t.terminals.begin(), t.terminals.end());
  std::set<Node> used;
  for (const auto& [s, u] : pairing) {
    if (s == u) throw Error("pair endpoints must differ");
    for (Node v : {s, u}) {
      if (v < 0 || v >= g.node_count()) throw Error("pair endpoint out of range");
      if (!terminals.contains(v)) throw Error("pair endpoint is not a terminal");
      if (!used.insert(v).second) throw Error("pairs must be disjoint");
    }
  }
}

class Router {
 public:
  Router(const LabeledGraph& g, const Pairing& pairing)
      : g_(g), pairing_(pairing), used_(g.edge_count()), on_path_(static_cast<std::size_t>(g.node_count()), false) {
    neighbours_.resize(static_cast<std::size_t>(g.node_count()));
    for (Node v = 0; v < g.node_count(); ++v) {
      for (auto e : g.incident(v)) neighbours_[static_cast<std::size_t>(v)].push_back({g.other_end(e, v), e});
      std::sort(neighbours_[static_cast<std::size_t>(v)].begin(), neighbours_[static_cast<std::size_t>(v)].end());
    }
  }

  bool solve(std::size_t i) {
    if (i == pairing_.size()) return true;
    const auto [s, t] = pairing_[i];
    for (int length = 1; length < g_.node_count(); ++length) {
      current_ = Path{{s}, EdgeSet(g_.edge_count())};
      on_path_[static_cast<std::size_t>(s)] = true;
      const bool ok = extend(i, t, length);
      on_path_[static_cast<std::size_t>(s)] = false;
      if (ok) return true;
    }
    return false;
  }

  std::vector<Path> paths;

 private:
  // Depth-first over simple paths of exactly `remaining` more edges.
  bool extend(std::size_t i, Node target, int remaining) {
    const Node v = current_.nodes.back();
    if (remaining == 0) {
      if (v != target) return false;
      Path saved = current_;
      used_ ^= saved.edges;
      paths.push_back(saved);
      for (Node u : saved.nodes) on_path_[static_cast<std::size_t>(u)] = false;
      const bool ok = solve(i + 1);
      for (Node u : saved.nodes) on_path_[static_cast<std::size_t>(u)] = true;
      current_ = std::move(saved);
      if (ok) return true;
      paths.pop_back();
      used_ ^= current_.edges;
      return false;
    }
    if (v == target) return false;
    for (const auto& [w, e] : neighbours_[static_cast<std::size_t>(v)]) {
      if (used_[e] || on_path_[static_cast<std::size_t>(w)]) continue;
      on_path_[static_cast<std::size_t>(w)] = true;
      current_.nodes.push_back(w);
      current_.edges.flip(e);
      const bool ok = extend(i, target, remaining - 1);
      current_.edges.flip(e);
      current_.nodes.pop_back();
      on_path_[static_cast<std::size_t>(w)] = false;
      if (ok) return true;
    }
    return false;
  }

  const LabeledGraph& g_;
  const Pairing& pairing_;
  EdgeSet used_;
  std::vector<bool> on_path_;
  std::vector<std::vector<std::pair<Node, std::size_t>>> neighbours_;
  Path current_;
};

}  // namespace

std::vector<Path> route_pairing(const LabeledGraph& g, const TerminalSet& t, const Pairing& pairing) {
  validate_pairing(g, t, pairing);

  std::vector<Path> direct;
  for (const auto& [s, u] : pairing) {
    const auto e = g.edge_index(s, u);
    if (!e) break;
    EdgeSet edges(g.edge_count());
    edges.flip(*e);
    direct.push_back(Path{{s, u}, std::move(edges)});
  }
  if (direct.size() == pairing.size()) return direct;

  Router router(g, pairing);
  if (!router.solve(0)) {
    std::string msg = "no edge-disjoint routing for pairing";
    for (const auto& [s, u] : pairing) msg += " {" + std::to_string(s) + "," + std::to_string(u) + "}";
    throw RoutingError(msg);
  }
  return router.paths;
}

std::size_t certify_routable(const LabeledGraph& g, const TerminalSet& t) {
  if (t.terminals.size() != static_cast<std::size_t>(2 * t.k + 1)) throw Error("terminal set must have 2k+1 nodes");
  std::size_t checked = 0;
  for (std::size_t skip = 0; skip < t.terminals.size(); ++skip) {
    std::vector<Node> rest;
    for (std::size_t i = 0; i < t.terminals.size(); ++i) {
      if (i != skip) rest.push_back(t.terminals[i]);
    }
    Pairing pairing;
    std::vector<bool> taken(rest.size(), false);
    auto recurse = [&](auto&& self) -> void {
      std::size_t first = 0;
      while (first < rest.size() && taken[first]) ++first;
      if (first == rest.size()) {
        route_pairing(g, t, pairing);
        ++checked;
        return;
      }
      taken[first] = true;
      for (std::size_t j = first + 1; j < rest.size(); ++j) {
        if (taken[j]) continue;
        taken[j] = true;
        pairing.emplace_back(rest[first], rest[j]);
        self(self);
        pairing.pop_back();
        taken[j] = false;
      }
      taken[first] = false;
    };
    recurse(recurse);
  }
  return checked;
}

}  // namespace xc::tseitin
