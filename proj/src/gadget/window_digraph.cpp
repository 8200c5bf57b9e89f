#include <algorithm>
#include <deque>

#include "xc/gadget.hpp"

namespace xc::gadget {

namespace {

std::vector<bool> reachable(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<bool> seen(adj.size(), false);
  if (adj.empty()) return seen;
  std::deque<int> queue{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<std::vector<int>> reversed(const std::vector<std::vector<int>>& adj) {
  std::vector<std::vector<int>> rev(adj.size());
  for (std::size_t v = 0; v < adj.size(); ++v) {
    for (int w : adj[v]) rev[static_cast<std::size_t>(w)].push_back(static_cast<int>(v));
  }
  return rev;
}

}  // namespace

WindowDigraph window_digraph(const Gadget& g, Bit b) {
  WindowDigraph dg;
  dg.value = b;
  for (int x = 0; x < g.dim(); ++x) {
    for (int y = 0; y < g.dim(); ++y) {
      if (g(x, y) == b) dg.nodes.push_back(Cell{x, y});
    }
  }
  dg.out.resize(dg.nodes.size());
  for (std::size_t i = 0; i < dg.nodes.size(); ++i) {
    for (std::size_t j = 0; j < dg.nodes.size(); ++j) {
      if (i == j) continue;
      if (dg.nodes[i].row == dg.nodes[j].row || dg.nodes[i].col == dg.nodes[j].col) {
        dg.out[i].push_back(static_cast<int>(j));
        ++dg.non_loop_edges;
      }
    }
  }
  return dg;
}

bool WindowDigraph::strongly_connected() const {
  if (nodes.empty()) return false;
  const auto fwd = reachable(out, 0);
  const auto bwd = reachable(reversed(out), 0);
  return std::all_of(fwd.begin(), fwd.end(), [](bool s) { return s; }) &&
         std::all_of(bwd.begin(), bwd.end(), [](bool s) { return s; });
}

bool WindowDigraph::walk_regular() const {
  if (!strongly_connected()) return false;
  std::vector<std::size_t> in(nodes.size(), 0);
  for (const auto& o : out) {
    for (int w : o) ++in[static_cast<std::size_t>(w)];
  }
  const std::size_t deg = out.front().size();
  for (std::size_t v = 0; v < nodes.size(); ++v) {
    if (out[v].size() != deg || in[v] != deg) return false;
  }
  return deg > 0;
}

bool is_regular(const Gadget& g) {
  const int d = g.dim();
  if (d % 2 != 0) return false;
  for (int i = 0; i < d; ++i) {
    int row_ones = 0;
    int col_ones = 0;
    for (int j = 0; j < d; ++j) {
      row_ones += g(i, j);
      col_ones += g(j, i);
    }
    if (2 * row_ones != d || 2 * col_ones != d) return false;
  }
  return window_digraph(g, 0).strongly_connected() && window_digraph(g, 1).strongly_connected();
}

std::vector<int> eulerian_tour(const WindowDigraph& dg) {
  if (!dg.walk_regular()) throw Error("window digraph is not regular; no eulerian tour");
  std::vector<std::size_t> next(dg.nodes.size(), 0);
  std::vector<int> stack{0};
  std::vector<int> circuit;
  while (!stack.empty()) {
    const auto v = static_cast<std::size_t>(stack.back());
    if (next[v] < dg.out[v].size()) {
      stack.push_back(dg.out[v][next[v]++]);
    } else {
      circuit.push_back(stack.back());
      stack.pop_back();
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  circuit.pop_back();
  if (circuit.size() != dg.non_loop_edges) throw Error("eulerian tour does not cover all edges");
  return circuit;
}

std::vector<int> sample_walk(const WindowDigraph& dg, std::span<const int> tour, Rng& rng) {
  if (!dg.walk_regular()) throw Error("walk sampler requires a regular window digraph");
  const std::size_t L = dg.non_loop_edges;
  if (tour.size() != L) throw Error("tour length does not match the digraph");

  std::uniform_int_distribution<std::size_t> pick(0, L - 1);
  std::bernoulli_distribution coin(0.5);
  const std::size_t start = pick(rng);
  const std::size_t shift = pick(rng);

  std::vector<std::size_t> idx;
  idx.reserve(2 * L + 1);
  idx.push_back(start);
  auto fwd = [L](std::size_t i) { return (i + 1) % L; };
  auto back = [L](std::size_t i) { return (i + L - 1) % L; };
  for (std::size_t j = 1; j <= L; ++j) {
    const std::size_t i = idx.back();
    const bool first_option = coin(rng);
    if (j <= shift) {
      if (first_option) {
        idx.push_back(i);
        idx.push_back(fwd(i));
      } else {
        idx.push_back(fwd(i));
        idx.push_back(fwd(i));
      }
    } else if (first_option) {
      idx.push_back(i);
      idx.push_back(i);
    } else {
      idx.push_back(fwd(i));
      idx.push_back(back(fwd(i)));
    }
  }
  std::vector<int> walk;
  walk.reserve(idx.size());
  for (std::size_t i : idx) walk.push_back(tour[i]);
  return walk;
}

}  // namespace xc::gadget
