#include <algorithm>
#include <deque>
#include <numeric>

#include "xc/tseitin.hpp"

namespace xc::tseitin {

namespace {

struct SpanningTree {
  std::vector<Node> order;              // BFS order from node 0
  std::vector<std::ptrdiff_t> parent_edge;  // -1 at the root
  std::vector<bool> tree_edge;
};

SpanningTree bfs_tree(const LabeledGraph& g) {
  SpanningTree t;
  const auto n = static_cast<std::size_t>(g.node_count());
  t.parent_edge.assign(n, -1);
  t.tree_edge.assign(g.edge_count(), false);
  std::vector<bool> seen(n, false);
  std::deque<Node> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    t.order.push_back(v);
    for (auto e : g.incident(v)) {
      const Node w = g.other_end(e, v);
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        t.parent_edge[static_cast<std::size_t>(w)] = static_cast<std::ptrdiff_t>(e);
        t.tree_edge[e] = true;
        queue.push_back(w);
      }
    }
  }
  return t;
}

}  // namespace

EdgeLabeling make_input_with_violations(const LabeledGraph& g, const std::vector<Node>& s) {
  if (s.size() % 2 == 0) throw Error("prescribed violation set must have odd size");
  std::vector<std::uint8_t> target(g.labels());
  std::vector<bool> member(static_cast<std::size_t>(g.node_count()), false);
  for (Node v : s) {
    if (v < 0 || v >= g.node_count()) throw Error("violation node out of range");
    if (member[static_cast<std::size_t>(v)]) throw Error("violation set has repeated nodes");
    member[static_cast<std::size_t>(v)] = true;
    target[static_cast<std::size_t>(v)] ^= 1;
  }
  const auto tree = bfs_tree(g);
  EdgeLabeling z(g.edge_count());
  for (auto it = tree.order.rbegin(); it != tree.order.rend(); ++it) {
    const Node v = *it;
    const auto pe = tree.parent_edge[static_cast<std::size_t>(v)];
    if (pe < 0) continue;
    if (node_parity(g, z, v) != target[static_cast<std::size_t>(v)]) z.flip(static_cast<std::size_t>(pe));
  }
  return z;
}

std::vector<EdgeSet> cycle_space_basis(const LabeledGraph& g) {
  const auto tree = bfs_tree(g);
  auto root_path = [&](Node v) {
    EdgeSet p(g.edge_count());
    while (tree.parent_edge[static_cast<std::size_t>(v)] >= 0) {
      const auto e = static_cast<std::size_t>(tree.parent_edge[static_cast<std::size_t>(v)]);
      p.flip(e);
      v = g.other_end(e, v);
    }
    return p;
  };
  std::vector<EdgeSet> basis;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (tree.tree_edge[e]) continue;
    EdgeSet cycle = root_path(g.edges()[e].first) ^ root_path(g.edges()[e].second);
    cycle.flip(e);
    basis.push_back(std::move(cycle));
  }
  return basis;
}

EdgeSet combine(const std::vector<EdgeSet>& basis, std::size_t edges, std::uint64_t mask) {
  EdgeSet q(edges);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if ((mask >> i) & 1U) q ^= basis[i];
  }
  return q;
}

EdgeSet sample_eulerian(const std::vector<EdgeSet>& basis, std::size_t edges, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  EdgeSet q(edges);
  for (const auto& b : basis) {
    if (coin(rng)) q ^= b;
  }
  return q;
}

EdgeSet sample_eulerian(const LabeledGraph& g, Rng& rng) {
  return sample_eulerian(cycle_space_basis(g), g.edge_count(), rng);
}

std::vector<Node> random_subset(int node_count, int i, Rng& rng) {
  if (i < 0 || i > node_count) throw Error("subset size out of range");
  std::vector<Node> all(static_cast<std::size_t>(node_count));
  std::iota(all.begin(), all.end(), 0);
  // partial Fisher-Yates
  for (int k = 0; k < i; ++k) {
    std::uniform_int_distribution<int> pick(k, node_count - 1);
    std::swap(all[static_cast<std::size_t>(k)], all[static_cast<std::size_t>(pick(rng))]);
  }
  all.resize(static_cast<std::size_t>(i));
  std::sort(all.begin(), all.end());
  return all;
}

EdgeLabeling sample_mu(const LabeledGraph& g, int i, Rng& rng) {
  if (i % 2 == 0) throw Error("mu_i requires odd i");
  if (i > g.node_count()) throw Error("mu_i requires i <= |V|");
  const auto t = random_subset(g.node_count(), i, rng);
  const auto z = make_input_with_violations(g, t);
  return z ^ sample_eulerian(g, rng);
}

std::vector<Rational> mu_distribution(const LabeledGraph& g, int i) {
  if (i % 2 == 0 || i < 1 || i > g.node_count()) throw Error("mu_i requires odd i <= |V|");
  if (g.edge_count() > 24) throw ResourceError("mu_i enumeration capped at 24 edges");
  const auto basis = cycle_space_basis(g);
  std::vector<mpz_class> hits(std::size_t{1} << g.edge_count(), 0);
  mpz_class sets = 0;
  std::vector<Node> t(static_cast<std::size_t>(i));
  std::iota(t.begin(), t.end(), 0);
  while (true) {
    ++sets;
    const auto z = make_input_with_violations(g, t);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << basis.size()); ++m) {
      ++hits[(z ^ combine(basis, g.edge_count(), m)).to_mask()];
    }
    int pos = i;
    while (pos > 0 && t[static_cast<std::size_t>(pos - 1)] == g.node_count() - i + pos - 1) --pos;
    if (pos == 0) break;
    ++t[static_cast<std::size_t>(pos - 1)];
    for (int k = pos; k < i; ++k) t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] + 1;
  }
  mpz_class denom = sets;
  denom <<= static_cast<mp_bitcnt_t>(basis.size());
  std::vector<Rational> out(hits.size());
  for (std::size_t z = 0; z < hits.size(); ++z) {
    out[z] = Rational(hits[z], denom);
    out[z].canonicalize();
  }
  return out;
}

}  // namespace xc::tseitin
