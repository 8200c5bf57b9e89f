#include <algorithm>
#include <bit>
#include <functional>

#include "xc/query.hpp"

namespace xc::query {

std::size_t DecisionTree::add_leaf(Node answer) {
  Vertex v;
  v.answer = answer;
  vertices_.push_back(v);
  return vertices_.size() - 1;
}

std::size_t DecisionTree::add_query(int edge, std::size_t zero, std::size_t one) {
  if (edge < 0) throw Error("query edge must be nonnegative");
  if (zero >= vertices_.size() || one >= vertices_.size()) throw Error("child vertex does not exist");
  Vertex v;
  v.edge = edge;
  v.child = {zero, one};
  vertices_.push_back(v);
  return vertices_.size() - 1;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(vertices_.begin(), vertices_.end(),
                                                [](const Vertex& v) { return v.edge < 0; }));
}

int DecisionTree::height() const {
  if (vertices_.empty()) return 0;
  std::function<int(std::size_t)> depth = [&](std::size_t i) -> int {
    const auto& v = vertices_[i];
    if (v.edge < 0) return 0;
    return 1 + std::max(depth(v.child[0]), depth(v.child[1]));
  };
  return depth(root_);
}

Node DecisionTree::evaluate(Mask z) const {
  if (vertices_.empty()) throw Error("empty decision tree");
  std::size_t i = root_;
  while (vertices_[i].edge >= 0) i = vertices_[i].child[(z >> vertices_[i].edge) & 1U];
  return vertices_[i].answer;
}

std::vector<DecisionTree::Leaf> DecisionTree::leaves() const {
  std::vector<Leaf> out;
  if (vertices_.empty()) return out;
  std::function<void(std::size_t, Conjunction)> walk = [&](std::size_t i, Conjunction path) {
    const auto& v = vertices_[i];
    if (v.edge < 0) {
      out.push_back(Leaf{path, v.answer});
      return;
    }
    const Mask bit = Mask{1} << v.edge;
    for (std::uint8_t b = 0; b < 2; ++b) {
      Conjunction next = path;
      next.care |= bit;
      if (b) next.value |= bit;
      walk(v.child[b], next);
    }
  };
  walk(root_, Conjunction{});
  return out;
}

json DecisionTree::to_json() const {
  json nodes = json::array();
  for (const auto& v : vertices_) {
    if (v.edge < 0) {
      nodes.push_back(json{{"answer", v.answer}});
    } else {
      nodes.push_back(json{{"edge", v.edge}, {"zero", v.child[0]}, {"one", v.child[1]}});
    }
  }
  return json{{"root", root_}, {"height", height()}, {"leaves", leaf_count()}, {"vertices", nodes}};
}

namespace {

struct Parity {
  std::vector<Mask> incidence;
  Mask labels = 0;

  explicit Parity(const LabeledGraph& g) : incidence(static_cast<std::size_t>(g.node_count()), 0) {
    for (Node v = 0; v < g.node_count(); ++v) {
      for (auto e : g.incident(v)) incidence[static_cast<std::size_t>(v)] |= Mask{1} << e;
      if (g.label(v)) labels |= Mask{1} << v;
    }
  }

  bool violated(Mask z, Node v) const {
    const auto parity = static_cast<Mask>(std::popcount(z & incidence[static_cast<std::size_t>(v)]) & 1);
    return parity != ((labels >> v) & 1U);
  }
};

void require_small(const LabeledGraph& g) {
  if (g.edge_count() > 24) throw ResourceError("decision trees are enumerated only up to 24 edges");
}

}  // namespace

DecisionTree full_height_tree(const LabeledGraph& g) {
  require_small(g);
  const Parity p(g);
  const int edges = static_cast<int>(g.edge_count());
  DecisionTree t;
  std::function<std::size_t(int, Mask)> build = [&](int e, Mask z) -> std::size_t {
    if (e == edges) {
      for (Node v = 0; v < g.node_count(); ++v) {
        if (p.violated(z, v)) return t.add_leaf(v);
      }
      throw Error("labeling without a violated node");
    }
    const auto zero = build(e + 1, z);
    const auto one = build(e + 1, z | (Mask{1} << e));
    return t.add_query(e, zero, one);
  };
  t.set_root(build(0, 0));
  return t;
}

DecisionTree node_scan_tree(const LabeledGraph& g) {
  require_small(g);
  const Parity p(g);
  const Node last = g.node_count() - 1;
  DecisionTree t;
  // Queries the remaining edges of node v, then moves to v + 1.
  std::function<std::size_t(Node, std::size_t, Conjunction)> build =
      [&](Node v, std::size_t k, Conjunction known) -> std::size_t {
    if (v == last) return t.add_leaf(last);
    const auto& inc = g.incident(v);
    while (k < inc.size() && known.reads(inc[k])) ++k;
    if (k == inc.size()) {
      if (p.violated(known.value, v)) return t.add_leaf(v);
      return build(v + 1, 0, known);
    }
    const Mask bit = Mask{1} << inc[k];
    Conjunction zero = known, one = known;
    zero.care |= bit;
    one.care |= bit;
    one.value |= bit;
    const auto a = build(v, k + 1, zero);
    const auto b = build(v, k + 1, one);
    return t.add_query(static_cast<int>(inc[k]), a, b);
  };
  t.set_root(build(0, 0, Conjunction{}));
  return t;
}

TreeValidation validate_tree(const DecisionTree& t, const LabeledGraph& g) {
  require_small(g);
  TreeValidation r;
  const auto& vs = t.vertices();
  if (vs.empty()) {
    r.wrong_answers = std::size_t{1} << g.edge_count();
    return r;
  }
  std::function<void(std::size_t, Mask)> walk = [&](std::size_t i, Mask seen) {
    const auto& v = vs[i];
    if (v.edge < 0) return;
    const Mask bit = Mask{1} << v.edge;
    if ((seen & bit) || static_cast<std::size_t>(v.edge) >= g.edge_count()) {
      r.repeated_query = true;
      return;
    }
    walk(v.child[0], seen | bit);
    walk(v.child[1], seen | bit);
  };
  walk(t.root(), 0);
  if (r.repeated_query) return r;
  const Parity p(g);
  const Mask total = Mask{1} << g.edge_count();
  for (Mask z = 0; z < total; ++z) {
    const Node a = t.evaluate(z);
    if (a < 0 || a >= g.node_count() || !p.violated(z, a)) ++r.wrong_answers;
  }
  return r;
}

ConicalJunta tree_to_witness_junta(const DecisionTree& t, const LabeledGraph& g) {
  if (!validate_tree(t, g).ok()) throw Error("decision tree does not solve the Tseitin problem");
  const Parity p(g);
  ConicalJunta h;
  for (const auto& leaf : t.leaves()) {
    for (Node u = 0; u < g.node_count(); ++u) {
      if (u == leaf.answer) continue;
      const Mask local = p.incidence[static_cast<std::size_t>(u)];
      const Mask free = local & ~leaf.path.care;
      const Mask fixed = leaf.path.value & local;
      // Enumerate subsets of the free edges at u.
      for (Mask s = free;; s = (s - 1) & free) {
        const Mask z = fixed | s;
        if (p.violated(z, u)) {
          h.terms.push_back(Term{Rational(1), Conjunction{leaf.path.care | local, leaf.path.value | s}});
        }
        if (s == 0) break;
      }
    }
  }
  return h;
}

}  // namespace xc::query
