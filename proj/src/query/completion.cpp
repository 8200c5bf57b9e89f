#include <algorithm>
#include <numeric>

#include "xc/query.hpp"

namespace xc::query {

namespace {

struct Components {
  std::vector<int> of;                 // component id per node
  std::vector<std::vector<Node>> nodes;
};

// Components of the graph on all nodes using only edges outside `care`.
Components components_outside(const LabeledGraph& g, Mask care) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<Node> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Node v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if ((care >> e) & 1U) continue;
    const Node a = find(g.edges()[e].first);
    const Node b = find(g.edges()[e].second);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  Components c;
  c.of.assign(n, -1);
  std::vector<int> id(n, -1);
  for (Node v = 0; v < g.node_count(); ++v) {
    const auto r = static_cast<std::size_t>(find(v));
    if (id[r] < 0) {
      id[r] = static_cast<int>(c.nodes.size());
      c.nodes.emplace_back();
    }
    c.of[static_cast<std::size_t>(v)] = id[r];
    c.nodes[static_cast<std::size_t>(id[r])].push_back(v);
  }
  return c;
}

bool violated(const LabeledGraph& g, Mask z, Node v) {
  int parity = 0;
  for (auto e : g.incident(v)) parity ^= static_cast<int>((z >> e) & 1U);
  return parity != g.label(v);
}

std::vector<Node> violations_of(const LabeledGraph& g, Mask z) {
  std::vector<Node> out;
  for (Node v = 0; v < g.node_count(); ++v) {
    if (violated(g, z, v)) out.push_back(v);
  }
  return out;
}

void require_mask_size(const LabeledGraph& g) {
  if (g.edge_count() > 64) throw ResourceError("conjunction masks support at most 64 edges");
}

}  // namespace

Completion complete_conjunction(const Term& c, const LabeledGraph& g) {
  require_mask_size(g);
  Completion out;
  const Mask care = c.conjunction.care;
  out.original_reads = c.conjunction.read_set();
  const auto comps = components_outside(g, care);
  const auto half = static_cast<std::size_t>(g.node_count()) / 2;
  Mask added = 0;
  for (std::size_t k = 0; k < comps.nodes.size(); ++k) {
    if (comps.nodes[k].size() > half) continue;
    std::vector<std::size_t> edges;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if ((care >> e) & 1U) continue;
      if (comps.of[static_cast<std::size_t>(g.edges()[e].first)] == static_cast<int>(k)) edges.push_back(e);
    }
    if (edges.empty()) continue;
    for (auto e : edges) added |= Mask{1} << e;
    out.absorbed_components.push_back(std::move(edges));
  }
  const Conjunction full{care | added, c.conjunction.value};
  out.completed_reads = full.read_set();
  for (Mask s = added;; s = (s - 1) & added) {
    out.terms.push_back(Term{c.weight, Conjunction{full.care, full.value | s}});
    if (s == 0) break;
  }
  std::reverse(out.terms.begin(), out.terms.end());
  out.growth = out.original_reads.empty()
                   ? Rational(1)
                   : Rational(static_cast<long>(out.completed_reads.size()),
                              static_cast<long>(out.original_reads.size()));
  out.growth.canonicalize();
  return out;
}

ConicalJunta complete_junta(const ConicalJunta& h, const LabeledGraph& g) {
  ConicalJunta out;
  for (const auto& t : h.terms) {
    auto c = complete_conjunction(t, g);
    for (auto& term : c.terms) out.terms.push_back(std::move(term));
  }
  return out;
}

std::vector<Node> witnessed_violations(const Conjunction& c, const LabeledGraph& g) {
  require_mask_size(g);
  std::vector<Node> out;
  for (Node v = 0; v < g.node_count(); ++v) {
    const auto& inc = g.incident(v);
    if (!std::all_of(inc.begin(), inc.end(), [&](std::size_t e) { return c.reads(e); })) continue;
    if (violated(g, c.value, v)) out.push_back(v);
  }
  return out;
}

bool complement_connected(const Conjunction& c, const LabeledGraph& g) {
  require_mask_size(g);
  const auto comps = components_outside(g, c.care);
  int seen = -1;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (c.reads(e)) continue;
    const int k = comps.of[static_cast<std::size_t>(g.edges()[e].first)];
    if (seen >= 0 && k != seen) return false;
    seen = k;
  }
  return true;
}

json TwoWitnessReport::to_json() const {
  json arr = json::array();
  for (const auto& t : terms) {
    json j{{"term", t.term}, {"witnessed", t.witnessed}, {"passes", t.passes}};
    if (t.fooling_input) {
      j["fooling_input"] = t.fooling_input->to_string();
      j["fooling_violations"] = t.fooling_violations;
      j["fooling_accepted"] = t.fooling_accepted;
    }
    arr.push_back(j);
  }
  return json{{"ok", ok()}, {"failing", failing}, {"terms", arr}};
}

TwoWitnessReport verify_two_witness_claim(const ConicalJunta& h, const LabeledGraph& g) {
  require_mask_size(g);
  TwoWitnessReport report;
  for (std::size_t i = 0; i < h.terms.size(); ++i) {
    const auto& term = h.terms[i];
    TermVerdict v;
    v.term = i;
    v.witnessed = witnessed_violations(term.conjunction, g);
    v.passes = v.witnessed.size() >= 2 || term.weight == 0;
    if (!v.passes) {
      ++report.failing;
      const Conjunction& c = term.conjunction;
      const auto comps = components_outside(g, c.care);
      tseitin::EdgeSet blocked = from_mask(c.care, g.edge_count());
      Mask z = c.value;
      // Pair unwitnessed violations inside a component of G - S.
      while (true) {
        auto viol = violations_of(g, z);
        if (viol.size() <= 1) break;
        std::vector<Node> movable;
        for (Node u : viol) {
          if (std::find(v.witnessed.begin(), v.witnessed.end(), u) == v.witnessed.end()) movable.push_back(u);
        }
        bool flipped = false;
        for (std::size_t a = 0; a < movable.size() && !flipped; ++a) {
          for (std::size_t b = a + 1; b < movable.size() && !flipped; ++b) {
            const auto ca = comps.of[static_cast<std::size_t>(movable[a])];
            if (ca != comps.of[static_cast<std::size_t>(movable[b])]) continue;
            if (auto p = tseitin::shortest_path(g, movable[a], movable[b], &blocked)) {
              z ^= p->to_mask();
              flipped = true;
            }
          }
        }
        if (!flipped) break;
      }
      v.fooling_input = from_mask(z, g.edge_count());
      v.fooling_violations = violations_of(g, z);
      v.fooling_accepted = c.accepts(z) && v.fooling_violations.size() == 1;
    }
    report.terms.push_back(std::move(v));
  }
  return report;
}

Conjunction witness_conjunction(const LabeledGraph& g, Node v1, Node v2) {
  require_mask_size(g);
  if (v1 == v2) throw Error("witness nodes must differ");
  Mask care = 0;
  for (Node v : {v1, v2}) {
    for (auto e : g.incident(v)) care |= Mask{1} << e;
  }
  Mask value = 0;
  for (auto [v, other] : {std::pair{v1, v2}, std::pair{v2, v1}}) {
    if (violated(g, value, v)) continue;
    std::optional<std::size_t> pick;
    Node best = g.node_count();
    for (auto e : g.incident(v)) {
      const Node x = g.other_end(e, v);
      if (x != other && x < best) {
        best = x;
        pick = e;
      }
    }
    if (!pick) throw Error("node " + std::to_string(v) + " has no neighbour besides " + std::to_string(other));
    value |= Mask{1} << *pick;
  }
  return Conjunction{care, value};
}

}  // namespace xc::query
