#include <algorithm>
#include <bit>
#include <deque>
#include <set>

#include "xc/tseitin.hpp"

namespace xc::tseitin {

EdgeBits EdgeBits::from_string(const std::string& s) {
  EdgeBits b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '0' && s[i] != '1') throw Error("edge bit string must contain only 0/1");
    b.bits_[i] = static_cast<std::uint8_t>(s[i] - '0');
  }
  return b;
}

EdgeBits EdgeBits::from_mask(std::uint64_t mask, std::size_t size) {
  if (size > 64) throw Error("mask form supports at most 64 edges");
  EdgeBits b(size);
  for (std::size_t e = 0; e < size; ++e) b.bits_[e] = static_cast<std::uint8_t>((mask >> e) & 1U);
  return b;
}

bool EdgeBits::none() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

std::size_t EdgeBits::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::uint64_t EdgeBits::to_mask() const {
  if (bits_.size() > 64) throw Error("mask form supports at most 64 edges");
  std::uint64_t m = 0;
  for (std::size_t e = 0; e < bits_.size(); ++e) m |= static_cast<std::uint64_t>(bits_[e]) << e;
  return m;
}

std::string EdgeBits::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

EdgeBits& EdgeBits::operator^=(const EdgeBits& other) {
  if (other.size() != size()) throw Error("edge vectors of different length");
  for (std::size_t e = 0; e < bits_.size(); ++e) bits_[e] ^= other.bits_[e];
  return *this;
}

LabeledGraph::LabeledGraph(int node_count, std::vector<Edge> edges,
                           std::vector<std::uint8_t> labels, std::vector<std::string> names)
    : node_count_(node_count), edges_(std::move(edges)), labels_(std::move(labels)),
      names_(std::move(names)) {
  if (node_count_ < 1) throw Error("graph needs at least one node");
  std::set<Edge> seen;
  for (auto& [u, v] : edges_) {
    if (u == v) throw Error("self-loops are not allowed");
    if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_) throw Error("edge endpoint out of range");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) throw Error("parallel edges are not allowed");
  }
  if (labels_.empty()) {
    labels_.assign(static_cast<std::size_t>(node_count_), 0);
    labels_[0] = 1;
  }
  if (labels_.size() != static_cast<std::size_t>(node_count_)) throw Error("one label per node required");
  unsigned weight = 0;
  for (auto l : labels_) {
    if (l > 1) throw Error("labels must be bits");
    weight += l;
  }
  if (weight % 2 != 1) throw Error("node labeling must have odd weight");
  if (!names_.empty() && names_.size() != static_cast<std::size_t>(node_count_)) {
    throw Error("one name per node required");
  }

  incident_.resize(static_cast<std::size_t>(node_count_));
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    incident_[static_cast<std::size_t>(edges_[e].first)].push_back(e);
    incident_[static_cast<std::size_t>(edges_[e].second)].push_back(e);
  }

  std::vector<bool> reached(static_cast<std::size_t>(node_count_), false);
  std::deque<Node> queue{0};
  reached[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const Node v = queue.front();
    queue.pop_front();
    for (auto e : incident(v)) {
      const Node w = other_end(e, v);
      if (!reached[static_cast<std::size_t>(w)]) {
        reached[static_cast<std::size_t>(w)] = true;
        ++count;
        queue.push_back(w);
      }
    }
  }
  if (count != static_cast<std::size_t>(node_count_)) throw Error("graph must be connected");
}

int LabeledGraph::max_degree() const {
  int d = 0;
  for (Node v = 0; v < node_count_; ++v) d = std::max(d, degree(v));
  return d;
}

std::optional<std::size_t> LabeledGraph::edge_index(Node u, Node v) const {
  if (u > v) std::swap(u, v);
  for (auto e : incident(u)) {
    if (edges_[e] == Edge{u, v}) return e;
  }
  return std::nullopt;
}

Node LabeledGraph::other_end(std::size_t e, Node v) const {
  const auto& [a, b] = edges_[e];
  return a == v ? b : a;
}

LabeledGraph LabeledGraph::with_labels(std::vector<std::uint8_t> labels) const {
  return LabeledGraph(node_count_, edges_, std::move(labels), names_);
}

std::uint8_t node_parity(const LabeledGraph& g, const EdgeBits& z, Node v) {
  std::uint8_t p = 0;
  for (auto e : g.incident(v)) p ^= z[e];
  return p;
}

std::vector<Node> violations(const LabeledGraph& g, const EdgeLabeling& z) {
  if (z.size() != g.edge_count()) throw Error("labeling length must equal |E|");
  std::vector<Node> out;
  for (Node v = 0; v < g.node_count(); ++v) {
    if (node_parity(g, z, v) != g.label(v)) out.push_back(v);
  }
  return out;
}

EdgeLabeling flip_path(const EdgeLabeling& z, const EdgeSet& p) { return z ^ p; }

bool is_eulerian(const LabeledGraph& g, const EdgeSet& q) {
  for (Node v = 0; v < g.node_count(); ++v) {
    if (node_parity(g, q, v) != 0) return false;
  }
  return true;
}

Rational edge_expansion(const LabeledGraph& g) {
  const int n = g.node_count();
  if (n > 24) throw ResourceError("edge expansion enumeration capped at 24 nodes");
  if (n < 2) return Rational(0);
  Rational best(-1);
  for (std::uint32_t u = 1; u < (1U << n); ++u) {
    const int size = std::popcount(u);
    if (2 * size > n) continue;
    int boundary = 0;
    for (const auto& [a, b] : g.edges()) boundary += ((u >> a) & 1U) != ((u >> b) & 1U) ? 1 : 0;
    Rational ratio(boundary, size);
    ratio.canonicalize();
    if (best < 0 || ratio < best) best = ratio;
  }
  return best;
}

}  // namespace xc::tseitin
