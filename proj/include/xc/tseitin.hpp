#pragma once

// Tseitin instances: odd-weight node-labelled graphs, edge labelings over
// Z_2^E, violation sets, path and eulerian flips, the mu_i input
// distributions, k-routing with canonical paths, and the Fano scaffold.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xc/common.hpp"

namespace xc::tseitin {

using Node = int;
using Edge = std::pair<Node, Node>;  // first < second

/// A vector in Z_2^E: an edge labeling, a path, or an eulerian subgraph,
/// in the graph's fixed edge order.
class EdgeBits {
 public:
  EdgeBits() = default;
  explicit EdgeBits(std::size_t size) : bits_(size, 0) {}
  static EdgeBits from_string(const std::string& s);
  /// Bit e = bit e of `mask` (for |E| <= 64).
  static EdgeBits from_mask(std::uint64_t mask, std::size_t size);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t e) const { return bits_[e]; }
  void set(std::size_t e, bool v) { bits_[e] = v ? 1 : 0; }
  void flip(std::size_t e) { bits_[e] ^= 1; }
  bool none() const;
  std::size_t count() const;
  std::uint64_t to_mask() const;
  std::string to_string() const;

  EdgeBits& operator^=(const EdgeBits& other);
  friend EdgeBits operator^(EdgeBits a, const EdgeBits& b) { return a ^= b; }
  friend bool operator==(const EdgeBits&, const EdgeBits&) = default;
  friend auto operator<=>(const EdgeBits&, const EdgeBits&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

using EdgeLabeling = EdgeBits;
using EdgeSet = EdgeBits;

/// Connected simple graph with an odd-weight node labeling.
class LabeledGraph {
 public:
  /// Validates: simple, connected, odd label weight. `labels` empty means
  /// the default labeling (indicator of node 0).
  LabeledGraph(int node_count, std::vector<Edge> edges, std::vector<std::uint8_t> labels = {},
               std::vector<std::string> names = {});

  int node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::uint8_t>& labels() const { return labels_; }
  std::uint8_t label(Node v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& names() const { return names_; }
  /// Incident edge indices, ascending.
  const std::vector<std::size_t>& incident(Node v) const { return incident_[static_cast<std::size_t>(v)]; }
  int degree(Node v) const { return static_cast<int>(incident(v).size()); }
  int max_degree() const;
  /// Edge index of {u, v}, if present.
  std::optional<std::size_t> edge_index(Node u, Node v) const;
  Node other_end(std::size_t e, Node v) const;
  /// |E| - |V| + 1.
  std::size_t cycle_space_dimension() const { return edges_.size() + 1 - static_cast<std::size_t>(node_count_); }

  LabeledGraph with_labels(std::vector<std::uint8_t> labels) const;

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> labels_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> incident_;
};

/// z(v): mod-2 sum of labels on edges at v.
std::uint8_t node_parity(const LabeledGraph& g, const EdgeBits& z, Node v);

/// viol(z) = {v : z(v) != l(v)}, ascending. Always of odd size.
std::vector<Node> violations(const LabeledGraph& g, const EdgeLabeling& z);

/// z^p = z + p.
EdgeLabeling flip_path(const EdgeLabeling& z, const EdgeSet& p);

/// True iff every node has even degree in q.
bool is_eulerian(const LabeledGraph& g, const EdgeSet& q);

/// Deterministic labeling with viol = S: BFS spanning tree from node 0,
/// leaves fixed upward via their parent edges. Throws for even |S|.
EdgeLabeling make_input_with_violations(const LabeledGraph& g, const std::vector<Node>& s);

/// Fundamental cycles of the BFS spanning tree, one per non-tree edge in
/// edge order; dimension |E| - |V| + 1.
std::vector<EdgeSet> cycle_space_basis(const LabeledGraph& g);

/// Uniform eulerian subgraph: independent fair coin per basis vector.
EdgeSet sample_eulerian(const LabeledGraph& g, Rng& rng);
EdgeSet sample_eulerian(const std::vector<EdgeSet>& basis, std::size_t edges, Rng& rng);

/// Combination of basis vectors selected by the bits of `mask`.
EdgeSet combine(const std::vector<EdgeSet>& basis, std::size_t edges, std::uint64_t mask);

/// Uniformly random i-subset of V (ascending).
std::vector<Node> random_subset(int node_count, int i, Rng& rng);

/// mu_i: random i-set T, fixed z with viol(z) = T, random eulerian q,
/// output z + q. Throws for even i or i > |V|.
EdgeLabeling sample_mu(const LabeledGraph& g, int i, Rng& rng);

/// Exact law of the two-stage mu_i process, indexed by labeling mask, by
/// enumerating every i-set T and every eulerian q (|E| <= 24).
std::vector<Rational> mu_distribution(const LabeledGraph& g, int i);

/// Shortest path (edge set) from s to t avoiding `blocked` edges, BFS with
/// ascending neighbour order; nullopt if disconnected.
std::optional<EdgeSet> shortest_path(const LabeledGraph& g, Node s, Node t,
                                     const EdgeSet* blocked = nullptr);

/// Raised when a pairing cannot be routed by edge-disjoint paths.
class RoutingError : public Error {
 public:
  using Error::Error;
};

struct TerminalSet {
  std::vector<Node> terminals;  // 2k + 1 distinct nodes
  int k = 0;
};

/// All terminals of a complete graph K_m: k = floor((m - 1) / 2).
TerminalSet complete_terminals(const LabeledGraph& g);

using Pairing = std::vector<std::pair<Node, Node>>;

/// A path as an ordered node sequence plus its edge set.
struct Path {
  std::vector<Node> nodes;
  EdgeSet edges;
};

/// Canonical edge-disjoint paths, path i joining pairing[i]. Direct edges
/// when every pair is adjacent; otherwise exhaustive backtracking over
/// simple paths in shortest-first order. Deterministic for fixed inputs.
/// Throws RoutingError when no edge-disjoint routing exists.
std::vector<Path> route_pairing(const LabeledGraph& g, const TerminalSet& t, const Pairing& pairing);

/// Exhaustively certifies k-routability: every perfect pairing of every
/// 2k-subset of the terminals is routable. Returns the number of pairings
/// checked; throws RoutingError with the failing pairing otherwise.
std::size_t certify_routable(const LabeledGraph& g, const TerminalSet& t);

/// Lines of the Fano plane over points 0..6 (points 1..7 shifted by one).
const std::array<std::array<int, 3>, 7>& fano_lines();

struct FanoScaffold {
  std::array<Node, 7> embedded{};            // v_1..v_7
  Pairing residual;                          // pairing of T minus the embedded nodes
  std::array<Pairing, 7> line_pairings;      // P^e for each line, as graph nodes
  std::array<std::array<Path, 2>, 7> line_paths;  // {B_1^e, B_2^e}
  EdgeLabeling z7;
  std::array<EdgeLabeling, 7> z_lines;       // z_e = z7 flipped on B_1^e and B_2^e

  /// Line e as graph nodes (ascending).
  std::vector<Node> line_nodes(std::size_t e) const;
};

/// Random injection of the 7 points into T, random residual pairing, random
/// 7-violation input; per line e routes P^e together with the residual
/// pairing and flips the two P^e paths. Asserts viol(z_e) = e. Requires
/// k >= 5.
FanoScaffold build_fano_scaffold(const LabeledGraph& g, const TerminalSet& t, Rng& rng);

/// The coupling for a pair of lines {e, e'} meeting at c: z_1 with viol
/// {c}, the pairing P' of T minus c (e - c, e' - c, the remaining two
/// points, then the residual pairing) and its canonical paths B', the
/// line paths B^e, B^e'.
struct NearDisjointnessCoupling {
  std::size_t e = 0;
  std::size_t e_prime = 0;
  EdgeSet six_path_difference;   // B'_j + B'_i + B^e_1 + B^e_2 + B^e'_1 + B^e'_2
  bool difference_eulerian = false;
  bool labelings_agree = false;  // viol(z_e') == viol(z_1 flipped on B'_j)
};

NearDisjointnessCoupling near_disjointness_coupling(const LabeledGraph& g, const TerminalSet& t,
                                                    const FanoScaffold& s, std::size_t e,
                                                    std::size_t e_prime);

/// Minimum over node sets U with 1 <= |U| <= |V|/2 of |boundary(U)| / |U|.
Rational edge_expansion(const LabeledGraph& g);

/// Built-in corpus: "edge", "path3", "star4", "triangle", "c5", "k4".."k12",
/// "petersen", "cube", "k33", "prism". Throws for unknown names.
LabeledGraph builtin_graph(const std::string& name);
std::vector<std::string> builtin_graph_names();
LabeledGraph complete_graph(int m);
LabeledGraph cycle_graph(int m);

}  // namespace xc::tseitin
