#pragma once

// Query side: conical juntas over edge labelings, decision trees for the
// Tseitin search problem, LP minimal junta degree, and the mu_i experiments.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xc/common.hpp"
#include "xc/report.hpp"
#include "xc/tseitin.hpp"

namespace xc::query {

using tseitin::LabeledGraph;
using tseitin::Node;

/// Labelings as bit masks (bit e = label of edge e); |E| <= 64.
using Mask = std::uint64_t;

/// A conjunction of literals: accepts z iff (z & care) == value.
struct Conjunction {
  Mask care = 0;
  Mask value = 0;

  static Conjunction from_literals(const std::vector<std::pair<std::size_t, std::uint8_t>>& literals);
  int degree() const;
  bool accepts(Mask z) const { return (z & care) == value; }
  bool reads(std::size_t e) const { return (care >> e) & 1U; }
  std::vector<std::size_t> read_set() const;
  json to_json() const;
  static Conjunction from_json(const json& j);
  friend bool operator==(const Conjunction&, const Conjunction&) = default;
  friend auto operator<=>(const Conjunction&, const Conjunction&) = default;
};

struct Term {
  Rational weight;
  Conjunction conjunction;
};

/// h = sum_C w_C C with w_C >= 0.
struct ConicalJunta {
  std::vector<Term> terms;

  int degree() const;
  json to_json() const;
  static ConicalJunta from_json(const json& j);
};

Rational eval_junta(const ConicalJunta& h, Mask z);

/// h(z) for every z in [0, 2^edges) through the batch kernel; requires
/// integer weights fitting in 32 bits and edges <= 24.
std::vector<std::int64_t> eval_junta_all(const ConicalJunta& h, std::size_t edges);

/// |viol(z)| for every z in [0, 2^|E|) through the batch kernel (|E| <= 24).
std::vector<std::uint8_t> violation_counts(const LabeledGraph& g);

Mask to_mask(const tseitin::EdgeLabeling& z);
tseitin::EdgeLabeling from_mask(Mask z, std::size_t edges);

struct ExactnessReport {
  std::size_t inputs = 0;
  std::size_t mismatches = 0;
  json counterexamples = json::array();
  bool ok() const { return mismatches == 0; }
};

/// h(z) == |viol(z)| - 1 for all z (|E| <= 24).
ExactnessReport check_witness_junta(const ConicalJunta& h, const LabeledGraph& g);

/// h(z) within (|viol(z)| - 1)(1 +- eps) for all z (|E| <= 24).
ExactnessReport check_approximate_junta(const ConicalJunta& h, const LabeledGraph& g, double eps = 0.1);

/// Decision tree: internal nodes query an edge, leaves name a node.
class DecisionTree {
 public:
  struct Vertex {
    int edge = -1;                  // < 0 for a leaf
    std::array<std::size_t, 2> child{};
    Node answer = -1;
  };

  std::size_t add_leaf(Node answer);
  std::size_t add_query(int edge, std::size_t zero, std::size_t one);
  void set_root(std::size_t root) { root_ = root; }

  std::size_t root() const { return root_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t leaf_count() const;
  int height() const;
  Node evaluate(Mask z) const;

  struct Leaf {
    Conjunction path;
    Node answer;
  };
  /// Every leaf with the literals on its root path.
  std::vector<Leaf> leaves() const;

  json to_json() const;

 private:
  std::vector<Vertex> vertices_;
  std::size_t root_ = 0;
};

/// Queries every edge in order, then answers the first violated node.
DecisionTree full_height_tree(const LabeledGraph& g);
/// Scans nodes in order, querying each node's unqueried edges and stopping
/// at the first violated node; the last node is answered by parity.
DecisionTree node_scan_tree(const LabeledGraph& g);

struct TreeValidation {
  bool repeated_query = false;
  std::size_t wrong_answers = 0;
  bool ok() const { return !repeated_query && wrong_answers == 0; }
};

/// Structural check plus exhaustive answers over all 2^|E| inputs.
TreeValidation validate_tree(const DecisionTree& t, const LabeledGraph& g);

/// For each leaf (path P, answer v), each node u != v and each assignment
/// to u's edges consistent with P that violates u: one weight-1 term.
ConicalJunta tree_to_witness_junta(const DecisionTree& t, const LabeledGraph& g);

/// All conjunctions of degree <= d over `edges` coordinates: by degree,
/// then edge subset (lexicographic), then values.
std::vector<Conjunction> conjunctions_up_to(std::size_t edges, int d);

struct LpResult {
  bool feasible = false;
  std::optional<ConicalJunta> junta;  // a feasible point
  std::vector<Rational> farkas;       // y with yA >= 0, yb < 0 when infeasible
  std::size_t rows = 0;
  std::size_t columns = 0;
  json to_json() const;
};

struct LpOptions {
  std::size_t edge_cap = 12;
  std::size_t column_cap = 50000;
};

/// Exact feasibility of {w >= 0 : sum_C w_C C(z) = |viol(z)| - 1 for all z}
/// over conjunctions of degree <= d (rational simplex, Bland's rule).
LpResult min_junta_degree_lp(const LabeledGraph& g, int d, const LpOptions& options = {});

/// Checks y A >= 0 column by column and y b < 0 for the degree-d system.
bool farkas_certifies(const LabeledGraph& g, int d, const std::vector<Rational>& y);

struct DegreeSearch {
  int degree = 0;
  std::vector<std::pair<int, bool>> probes;  // (d, feasible) in probe order
  LpResult witness;                          // feasible LP at `degree`
  std::optional<LpResult> refutation;        // infeasible LP at degree - 1
};

/// Binary search for the least feasible degree in [0, |E|].
DegreeSearch minimal_junta_degree(const LabeledGraph& g, const LpOptions& options = {});

/// Independent oracle: drop terms accepting a zero-target input, then
/// search supports of linearly independent columns for a nonnegative exact
/// solution. Small instances only.
bool brute_force_junta_feasible(const LabeledGraph& g, int d);
int brute_force_minimal_degree(const LabeledGraph& g);

/// Exact rational simplex: feasibility of A x = b, x >= 0.
struct SimplexResult {
  bool feasible = false;
  std::vector<Rational> x;
  std::vector<Rational> farkas;
};
SimplexResult solve_feasibility(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b);

struct Completion {
  std::vector<Term> terms;
  std::vector<std::size_t> original_reads;
  std::vector<std::size_t> completed_reads;
  std::vector<std::vector<std::size_t>> absorbed_components;  // edge sets
  Rational growth;  // |S'| / |S| (1 when S is empty)
};

/// Absorbs every component of G - S with at most |V|/2 nodes into the read
/// set and expands C over all assignments of the new edges.
Completion complete_conjunction(const Term& c, const LabeledGraph& g);
ConicalJunta complete_junta(const ConicalJunta& h, const LabeledGraph& g);

/// Nodes whose incident edges C reads entirely and sees violated.
std::vector<Node> witnessed_violations(const Conjunction& c, const LabeledGraph& g);

/// Whether the edges outside S, with the nodes they touch, form one
/// connected graph (vacuously true when every edge is read).
bool complement_connected(const Conjunction& c, const LabeledGraph& g);

struct TermVerdict {
  std::size_t term = 0;
  std::vector<Node> witnessed;
  bool passes = false;
  std::optional<tseitin::EdgeLabeling> fooling_input;  // for failing terms
  std::vector<Node> fooling_violations;
  bool fooling_accepted = false;
};

struct TwoWitnessReport {
  std::vector<TermVerdict> terms;
  std::size_t failing = 0;
  bool ok() const { return failing == 0; }
  json to_json() const;
};

/// Every term must witness two violations; otherwise builds a 1-violation
/// input the term accepts by pairing off the unwitnessed violations along
/// paths avoiding the read set.
TwoWitnessReport verify_two_witness_claim(const ConicalJunta& h, const LabeledGraph& g);

/// A term reading every edge at v1 and v2 with both violated.
Conjunction witness_conjunction(const LabeledGraph& g, Node v1, Node v2);

/// binom(n-2, i-2) / binom(n, i) for odd i in {3, 5}.
Rational mu_prefactor(int n, int i);
/// mu_prefactor(n, 5) / mu_prefactor(n, 3).
Rational prefactor_ratio(int n);

/// mu_i(C) exactly: sum over i-sets T of the probability that the coset
/// z_T + (cycle space) lands in C, by GF(2) projection onto C's read set.
Rational mu_exact(const Conjunction& c, const LabeledGraph& g, int i);
/// The same by enumerating all 2^|E| labelings (|E| <= 24).
Rational mu_brute_force(const Conjunction& c, const LabeledGraph& g, int i);
/// E_{mu_i}[h] exactly.
Rational junta_expectation(const ConicalJunta& h, const LabeledGraph& g, int i);

struct MuRatioOptions {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::size_t trials = 100000;
};

struct MuRatioReport {
  std::size_t nodes = 0;
  std::vector<Node> witnessed;       // {v1, v2}
  bool exact = true;
  Rational mu3, mu5;
  Rational prefactor3, prefactor5, prefactor_ratio;
  Rational cond3, cond5;             // Pr[C(y_i) = 1]
  std::optional<Rational> ratio;     // mu5 / mu3 when mu3 > 0
  std::optional<Rational> cond_ratio;
  Rational good_event;               // Pr[v4, v5 touch G - S]
  bool decomposition_holds = false;  // mu_i = prefactor_i * cond_i
  bool coupling_holds = false;       // C(y3) = C(y5) on the good event
  std::string coupling_method;
  double mu3_estimate = 0.0, mu5_estimate = 0.0, mu3_stderr = 0.0, mu5_stderr = 0.0;
  std::size_t trials = 0;
  json to_json() const;
};

MuRatioReport measure_mu_ratio(const Conjunction& c, const LabeledGraph& g, const MuRatioOptions& options = {});

}  // namespace xc::query
