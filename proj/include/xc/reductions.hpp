#pragma once

// Tseitin -> monotone CSP-SAT, and CSP-SAT -> the conflict graph K whose
// maximal independent sets are the minterms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xc/gadget.hpp"
#include "xc/matrix.hpp"
#include "xc/report.hpp"
#include "xc/tseitin.hpp"

namespace xc::reductions {

/// Monotone CSP-SAT: variables L with alphabet sigma, constraints R each
/// reading var(c). Input bits are constraint-major; within a constraint,
/// local assignments are lexicographic with the first variable most
/// significant.
class CspSatSpec {
 public:
  CspSatSpec(int sigma, int variables, std::vector<std::vector<int>> vars);

  int sigma() const { return sigma_; }
  int variable_count() const { return variables_; }
  std::size_t constraint_count() const { return vars_.size(); }
  const std::vector<int>& vars(std::size_t c) const { return vars_[c]; }
  std::size_t local_count(std::size_t c) const { return local_counts_[c]; }
  std::size_t offset(std::size_t c) const { return offsets_[c]; }
  /// m = sum_c sigma^|var(c)|.
  std::size_t input_length() const { return length_; }
  /// d = max |var(c)|.
  int max_arity() const;

  /// Bit index of (c, local assignment).
  std::size_t bit(std::size_t c, std::size_t local) const { return offsets_[c] + local; }
  /// Constraint and local index of an input bit.
  std::pair<std::size_t, std::size_t> locate(std::size_t bit) const;
  /// Local assignment index of a global assignment restricted to var(c).
  std::size_t restrict(std::size_t c, const std::vector<int>& assignment) const;
  /// Values of var(c) under local assignment `local`.
  std::vector<int> decode(std::size_t c, std::size_t local) const;
  /// Constraints in BFS order of the bipartite graph H from constraint 0.
  const std::vector<std::size_t>& search_order() const { return order_; }

  json to_json() const;

 private:
  int sigma_;
  int variables_;
  std::vector<std::vector<int>> vars_;
  std::vector<std::size_t> local_counts_;
  std::vector<std::size_t> offsets_;
  std::size_t length_ = 0;
  std::vector<std::size_t> order_;
};

/// L = E(G), R = V(G), var(v) = edges at v in edge order.
CspSatSpec build_csp_spec(const tseitin::LabeledGraph& g, int alphabet);

/// A truth table per constraint, concatenated.
struct CspInput {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  std::size_t count() const;
  std::string to_string() const;
  static CspInput from_string(const std::string& s);
  friend bool operator==(const CspInput&, const CspInput&) = default;
  friend auto operator<=>(const CspInput&, const CspInput&) = default;
};

/// Index manifest: one entry per bit {bit, constraint, assignment}.
json input_manifest(const CspSatSpec& spec);

/// One 1 per constraint, at the restriction of `assignment`.
CspInput alice_encode(const CspSatSpec& spec, const std::vector<int>& assignment);

/// t_v(a) = 1 iff the edge labels g(a_e, y_e) leave v unviolated.
CspInput bob_encode(const CspSatSpec& spec, const tseitin::LabeledGraph& g, const gadget::Gadget& gad,
                    const std::vector<int>& y);

/// A satisfying global assignment, if any (backtracking in search order).
std::optional<std::vector<int>> eval_sat(const CspSatSpec& spec, const CspInput& input);

/// {i : x_i = 1, y_i = 0}.
std::vector<std::size_t> kw_witnesses(const CspInput& x, const CspInput& y);

struct ParsimonyResult {
  std::size_t violations = 0;
  std::size_t kw_witnesses = 0;
  bool nodewise = true;  // v violated iff Alice's 1 at v sits on a Bob 0
  bool ok() const { return nodewise && violations == kw_witnesses; }
};

ParsimonyResult check_parsimony(const CspSatSpec& spec, const tseitin::LabeledGraph& g,
                                const gadget::Gadget& gad, const std::vector<int>& x,
                                const std::vector<int>& y);

/// Conflict graph K: one node per input bit, edges between inconsistent
/// local assignments (which includes each constraint's clique).
class ConflictGraph {
 public:
  explicit ConflictGraph(const CspSatSpec& spec);

  std::size_t node_count() const { return n_; }
  bool adjacent(std::size_t u, std::size_t v) const { return (adj_[u][v >> 6] >> (v & 63)) & 1U; }
  std::size_t degree(std::size_t u) const;
  std::size_t max_degree() const;
  std::size_t edge_count() const;
  bool independent(const CspInput& x) const;

  /// All maximal independent sets (Bron-Kerbosch with pivoting), as inputs,
  /// sorted. Throws ResourceError past `limit` sets.
  std::vector<CspInput> maximal_independent_sets(std::size_t limit = 1'000'000) const;

  json to_json(const CspSatSpec& spec) const;
  /// "p edge n m" header then one "u v" line per edge (0-based).
  std::string to_edge_list() const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> adj_;
};

/// Minterms of SAT by brute force over all 2^m inputs (m <= 22).
std::vector<CspInput> brute_force_minterms(const CspSatSpec& spec);

/// alice_encode over every global assignment, sorted.
std::vector<CspInput> encoded_assignments(const CspSatSpec& spec, std::size_t limit = 1'000'000);

/// n - 1 - |x & y| with n = |R|. Throws if x is not independent, SAT(y) = 1,
/// or the entry is negative.
std::int64_t slack_entry_is(const CspSatSpec& spec, const ConflictGraph& k, const CspInput& x,
                            const CspInput& y);
/// Same without the independence and SAT checks (for bulk use).
std::int64_t slack_entry_unchecked(const CspSatSpec& spec, const CspInput& x, const CspInput& y);

struct MintermDecomposition {
  CspInput minterm;   // x'
  CspInput residual;  // x''
  std::int64_t entry = 0;           // |x & ~y| - 1
  std::int64_t minterm_entry = 0;   // |x' & ~y| - 1
  std::int64_t residual_entry = 0;  // |x'' & ~y|
  bool identity_holds() const { return entry == minterm_entry + residual_entry; }
};

MintermDecomposition minterm_decompose(const CspSatSpec& spec, const CspInput& x, const CspInput& y);

/// The lifted witness matrix on (x, y) pairs against the slack matrix on
/// (alice_encode(x), bob_encode(y)).
struct ChainReport {
  IntMatrix witness;
  IntMatrix slack;
  std::size_t mismatches = 0;
  bool ok() const { return mismatches == 0; }
};

ChainReport chain_check(const tseitin::LabeledGraph& g, const gadget::Gadget& gad,
                        const std::vector<std::vector<int>>& xs, const std::vector<std::vector<int>>& ys);

}  // namespace xc::reductions
