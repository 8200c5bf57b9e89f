#pragma once

// The lifted problem TSE_G o g^n: inputs, multi-coordinate windows, block
// flips, the smoothing wrapper and witness matrices.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "xc/gadget.hpp"
#include "xc/matrix.hpp"
#include "xc/tseitin.hpp"

namespace xc::lifting {

using gadget::Gadget;
using gadget::Window;
using tseitin::EdgeLabeling;
using tseitin::EdgeSet;
using tseitin::LabeledGraph;

/// Per-coordinate gadget inputs; coordinate i is edge i of the graph.
struct LiftedInput {
  std::vector<int> x;
  std::vector<int> y;
  friend bool operator==(const LiftedInput&, const LiftedInput&) = default;
  friend auto operator<=>(const LiftedInput&, const LiftedInput&) = default;
};

/// z = g^n(x, y).
EdgeLabeling evaluate(const Gadget& g, const LiftedInput& in);

/// w = w_1 x ... x w_n.
struct MultiWindow {
  std::vector<Window> coords;

  std::size_t size() const { return coords.size(); }
  /// The labeling z this is a window of.
  EdgeLabeling labeling() const;
  bool contains(const LiftedInput& in) const;
  /// Cell `mask` of the 2^n cells: bit i picks cells[0] or cells[1] of w_i.
  LiftedInput cell(std::uint64_t mask) const;
  friend bool operator==(const MultiWindow&, const MultiWindow&) = default;
};

/// Uniform window of z: an independent uniform z_i-window per coordinate.
MultiWindow sample_window(const Gadget& g, const EdgeLabeling& z, Rng& rng);
/// Uniform cell of w.
LiftedInput sample_input_in_window(const MultiWindow& w, Rng& rng);

/// (x^B, y): Alice flips the gadget output on every coordinate in B.
LiftedInput block_flip(const Gadget& g, const LiftedInput& in, const EdgeSet& b);
/// w^B = {(x^B, y) : (x, y) in w}.
MultiWindow block_flip(const Gadget& g, const MultiWindow& w, const EdgeSet& b);
/// Directed flip of the chosen kind on every coordinate in B.
MultiWindow directed_block_flip(const Gadget& g, const MultiWindow& w, const EdgeSet& b,
                                gadget::FlipKind kind);

/// Acceptance probability of a protocol on a lifted input.
using Protocol = std::function<double(const LiftedInput&)>;

struct SmoothingOptions {
  std::size_t exact_dimension_limit = 20;
  std::uint64_t seed = 0;
  std::size_t samples = 4096;
};

/// Pi'(x, y) = E_q Pi(x^q, y) over uniform eulerian q. Exact coset average
/// when the cycle space dimension is within the limit, else Monte Carlo with
/// the declared seed and sample count.
Protocol smooth_wrap(Protocol inner, const Gadget& g, const LabeledGraph& graph,
                     SmoothingOptions options = {});
bool smoothing_is_exact(const LabeledGraph& graph, const SmoothingOptions& options = {});

/// w_7 and the seven flipped windows w_e = w_7^{B_1^e + B_2^e}.
struct FanoWindows {
  MultiWindow w7;
  std::array<MultiWindow, 7> w_lines;
};

FanoWindows build_fano_windows(const Gadget& g, const tseitin::FanoScaffold& s, Rng& rng);

/// M^S(x, y) = |S(x, y)| - 1 for an enumerable witness count; throws if some
/// input has no witness.
IntMatrix witness_matrix(std::size_t rows, std::size_t cols,
                         const std::function<std::size_t(std::size_t, std::size_t)>& witnesses);

/// Lifted Tseitin witness matrix on the given Alice and Bob inputs:
/// entry = |viol(g^n(x, y))| - 1.
IntMatrix lifted_witness_matrix(const Gadget& g, const LabeledGraph& graph,
                                const std::vector<std::vector<int>>& xs,
                                const std::vector<std::vector<int>>& ys);

/// All dim^n Alice inputs in lexicographic order (coordinate 0 most
/// significant). Throws ResourceError above `limit` inputs.
std::vector<std::vector<int>> all_player_inputs(const Gadget& g, std::size_t n, std::size_t limit = 4096);

/// Full witness matrix over all inputs (rows and columns lexicographic).
IntMatrix full_lifted_witness_matrix(const Gadget& g, const LabeledGraph& graph,
                                     std::size_t limit = 4096);

}  // namespace xc::lifting
