#pragma once

// Two-party gadgets g: X x Y -> {0,1} stored as square bit tables, with
// windows, stretched AND/NAND embeddings, directed flips, the symmetry
// generators of the doubling construction, and window digraphs.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xc/common.hpp"

namespace xc::gadget {

using Bit = std::uint8_t;

/// A cell (x, y) of a gadget table: row = Alice input, column = Bob input.
struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

class Gadget {
 public:
  /// Table from rows; must be square with power-of-two dimension >= 2.
  static Gadget from_rows(const std::vector<std::vector<Bit>>& rows);

  int dim() const { return dim_; }
  /// Number of input bits per player (dim = 2^bits).
  int bits() const { return bits_; }
  Bit operator()(int x, int y) const { return table_[static_cast<std::size_t>(x * dim_ + y)]; }
  Bit at(Cell c) const { return (*this)(c.row, c.col); }

  /// Flip of the most significant input bit (x1 / y1).
  int alice_flip(int x) const { return x ^ (dim_ >> 1); }
  int bob_flip(int y) const { return y ^ (dim_ >> 1); }

  std::vector<std::vector<Bit>> rows() const;
  /// One line of '0'/'1' characters per row.
  std::string to_text() const;
  static Gadget from_text(const std::string& text);

  friend bool operator==(const Gadget&, const Gadget&) = default;

 private:
  Gadget(int dim, std::vector<Bit> table);
  int dim_ = 0;
  int bits_ = 0;
  std::vector<Bit> table_;
};

/// g(x,y) = x1 + y1 + x2 y2 + x3 y3 (mod 2), x1 the most significant bit.
Gadget build_gadget();
/// x1 + y1 + x2 y2 (mod 2): regular but lacks unique stretched embeddings.
Gadget build_smaller_gadget();
/// 2x2 XOR(x, y).
Gadget xor_gadget();

/// Applies M => [[M, M], [M, not M]] `steps` times to the XOR base, the new
/// bit appended as the least significant coordinate: M'(xa, yb) = M(x,y) + ab.
/// Throws for steps > 2.
Gadget build_via_leadsto(const Gadget& base, int steps);

enum class Shape : std::uint8_t { horizontal, vertical };

/// A z-monochromatic 1x2 (horizontal) or 2x1 (vertical) rectangle.
/// Cells are distinct and ordered by ascending free coordinate.
struct Window {
  Bit value = 0;
  Shape shape = Shape::horizontal;
  std::array<Cell, 2> cells{};

  /// Row for horizontal windows, column for vertical ones.
  int line() const { return shape == Shape::horizontal ? cells[0].row : cells[0].col; }
  /// The two free coordinates (columns for horizontal, rows for vertical).
  std::array<int, 2> span() const;

  friend auto operator<=>(const Window&, const Window&) = default;
};

/// Builds a window from its line and free pair; canonicalises cell order.
Window make_window(Bit value, Shape shape, int line, int a, int b);

/// All z-windows of g: horizontal first (row-major), then vertical.
std::vector<Window> enumerate_windows(const Gadget& g, Bit z);

/// Index of `w` in enumerate_windows(g, w.value); throws if absent.
std::size_t window_index(const Gadget& g, const Window& w);

/// A stretched AND (or NAND) placed inside g. For position (a, b), the
/// window sits on line lines[a] and spans the free pair pairs[b]; its value
/// is AND(a, b) (negated for NAND). Vertical embeddings are the transpose.
struct StretchedEmbedding {
  Shape shape = Shape::horizontal;
  bool nand = false;
  std::array<int, 2> lines{};
  std::array<std::array<int, 2>, 2> pairs{};

  Window window_at(int a, int b) const;
};

/// Every stretched AND and NAND embedding in g, both shapes.
std::vector<StretchedEmbedding> enumerate_stretched_embeddings(const Gadget& g);

/// Embeddings in which `w` is the stretched (a, b)-input. The embedding kind
/// (AND vs NAND) is forced by w.value.
std::vector<StretchedEmbedding> embeddings_with(const Gadget& g, const Window& w,
                                                int a, int b);

struct DirectedFlips {
  Window left;  // stretched (1,0)-input
  Window nw;    // stretched (0,0)-input
  Window up;    // stretched (0,1)-input
};

/// The directed flips of a z-window from the unique stretched AND (z = 1) or
/// NAND (z = 0) embedding with w as its (1,1)-input. Throws if the embedding
/// is missing or not unique.
DirectedFlips directed_flips(const Gadget& g, const Window& w);

enum class FlipKind : std::uint8_t { left, nw, up };
Window directed_flip(const Gadget& g, const Window& w, FlipKind kind);

/// A symmetry: row permutation and column permutation.
struct Symmetry {
  std::vector<int> rows;
  std::vector<int> cols;
};

using SymmetryGroupGens = std::vector<Symmetry>;

/// Generators from the inductive doubling construction, lifted `steps` times
/// from the XOR group {(not, not)}: quadrant lifts of the previous
/// generators plus the two half-swap generators.
SymmetryGroupGens leadsto_symmetry_generators(int steps);

struct SymmetryReport {
  bool generators_invariant = true;
  std::vector<std::size_t> failing_generators;
  std::vector<std::vector<Cell>> orbits;  // sorted, orbit of smallest cell first
  bool orbits_match_preimages = false;
  bool ok() const { return generators_invariant && orbits_match_preimages; }
};

/// Orbit BFS of all cells under the generators; passes iff there are exactly
/// two orbits, g^-1(0) and g^-1(1).
SymmetryReport verify_transitive_symmetry(const Gadget& g, const SymmetryGroupGens& gens);

/// Orbit of one cell under the generators (sorted).
std::vector<Cell> orbit_of(const Gadget& g, const SymmetryGroupGens& gens, Cell start);

/// Digraph on the b-inputs of g: edge iff same row or same column. Self-loops
/// are implicit at every node; `out` holds the non-self-loop edges.
struct WindowDigraph {
  Bit value = 0;
  std::vector<Cell> nodes;              // row-major order
  std::vector<std::vector<int>> out;    // ascending target index
  std::size_t non_loop_edges = 0;       // L

  bool strongly_connected() const;
  /// Strongly connected with equal in- and out-degree at every node, so an
  /// eulerian tour exists and visits all nodes equally often.
  bool walk_regular() const;
};

WindowDigraph window_digraph(const Gadget& g, Bit b);

/// (i) |X| = |Y| even, (ii) balanced rows and columns, (iii) both window
/// digraphs strongly connected.
bool is_regular(const Gadget& g);

/// Eulerian circuit over the non-self-loop edges, Hierholzer with
/// smallest-index tie-breaking from node 0. Returns v_0..v_{L-1} (the
/// closing v_0 is implicit).
std::vector<int> eulerian_tour(const WindowDigraph& dg);

/// Walk of 2L steps (2L + 1 node indices) from the phase construction:
/// start i0 and shift l uniform; the first l phases advance one tour step
/// (loop-then-forward or forward-then-loop), the rest return to their start
/// (loop twice or forward-then-back). Throws if dg is not walk-regular or
/// the tour does not match dg.
std::vector<int> sample_walk(const WindowDigraph& dg, std::span<const int> tour, Rng& rng);

}  // namespace xc::gadget
