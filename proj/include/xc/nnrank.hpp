#pragma once

// Slack matrices, nonnegative-rank bounds, and the witness protocol.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xc/common.hpp"
#include "xc/matrix.hpp"
#include "xc/report.hpp"

namespace xc::nnrank {

/// Integer matrix with all entries >= 0.
using NonnegMatrix = IntMatrix;

using BitVector = std::vector<std::uint8_t>;
using MonotoneOracle = std::function<bool(const BitVector&)>;

/// Entry (x, y) = |x & ~y| - 1. Throws if some x is not a 1-input, some y is
/// not a 0-input, or an entry is negative.
NonnegMatrix kw_slack_matrix(const MonotoneOracle& f, const std::vector<BitVector>& ones,
                             const std::vector<BitVector>& zeros);

/// Rank over the rationals (exact elimination up to `exact_limit` in both
/// dimensions, else rank modulo a 61-bit prime, which never exceeds it).
struct RankResult {
  std::size_t rank = 0;
  bool over_rationals = true;
};
RankResult rank(const IntMatrix& m, std::size_t exact_limit = 160);

struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// All maximal all-ones rectangles of the support (rows and columns <= 16).
std::vector<Rectangle> maximal_rectangles(const IntMatrix& m);

struct CoverBound {
  std::size_t value = 0;
  bool exact = false;         // true: the rectangle covering number itself
  std::string method;         // "branch-and-bound" or "fooling-set"
  std::vector<Rectangle> cover;  // an optimal cover when exact
};

/// Minimum rectangle cover of the support by branch-and-bound when the
/// matrix is at most 16 x 16, else a greedy fooling set (a lower bound).
CoverBound rectangle_cover_lower_bound(const IntMatrix& m);

/// Independent oracle: smallest k such that some k column sets C, each with
/// its full row set {i : C within row i}, cover the support. At most 6 x 6.
std::size_t brute_force_rectangle_cover(const IntMatrix& m);

/// Greedy fooling set of the support, in row-major order.
std::vector<std::pair<std::size_t, std::size_t>> greedy_fooling_set(const IntMatrix& m);

struct NmfOptions {
  std::size_t restarts = 50;
  std::size_t iterations = 5000;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  /// compute_rank_bounds skips NMF above this many entries.
  std::size_t max_cells = 4096;
};

struct Factorization {
  std::size_t rank = 0;
  std::vector<double> w;  // rows x rank
  std::vector<double> h;  // rank x cols
  double residual = 0.0;  // max |M - WH|
  std::uint64_t seed = 0;
  std::size_t restart = 0;
  std::size_t iterations = 0;
};

double max_residual(const IntMatrix& m, const Factorization& f);

/// Multiplicative updates from seeded random starts, finished with HALS
/// sweeps. Returns a factorization only when its max-entry residual is
/// within tolerance; absence is not evidence that rk+ > r.
std::optional<Factorization> nmf_upper_bound(const IntMatrix& m, std::size_t r, const NmfOptions& options = {});

struct RankBounds {
  std::size_t lower = 0;
  std::string lower_kind;  // "linear-rank" or "rectangle-cover"
  std::size_t upper = 0;
  std::string upper_kind;  // "trivial" (exact) or "nmf"
  double residual = 0.0;
  std::vector<std::uint64_t> seeds;
  std::optional<std::size_t> exact;
  std::size_t linear_rank = 0;
  bool rank_over_rationals = true;
  CoverBound cover;

  json to_json() const;
};

/// Lower bound max(rank, cover); upper bound min(nonzero rows, nonzero
/// columns) with an exact certificate, improved by NMF where possible.
RankBounds compute_rank_bounds(const IntMatrix& m, const NmfOptions& options = {});

/// Slack matrix of explicit vertices against inequalities a.v <= b:
/// entry = b - a.v. Throws on a negative slack.
NonnegMatrix polytope_slack_matrix(const std::vector<std::vector<std::int64_t>>& vertices,
                                   const std::vector<std::vector<std::int64_t>>& a,
                                   const std::vector<std::int64_t>& b);

struct SlackExtensionReport {
  std::optional<RankBounds> p;  // absent when M(P) is unavailable
  RankBounds pq;
  bool both_exact = false;
  bool consistent = true;  // lower(M(P;Q)) - 1 <= upper(M(P)) where defined
  json to_json() const;
};

/// rk+(M(P)) >= rk+(M(P;Q)) - 1, checked on certified intervals.
SlackExtensionReport check_slack_extension_inequality(const std::optional<IntMatrix>& m_p,
                                                      const IntMatrix& m_pq,
                                                      const NmfOptions& options = {});

using KwSolver = std::function<std::size_t(const BitVector&, const BitVector&)>;

struct ProtocolEstimate {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  double estimate = 0.0;
  Rational exact;
  double standard_error = 0.0;
  /// |estimate - exact| in standard errors (0 when both are degenerate).
  double z_score() const;
};

/// Per trial: i from the solver, j uniform over the other n - 1 indices,
/// accept iff x_j = 1 and y_j = 0.
ProtocolEstimate simulate_witness_protocol(const KwSolver& solver, const BitVector& x, const BitVector& y,
                                           std::size_t trials, Rng& rng);

/// Smallest witness index.
std::size_t first_witness(const BitVector& x, const BitVector& y);

}  // namespace xc::nnrank
