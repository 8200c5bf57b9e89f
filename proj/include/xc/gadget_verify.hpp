#pragma once

#include <vector>

#include "xc/gadget.hpp"
#include "xc/report.hpp"

namespace xc::gadget {

json to_json(Cell c);
json to_json(const Window& w);
json to_json(const Gadget& g);

/// Exhaustive property suite: Alice/Bob flips, balance, transitive symmetry
/// under the doubling generators, unique stretched embeddings for every
/// window and all four input positions, directed-flip bijections, and
/// regularity. Directed flips are skipped when embeddings are not unique.
std::vector<Check> verify_gadget(const Gadget& g);

}  // namespace xc::gadget

namespace xc::gadget {

struct WalkStatistics {
  std::size_t walks = 0;
  std::size_t length = 0;  // steps per walk (2L)
  double chi_square = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 0.0;
  /// Total variation distance from E^b of the edge used at each tested step.
  std::vector<std::size_t> tested_steps;
  std::vector<double> step_tv;
  double max_tv = 0.0;
  double start_tv = 0.0;  // start node marginal against uniform
  double end_tv = 0.0;

  bool passes(double significance = 0.01, double tv_limit = 0.02) const {
    return p_value >= significance && max_tv <= tv_limit;
  }
  json to_json() const;
};

/// Samples `walks` walks in fixed chunks of 4096, chunk c seeded with
/// derive_seed(seed, c), spread over `workers` threads; the result does not
/// depend on the worker count. Pearson chi-square independence test of the
/// (start, end) table and edge marginals at steps 0, L - 1, L and 2L - 1.
WalkStatistics walk_statistics(const WindowDigraph& dg, std::size_t walks, std::uint64_t seed,
                               std::size_t workers = 1);

}  // namespace xc::gadget
