#include <bit>
#include <memory>

#include "xc/lifting.hpp"

namespace xc::lifting {

bool smoothing_is_exact(const LabeledGraph& graph, const SmoothingOptions& options) {
  return graph.cycle_space_dimension() <= options.exact_dimension_limit;
}

Protocol smooth_wrap(Protocol inner, const Gadget& g, const LabeledGraph& graph, SmoothingOptions options) {
  auto basis = std::make_shared<const std::vector<EdgeSet>>(tseitin::cycle_space_basis(graph));
  const std::size_t edges = graph.edge_count();
  if (basis->empty()) return inner;

  if (smoothing_is_exact(graph, options)) {
    return [inner = std::move(inner), g, basis, edges](const LiftedInput& in) {
      const std::uint64_t count = std::uint64_t{1} << basis->size();
      double total = 0.0;
      // Gray-code walk over the coset.
      EdgeSet q(edges);
      for (std::uint64_t k = 0; k < count; ++k) {
        if (k > 0) q ^= (*basis)[static_cast<std::size_t>(std::countr_zero(k))];
        total += inner(block_flip(g, in, q));
      }
      return total / static_cast<double>(count);
    };
  }
  return [inner = std::move(inner), g, basis, edges, options](const LiftedInput& in) {
    Rng rng(options.seed);
    double total = 0.0;
    for (std::size_t s = 0; s < options.samples; ++s) {
      total += inner(block_flip(g, in, tseitin::sample_eulerian(*basis, edges, rng)));
    }
    return total / static_cast<double>(options.samples);
  };
}

}  // namespace xc::lifting
