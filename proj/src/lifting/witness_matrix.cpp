#include "xc/lifting.hpp"

namespace xc::lifting {

IntMatrix witness_matrix(std::size_t rows, std::size_t cols,
                         const std::function<std::size_t(std::size_t, std::size_t)>& witnesses) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto w = witnesses(i, j);
      if (w == 0) {
        throw Error("input (" + std::to_string(i) + ", " + std::to_string(j) + ") has no witness");
      }
      m(i, j) = static_cast<std::int64_t>(w) - 1;
    }
  }
  return m;
}

namespace {

std::string input_label(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += '.';
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

IntMatrix lifted_witness_matrix(const Gadget& g, const LabeledGraph& graph,
                                const std::vector<std::vector<int>>& xs,
                                const std::vector<std::vector<int>>& ys) {
  for (const auto* side : {&xs, &ys}) {
    for (const auto& v : *side) {
      if (v.size() != graph.edge_count()) throw Error("lifted input length must equal |E|");
      for (int s : v) {
        if (s < 0 || s >= g.dim()) throw Error("gadget input out of range");
      }
    }
  }
  IntMatrix m = witness_matrix(xs.size(), ys.size(), [&](std::size_t i, std::size_t j) {
    return tseitin::violations(graph, evaluate(g, LiftedInput{xs[i], ys[j]})).size();
  });
  for (const auto& x : xs) m.row_labels.push_back(input_label(x));
  for (const auto& y : ys) m.col_labels.push_back(input_label(y));
  return m;
}

std::vector<std::vector<int>> all_player_inputs(const Gadget& g, std::size_t n, std::size_t limit) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    total *= static_cast<std::size_t>(g.dim());
    if (total > limit) throw ResourceError("too many lifted inputs to enumerate");
  }
  std::vector<std::vector<int>> out;
  out.reserve(total);
  std::vector<int> v(n, 0);
  for (std::size_t k = 0; k < total; ++k) {
    out.push_back(v);
    for (std::size_t i = n; i-- > 0;) {
      if (++v[i] < g.dim()) break;
      v[i] = 0;
    }
  }
  return out;
}

IntMatrix full_lifted_witness_matrix(const Gadget& g, const LabeledGraph& graph, std::size_t limit) {
  const auto inputs = all_player_inputs(g, graph.edge_count(), limit);
  return lifted_witness_matrix(g, graph, inputs, inputs);
}

}  // namespace xc::lifting
