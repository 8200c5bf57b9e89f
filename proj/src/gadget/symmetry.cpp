#include <algorithm>
#include <deque>

#include "xc/gadget.hpp"

namespace xc::gadget {

SymmetryGroupGens leadsto_symmetry_generators(int steps) {
  if (steps < 0 || steps > 2) throw Error("leadsto steps must be in {0,1,2}");
  SymmetryGroupGens gens{Symmetry{{1, 0}, {1, 0}}};
  int d = 2;
  for (int s = 0; s < steps; ++s) {
    const int half = d >> 1;
    auto flip = [half](int v) { return v ^ half; };
    SymmetryGroupGens next;
    for (const auto& [r, c] : gens) {
      Symmetry lifted{std::vector<int>(static_cast<std::size_t>(2 * d)),
                      std::vector<int>(static_cast<std::size_t>(2 * d))};
      for (int x = 0; x < d; ++x) {
        for (int a = 0; a < 2; ++a) {
          lifted.rows[static_cast<std::size_t>(2 * x + a)] = 2 * r[static_cast<std::size_t>(x)] + a;
          lifted.cols[static_cast<std::size_t>(2 * x + a)] = 2 * c[static_cast<std::size_t>(x)] + a;
        }
      }
      next.push_back(std::move(lifted));
    }
    // Bob swaps halves, Alice flips the a = 1 half.
    Symmetry swap_cols{std::vector<int>(static_cast<std::size_t>(2 * d)),
                       std::vector<int>(static_cast<std::size_t>(2 * d))};
    // Alice swaps halves, Bob flips the b = 1 half.
    Symmetry swap_rows = swap_cols;
    for (int x = 0; x < d; ++x) {
      for (int a = 0; a < 2; ++a) {
        const auto i = static_cast<std::size_t>(2 * x + a);
        swap_cols.rows[i] = 2 * (a ? flip(x) : x) + a;
        swap_cols.cols[i] = 2 * x + (1 - a);
        swap_rows.rows[i] = 2 * x + (1 - a);
        swap_rows.cols[i] = 2 * (a ? flip(x) : x) + a;
      }
    }
    next.push_back(std::move(swap_cols));
    next.push_back(std::move(swap_rows));
    gens = std::move(next);
    d *= 2;
  }
  return gens;
}

namespace {

bool valid_permutation(const std::vector<int>& p, int dim) {
  if (p.size() != static_cast<std::size_t>(dim)) return false;
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  for (int v : p) {
    if (v < 0 || v >= dim || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

bool leaves_invariant(const Gadget& g, const Symmetry& s) {
  if (!valid_permutation(s.rows, g.dim()) || !valid_permutation(s.cols, g.dim())) return false;
  for (int x = 0; x < g.dim(); ++x) {
    for (int y = 0; y < g.dim(); ++y) {
      if (g(s.rows[static_cast<std::size_t>(x)], s.cols[static_cast<std::size_t>(y)]) != g(x, y)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<Cell> orbit_of(const Gadget& g, const SymmetryGroupGens& gens, Cell start) {
  const int d = g.dim();
  std::vector<bool> seen(static_cast<std::size_t>(d * d), false);
  std::deque<Cell> queue{start};
  seen[static_cast<std::size_t>(start.row * d + start.col)] = true;
  std::vector<Cell> orbit;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    orbit.push_back(c);
    for (const auto& s : gens) {
      const Cell n{s.rows[static_cast<std::size_t>(c.row)], s.cols[static_cast<std::size_t>(c.col)]};
      const auto idx = static_cast<std::size_t>(n.row * d + n.col);
      if (!seen[idx]) {
        seen[idx] = true;
        queue.push_back(n);
      }
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

SymmetryReport verify_transitive_symmetry(const Gadget& g, const SymmetryGroupGens& gens) {
  SymmetryReport report;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!leaves_invariant(g, gens[i])) {
      report.generators_invariant = false;
      report.failing_generators.push_back(i);
    }
  }
  if (!report.generators_invariant) return report;

  const int d = g.dim();
  std::vector<bool> covered(static_cast<std::size_t>(d * d), false);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      if (covered[static_cast<std::size_t>(x * d + y)]) continue;
      auto orbit = orbit_of(g, gens, Cell{x, y});
      for (const auto& c : orbit) covered[static_cast<std::size_t>(c.row * d + c.col)] = true;
      report.orbits.push_back(std::move(orbit));
    }
  }
  bool match = report.orbits.size() == 2;
  if (match) {
    for (const auto& orbit : report.orbits) {
      const Bit v = g.at(orbit.front());
      std::size_t preimage = 0;
      for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) preimage += g(x, y) == v ? 1 : 0;
      }
      match = match && orbit.size() == preimage &&
              std::all_of(orbit.begin(), orbit.end(), [&](Cell c) { return g.at(c) == v; });
    }
  }
  report.orbits_match_preimages = match;
  return report;
}

}  // namespace xc::gadget
