#include <map>
#include <set>

#include "xc/gadget_verify.hpp"

namespace xc::gadget {

namespace {

constexpr std::size_t kMaxCounterexamples = 16;

void note(Check& c, json example) {
  c.status = Status::fail;
  if (c.counterexamples.size() < kMaxCounterexamples) c.counterexamples.push_back(std::move(example));
}

Check flip_check(const Gadget& g, bool alice) {
  Check c{alice ? "alice_flip" : "bob_flip"};
  for (int x = 0; x < g.dim(); ++x) {
    for (int y = 0; y < g.dim(); ++y) {
      const Bit flipped = alice ? g(g.alice_flip(x), y) : g(x, g.bob_flip(y));
      if (flipped == g(x, y)) note(c, to_json(Cell{x, y}));
    }
  }
  return c;
}

Check balance_check(const Gadget& g) {
  Check c{"balanced_lines"};
  for (int i = 0; i < g.dim(); ++i) {
    int row = 0;
    int col = 0;
    for (int j = 0; j < g.dim(); ++j) {
      row += g(i, j);
      col += g(j, i);
    }
    if (2 * row != g.dim()) note(c, json{{"row", i}, {"ones", row}});
    if (2 * col != g.dim()) note(c, json{{"col", i}, {"ones", col}});
  }
  return c;
}

Check symmetry_check(const Gadget& g) {
  Check c{"transitive_symmetry"};
  const int steps = g.bits() - 1;
  if (steps > 2) {
    c.status = Status::skipped;
    c.detail["reason"] = "no doubling-construction generators for this size";
    return c;
  }
  const auto report = verify_transitive_symmetry(g, leadsto_symmetry_generators(steps));
  c.detail["generators"] = leadsto_symmetry_generators(steps).size();
  json sizes = json::array();
  for (const auto& orbit : report.orbits) sizes.push_back(orbit.size());
  c.detail["orbit_sizes"] = sizes;
  if (!report.generators_invariant) {
    for (auto i : report.failing_generators) note(c, json{{"generator", i}});
  } else if (!report.orbits_match_preimages) {
    for (const auto& orbit : report.orbits) note(c, json{{"orbit_start", to_json(orbit.front())},
                                                         {"size", orbit.size()}});
  }
  return c;
}

Check embedding_check(const Gadget& g) {
  Check c{"unique_stretched_embedding"};
  std::size_t cases = 0;
  for (Bit z : {Bit{0}, Bit{1}}) {
    for (const auto& w : enumerate_windows(g, z)) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          ++cases;
          const auto n = embeddings_with(g, w, a, b).size();
          if (n != 1) note(c, json{{"window", to_json(w)}, {"position", {a, b}}, {"embeddings", n}});
        }
      }
    }
  }
  c.detail["cases"] = cases;
  return c;
}

Check flip_bijection_check(const Gadget& g, bool embeddings_unique) {
  Check c{"directed_flip_bijections"};
  if (!embeddings_unique) {
    c.status = Status::skipped;
    c.detail["reason"] = "directed flips are undefined without unique embeddings";
    return c;
  }
  for (Bit z : {Bit{0}, Bit{1}}) {
    const auto source = enumerate_windows(g, z);
    const auto target = enumerate_windows(g, static_cast<Bit>(1 - z));
    std::map<FlipKind, std::set<Window>> images;
    for (const auto& w : source) {
      const auto f = directed_flips(g, w);
      for (auto [kind, img] : {std::pair{FlipKind::left, f.left}, std::pair{FlipKind::nw, f.nw},
                               std::pair{FlipKind::up, f.up}}) {
        if (img.shape != w.shape || img.value == z) {
          note(c, json{{"window", to_json(w)}, {"image", to_json(img)}});
        }
        images[kind].insert(img);
      }
    }
    for (const auto& [kind, set] : images) {
      if (set.size() != source.size() || set != std::set<Window>(target.begin(), target.end())) {
        note(c, json{{"value", z}, {"kind", static_cast<int>(kind)}, {"image_size", set.size()}});
      }
    }
  }
  return c;
}

Check regularity_check(const Gadget& g) {
  Check c{"regularity"};
  const auto g0 = window_digraph(g, 0);
  const auto g1 = window_digraph(g, 1);
  c.detail["nodes"] = {g0.nodes.size(), g1.nodes.size()};
  c.detail["non_loop_edges"] = {g0.non_loop_edges, g1.non_loop_edges};
  c.detail["strongly_connected"] = {g0.strongly_connected(), g1.strongly_connected()};
  if (!is_regular(g)) note(c, json{{"regular", false}});
  return c;
}

}  // namespace

json to_json(Cell c) { return json::array({c.row, c.col}); }

json to_json(const Window& w) {
  return json{{"value", w.value},
              {"shape", w.shape == Shape::horizontal ? "horizontal" : "vertical"},
              {"cells", {to_json(w.cells[0]), to_json(w.cells[1])}}};
}

json to_json(const Gadget& g) { return json{{"rows", g.rows()}}; }

std::vector<Check> verify_gadget(const Gadget& g) {
  std::vector<Check> checks;
  checks.push_back(flip_check(g, true));
  checks.push_back(flip_check(g, false));
  checks.push_back(balance_check(g));
  checks.push_back(symmetry_check(g));
  checks.push_back(embedding_check(g));
  checks.push_back(flip_bijection_check(g, checks.back().status == Status::pass));
  checks.push_back(regularity_check(g));
  return checks;
}

}  // namespace xc::gadget
