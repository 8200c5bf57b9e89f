#include <algorithm>
#include <map>
#include <set>

#include "catch_amalgamated.hpp"
#include "xc/gadget.hpp"
#include "xc/gadget_verify.hpp"

using namespace xc::gadget;

namespace {

int formula(int x, int y) {
  auto bit = [](int v, int k) { return (v >> (2 - k)) & 1; };
  return bit(x, 0) ^ bit(y, 0) ^ (bit(x, 1) & bit(y, 1)) ^ (bit(x, 2) & bit(y, 2));
}

const xc::Check& find_check(const std::vector<xc::Check>& checks, const std::string& name) {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  FAIL("missing check " << name);
  return checks.front();
}

}  // namespace

TEST_CASE("gadget table matches the formula") {
  const auto g = build_gadget();
  REQUIRE(g.dim() == 8);
  REQUIRE(g.bits() == 3);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) REQUIRE(g(x, y) == formula(x, y));
  }
  CHECK(g(0b000, 0b000) == 0);
  CHECK(g(0b100, 0b000) == 1);
  CHECK(g(0b011, 0b011) == 0);
}

TEST_CASE("text roundtrip and malformed tables") {
  const auto g = build_gadget();
  REQUIRE(Gadget::from_text(g.to_text()) == g);
  REQUIRE_THROWS_AS(Gadget::from_rows({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}), xc::Error);
  REQUIRE_THROWS_AS(Gadget::from_rows({{0, 1}, {1}}), xc::Error);
}

TEST_CASE("doubling construction reproduces the gadgets") {
  const auto base = xor_gadget();
  REQUIRE(build_via_leadsto(base, 0) == base);
  REQUIRE(build_via_leadsto(base, 1) == build_smaller_gadget());
  REQUIRE(build_via_leadsto(base, 2) == build_gadget());
  REQUIRE_THROWS_AS(build_via_leadsto(base, 3), xc::Error);
  const auto small = build_smaller_gadget();
  for (int x = 0; x < 4; ++x) {
    for (int y = 0; y < 4; ++y) REQUIRE(small(x, y) == (((x >> 1) ^ (y >> 1) ^ (x & y & 1)) & 1));
  }
}

TEST_CASE("flips negate the output and are involutions") {
  const auto g = build_gadget();
  CHECK(g.alice_flip(0b000) == 0b100);
  for (int x = 0; x < 8; ++x) {
    REQUIRE(g.alice_flip(g.alice_flip(x)) == x);
    for (int y = 0; y < 8; ++y) {
      REQUIRE(g(g.alice_flip(x), y) != g(x, y));
      REQUIRE(g(x, g.bob_flip(y)) != g(x, y));
    }
  }
}

TEST_CASE("window enumeration counts") {
  const auto g = build_gadget();
  for (Bit z : {Bit{0}, Bit{1}}) {
    const auto ws = enumerate_windows(g, z);
    REQUIRE(ws.size() == 96);
    const auto horizontal = std::count_if(ws.begin(), ws.end(), [](const Window& w) { return w.shape == Shape::horizontal; });
    REQUIRE(horizontal == 48);
    std::set<Window> unique(ws.begin(), ws.end());
    REQUIRE(unique.size() == ws.size());
    std::map<Cell, int> hits;
    for (const auto& w : ws) {
      REQUIRE(w.value == z);
      REQUIRE(w.cells[0] != w.cells[1]);
      REQUIRE(g.at(w.cells[0]) == z);
      REQUIRE(g.at(w.cells[1]) == z);
      if (w.shape == Shape::horizontal) {
        REQUIRE(w.cells[0].row == w.cells[1].row);
        REQUIRE(w.cells[0].col < w.cells[1].col);
      } else {
        REQUIRE(w.cells[0].col == w.cells[1].col);
        REQUIRE(w.cells[0].row < w.cells[1].row);
      }
      ++hits[w.cells[0]];
      ++hits[w.cells[1]];
    }
    REQUIRE(hits.size() == 32);
    for (const auto& [cell, n] : hits) REQUIRE(n == 6);
    for (std::size_t i = 0; i < ws.size(); ++i) REQUIRE(window_index(g, ws[i]) == i);
  }
}

TEST_CASE("every window sits in exactly one stretched embedding per position") {
  const auto g = build_gadget();
  for (Bit z : {Bit{0}, Bit{1}}) {
    for (const auto& w : enumerate_windows(g, z)) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          const auto es = embeddings_with(g, w, a, b);
          REQUIRE(es.size() == 1);
          REQUIRE(es[0].window_at(a, b) == w);
        }
      }
    }
  }
  for (const auto& e : enumerate_stretched_embeddings(g)) {
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const auto w = e.window_at(a, b);
        REQUIRE(w.shape == e.shape);
        REQUIRE(w.value == static_cast<Bit>((a & b) ^ (e.nand ? 1 : 0)));
        REQUIRE(g.at(w.cells[0]) == w.value);
        REQUIRE(g.at(w.cells[1]) == w.value);
      }
    }
  }
}

TEST_CASE("directed flips are shape-preserving bijections") {
  const auto g = build_gadget();
  for (Bit z : {Bit{0}, Bit{1}}) {
    const auto from = enumerate_windows(g, z);
    for (auto kind : {FlipKind::left, FlipKind::nw, FlipKind::up}) {
      std::set<Window> image;
      std::size_t horizontal = 0;
      for (const auto& w : from) {
        const auto f = directed_flip(g, w, kind);
        REQUIRE(f.value == 1 - z);
        REQUIRE(f.shape == w.shape);
        if (f.shape == Shape::horizontal) ++horizontal;
        image.insert(f);
      }
      REQUIRE(image.size() == 96);
      REQUIRE(horizontal == 48);
    }
  }
  const auto small = build_smaller_gadget();
  const auto w = enumerate_windows(small, 1).front();
  REQUIRE_THROWS_AS(directed_flips(small, w), xc::Error);
}

TEST_CASE("doubling generators give two orbits") {
  const auto g = build_gadget();
  const auto gens = leadsto_symmetry_generators(2);
  const auto report = verify_transitive_symmetry(g, gens);
  REQUIRE(report.ok());
  REQUIRE(report.orbits.size() == 2);
  const auto orbit = orbit_of(g, gens, Cell{0, 0});
  REQUIRE(orbit.size() == 32);
  for (const auto& c : orbit) REQUIRE(g.at(c) == 0);

  const auto base = xor_gadget();
  const auto xr = verify_transitive_symmetry(base, leadsto_symmetry_generators(0));
  REQUIRE(xr.ok());
  REQUIRE(xr.orbits.size() == 2);
  for (const auto& o : xr.orbits) REQUIRE(o.size() == 2);
}

TEST_CASE("window digraphs are regular") {
  const auto g = build_gadget();
  REQUIRE(is_regular(g));
  REQUIRE(is_regular(build_smaller_gadget()));
  for (Bit b : {Bit{0}, Bit{1}}) {
    const auto dg = window_digraph(g, b);
    REQUIRE(dg.nodes.size() == 32);
    REQUIRE(dg.non_loop_edges == 192);
    REQUIRE(dg.strongly_connected());
    REQUIRE(dg.walk_regular());
    for (std::size_t u = 0; u < dg.nodes.size(); ++u) {
      for (int v : dg.out[u]) {
        const auto a = dg.nodes[u];
        const auto c = dg.nodes[static_cast<std::size_t>(v)];
        REQUIRE(a != c);
        REQUIRE((a.row == c.row || a.col == c.col));
      }
    }
  }
}

TEST_CASE("eulerian tour and sampled walks follow digraph edges") {
  const auto g = build_gadget();
  const auto dg = window_digraph(g, 1);
  const auto tour = eulerian_tour(dg);
  REQUIRE(tour.size() == dg.non_loop_edges);
  REQUIRE(tour.front() == 0);
  std::set<std::pair<int, int>> used;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    const int u = tour[k];
    const int v = tour[(k + 1) % tour.size()];
    const auto& out = dg.out[static_cast<std::size_t>(u)];
    REQUIRE(std::find(out.begin(), out.end(), v) != out.end());
    REQUIRE(used.insert({u, v}).second);
  }
  xc::Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto walk = sample_walk(dg, tour, rng);
    REQUIRE(walk.size() == 2 * dg.non_loop_edges + 1);
    for (std::size_t k = 0; k + 1 < walk.size(); ++k) {
      if (walk[k] == walk[k + 1]) continue;
      const auto& out = dg.out[static_cast<std::size_t>(walk[k])];
      REQUIRE(std::find(out.begin(), out.end(), walk[k + 1]) != out.end());
    }
  }
}

TEST_CASE("walk statistics do not depend on worker count") {
  const auto dg = window_digraph(build_gadget(), 0);
  const auto a = walk_statistics(dg, 10000, 3, 1);
  const auto b = walk_statistics(dg, 10000, 3, 3);
  REQUIRE(a.to_json() == b.to_json());
  REQUIRE(a.length == 384);
}

TEST_CASE("verification suite separates the two gadgets") {
  const auto main_checks = verify_gadget(build_gadget());
  REQUIRE(xc::all_passed(main_checks));
  const auto neg = verify_gadget(build_smaller_gadget());
  std::vector<std::string> failed;
  for (const auto& c : neg) {
    if (!c.passed()) failed.push_back(c.name);
  }
  REQUIRE(failed == std::vector<std::string>{"unique_stretched_embedding"});
  REQUIRE(find_check(neg, "regularity").status == xc::Status::pass);
  REQUIRE(find_check(neg, "directed_flip_bijections").status == xc::Status::skipped);
}
