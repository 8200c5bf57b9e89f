#include <algorithm>
#include <set>

#include "catch_amalgamated.hpp"
#include "xc/tseitin.hpp"

using namespace xc::tseitin;
using xc::Rational;

namespace {

// Direct parity recomputation from the edge list.
std::vector<Node> naive_violations(const LabeledGraph& g, const EdgeBits& z) {
  std::vector<int> parity(static_cast<std::size_t>(g.node_count()), 0);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (!z[e]) continue;
    parity[static_cast<std::size_t>(g.edges()[e].first)] ^= 1;
    parity[static_cast<std::size_t>(g.edges()[e].second)] ^= 1;
  }
  std::vector<Node> out;
  for (Node v = 0; v < g.node_count(); ++v) {
    if (parity[static_cast<std::size_t>(v)] != g.label(v)) out.push_back(v);
  }
  return out;
}

EdgeBits random_bits(std::size_t n, xc::Rng& rng) {
  EdgeBits z(n);
  for (std::size_t e = 0; e < n; ++e) z.set(e, rng() & 1U);
  return z;
}

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
  return r;
}

}  // namespace

TEST_CASE("graph validation") {
  REQUIRE_THROWS_AS(LabeledGraph(3, {{0, 1}, {0, 1}, {1, 2}}), xc::Error);
  REQUIRE_THROWS_AS(LabeledGraph(3, {{0, 0}, {1, 2}}), xc::Error);
  REQUIRE_THROWS_AS(LabeledGraph(4, {{0, 1}, {2, 3}}), xc::Error);
  REQUIRE_THROWS_AS(LabeledGraph(3, {{0, 1}, {1, 2}}, {1, 1, 0}), xc::Error);
  const LabeledGraph g(3, {{0, 1}, {1, 2}});
  REQUIRE(g.labels() == std::vector<std::uint8_t>{1, 0, 0});
}

TEST_CASE("triangle violations") {
  const auto g = builtin_graph("triangle");
  REQUIRE(g.labels() == std::vector<std::uint8_t>{1, 0, 0});
  EdgeBits z(3);
  REQUIRE(violations(g, z) == std::vector<Node>{0});
  const auto ab = *g.edge_index(0, 1);
  z.flip(ab);
  REQUIRE(violations(g, z) == std::vector<Node>{1});
  REQUIRE(make_input_with_violations(g, {0}) == EdgeBits(3));
  REQUIRE_THROWS_AS(make_input_with_violations(g, {0, 1}), xc::Error);
}

TEST_CASE("violations agree with a direct count on the corpus") {
  xc::Rng rng(11);
  for (const auto& name : builtin_graph_names()) {
    const auto g = builtin_graph(name);
    for (int t = 0; t < 200; ++t) {
      const auto z = random_bits(g.edge_count(), rng);
      const auto v = violations(g, z);
      REQUIRE(v == naive_violations(g, z));
      REQUIRE(v.size() % 2 == 1);
      REQUIRE(violations(g, make_input_with_violations(g, v)) == v);
    }
  }
}

TEST_CASE("path flips move violations and eulerian flips keep them") {
  xc::Rng rng(12);
  const auto g = builtin_graph("petersen");
  const auto basis = cycle_space_basis(g);
  REQUIRE(basis.size() == g.cycle_space_dimension());
  for (const auto& b : basis) REQUIRE(is_eulerian(g, b));
  for (int t = 0; t < 100; ++t) {
    const auto z = random_bits(g.edge_count(), rng);
    const auto q = sample_eulerian(g, rng);
    REQUIRE(is_eulerian(g, q));
    REQUIRE(violations(g, flip_path(z, q)) == violations(g, z));
    REQUIRE(flip_path(z, EdgeBits(g.edge_count())) == z);
  }
  const auto z = make_input_with_violations(g, {1, 4, 7});
  const auto p = *shortest_path(g, 1, 4);
  REQUIRE(violations(g, flip_path(z, p)) == std::vector<Node>{7});
}

TEST_CASE("cycle space has full rank over GF(2)") {
  for (const auto& name : builtin_graph_names()) {
    const auto g = builtin_graph(name);
    if (g.edge_count() > 64) continue;
    std::vector<std::uint64_t> rows;
    for (const auto& b : cycle_space_basis(g)) {
      std::uint64_t v = b.to_mask();
      for (auto r : rows) v = std::min(v, v ^ r);
      REQUIRE(v != 0);
      rows.push_back(v);
      std::sort(rows.rbegin(), rows.rend());
    }
    REQUIRE(rows.size() == g.cycle_space_dimension());
  }
  const auto tree = builtin_graph("star4");
  xc::Rng rng(1);
  REQUIRE(cycle_space_basis(tree).empty());
  REQUIRE(sample_eulerian(tree, rng).none());
}

TEST_CASE("exact mu law equals the closed form") {
  // Each i-set has probability 1/C(n,i); its coset holds 2^dim labelings.
  for (const char* name : {"triangle", "k4", "c5", "prism"}) {
    const auto g = builtin_graph(name);
    for (int i = 1; i <= g.node_count(); i += 2) {
      const auto law = mu_distribution(g, i);
      REQUIRE(law.size() == (std::size_t{1} << g.edge_count()));
      const Rational mass(1, static_cast<long>(binom(g.node_count(), i) << g.cycle_space_dimension()));
      Rational total = 0;
      for (std::uint64_t m = 0; m < law.size(); ++m) {
        const auto z = EdgeBits::from_mask(m, g.edge_count());
        const bool in = violations(g, z).size() == static_cast<std::size_t>(i);
        REQUIRE(law[m] == (in ? mass : Rational(0)));
        total += law[m];
      }
      REQUIRE(total == 1);
    }
  }
  REQUIRE_THROWS_AS(mu_distribution(builtin_graph("triangle"), 2), xc::Error);
}

TEST_CASE("sample_mu produces i violations") {
  xc::Rng rng(5);
  const auto g = builtin_graph("k6");
  for (int t = 0; t < 200; ++t) {
    REQUIRE(violations(g, sample_mu(g, 3, rng)).size() == 3);
    REQUIRE(violations(g, sample_mu(g, 5, rng)).size() == 5);
  }
  REQUIRE_THROWS_AS(sample_mu(g, 4, rng), xc::Error);
  REQUIRE_THROWS_AS(sample_mu(g, 7, rng), xc::Error);
}

TEST_CASE("routing on complete graphs and cycles") {
  const auto k9 = builtin_graph("k9");
  const auto t = complete_terminals(k9);
  REQUIRE(t.k == 4);
  const Pairing pairing{{0, 5}, {1, 7}, {2, 3}, {4, 8}};
  const auto paths = route_pairing(k9, t, pairing);
  REQUIRE(paths.size() == 4);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    REQUIRE(paths[i].nodes == std::vector<Node>{pairing[i].first, pairing[i].second});
  }
  REQUIRE(route_pairing(k9, t, {}).empty());

  const auto c5 = builtin_graph("c5");
  const TerminalSet ct{{0, 1, 2, 3, 4}, 2};
  REQUIRE_THROWS_AS(route_pairing(c5, ct, {{0, 2}, {1, 3}}), RoutingError);

  const auto pet = builtin_graph("petersen");
  const TerminalSet pt{{0, 2, 4, 6, 8}, 2};
  const Pairing pp{{0, 6}, {2, 8}};
  const auto a = route_pairing(pet, pt, pp);
  const auto b = route_pairing(pet, pt, pp);
  REQUIRE(a.size() == 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].nodes == b[i].nodes);
    REQUIRE(a[i].nodes.front() == pp[i].first);
    REQUIRE(a[i].nodes.back() == pp[i].second);
  }
  REQUIRE((a[0].edges.to_mask() & a[1].edges.to_mask()) == 0);
  REQUIRE(certify_routable(builtin_graph("k7"), complete_terminals(builtin_graph("k7"))) > 0);
}

TEST_CASE("Fano scaffold on K11") {
  const auto& lines = fano_lines();
  for (std::size_t a = 0; a < 7; ++a) {
    for (std::size_t b = a + 1; b < 7; ++b) {
      int common = 0;
      for (int p : lines[a]) common += static_cast<int>(std::count(lines[b].begin(), lines[b].end(), p));
      REQUIRE(common == 1);
    }
  }
  const auto g = builtin_graph("k11");
  const auto t = complete_terminals(g);
  REQUIRE(t.k == 5);
  xc::Rng rng(9);
  const auto s = build_fano_scaffold(g, t, rng);
  std::vector<Node> seven(s.embedded.begin(), s.embedded.end());
  std::sort(seven.begin(), seven.end());
  REQUIRE(violations(g, s.z7) == seven);
  for (std::size_t e = 0; e < 7; ++e) REQUIRE(violations(g, s.z_lines[e]) == s.line_nodes(e));
  for (std::size_t e = 0; e < 7; ++e) {
    for (std::size_t f = e + 1; f < 7; ++f) {
      const auto c = near_disjointness_coupling(g, t, s, e, f);
      REQUIRE(c.difference_eulerian);
      REQUIRE(is_eulerian(g, c.six_path_difference));
      REQUIRE(c.labelings_agree);
    }
  }
  REQUIRE_THROWS(build_fano_scaffold(builtin_graph("k9"), complete_terminals(builtin_graph("k9")), rng));
}

TEST_CASE("edge expansion") {
  REQUIRE(edge_expansion(builtin_graph("k4")) == 2);
  REQUIRE(edge_expansion(complete_graph(6)) == 3);
  REQUIRE(edge_expansion(cycle_graph(6)) == Rational(2, 3));
}
