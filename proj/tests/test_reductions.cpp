#include <algorithm>

#include "catch_amalgamated.hpp"
#include "xc/lifting.hpp"
#include "xc/reductions.hpp"

using namespace xc::reductions;
using xc::gadget::build_gadget;
using xc::tseitin::builtin_graph;

namespace {

std::vector<int> random_assignment(std::size_t n, int sigma, xc::Rng& rng) {
  std::vector<int> a(n);
  for (auto& v : a) v = static_cast<int>(rng() % static_cast<std::uint64_t>(sigma));
  return a;
}

// Two bits conflict iff some shared variable gets different values.
bool conflict(const CspSatSpec& spec, std::size_t u, std::size_t v) {
  const auto [cu, lu] = spec.locate(u);
  const auto [cv, lv] = spec.locate(v);
  const auto au = spec.decode(cu, lu);
  const auto av = spec.decode(cv, lv);
  for (std::size_t i = 0; i < spec.vars(cu).size(); ++i) {
    for (std::size_t j = 0; j < spec.vars(cv).size(); ++j) {
      if (spec.vars(cu)[i] == spec.vars(cv)[j] && au[i] != av[j]) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("triangle spec layout") {
  const auto g = builtin_graph("triangle");
  const auto spec = build_csp_spec(g, 8);
  REQUIRE(spec.variable_count() == 3);
  REQUIRE(spec.constraint_count() == 3);
  REQUIRE(spec.input_length() == 192);
  REQUIRE(spec.max_arity() == 2);
  for (std::size_t c = 0; c < 3; ++c) {
    REQUIRE(spec.vars(c).size() == 2);
    REQUIRE(spec.offset(c) == 64 * c);
    for (std::size_t l = 0; l < spec.local_count(c); ++l) {
      REQUIRE(spec.locate(spec.bit(c, l)) == std::pair{c, l});
      const auto vals = spec.decode(c, l);
      std::vector<int> global(3, 0);
      for (std::size_t i = 0; i < vals.size(); ++i) global[static_cast<std::size_t>(spec.vars(c)[i])] = vals[i];
      REQUIRE(spec.restrict(c, global) == l);
    }
  }
  const auto k4 = build_csp_spec(builtin_graph("k4"), 8);
  REQUIRE(k4.max_arity() == 3);
  REQUIRE(k4.input_length() == 4 * 512);
  REQUIRE(input_manifest(spec).size() == 192);
}

TEST_CASE("encodings") {
  const auto g = builtin_graph("k4");
  const auto gad = build_gadget();
  const auto spec = build_csp_spec(g, 8);
  xc::Rng rng(1);
  for (int t = 0; t < 30; ++t) {
    const auto x = random_assignment(g.edge_count(), 8, rng);
    const auto y = random_assignment(g.edge_count(), 8, rng);
    const auto ax = alice_encode(spec, x);
    REQUIRE(ax.count() == static_cast<std::size_t>(g.node_count()));
    REQUIRE(eval_sat(spec, ax) == x);
    REQUIRE_FALSE(eval_sat(spec, bob_encode(spec, g, gad, y)).has_value());
    const auto p = check_parsimony(spec, g, gad, x, y);
    REQUIRE(p.ok());
    const auto z = xc::lifting::evaluate(gad, {x, y});
    REQUIRE(p.violations == xc::tseitin::violations(g, z).size());
    REQUIRE(kw_witnesses(ax, bob_encode(spec, g, gad, y)).size() == p.violations);
  }
}

TEST_CASE("parsimony is exhaustive on the single edge") {
  const auto g = builtin_graph("edge");
  const auto gad = build_gadget();
  const auto spec = build_csp_spec(g, 8);
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      const auto p = check_parsimony(spec, g, gad, {x}, {y});
      REQUIRE(p.ok());
      REQUIRE(p.kw_witnesses == 1);
    }
  }
}

TEST_CASE("eval_sat is monotone") {
  const auto spec = build_csp_spec(builtin_graph("triangle"), 2);
  xc::Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    CspInput in{std::vector<std::uint8_t>(spec.input_length(), 0)};
    bool sat = false;
    for (int k = 0; k < 12; ++k) {
      in.bits[rng() % in.size()] = 1;
      const bool now = eval_sat(spec, in).has_value();
      REQUIRE((!sat || now));
      sat = now;
    }
  }
}

TEST_CASE("conflict graph matches a pairwise oracle") {
  const auto spec = build_csp_spec(builtin_graph("triangle"), 3);
  const ConflictGraph k(spec);
  REQUIRE(k.node_count() == spec.input_length());
  std::size_t edges = 0;
  for (std::size_t u = 0; u < k.node_count(); ++u) {
    REQUIRE_FALSE(k.adjacent(u, u));
    for (std::size_t v = u + 1; v < k.node_count(); ++v) {
      const bool same = spec.locate(u).first == spec.locate(v).first;
      REQUIRE(k.adjacent(u, v) == conflict(spec, u, v));
      if (same) REQUIRE(k.adjacent(u, v));
      edges += k.adjacent(u, v) ? 1 : 0;
    }
  }
  REQUIRE(k.edge_count() == edges);
}

TEST_CASE("minterms are the maximal independent sets") {
  for (const char* name : {"triangle", "path3"}) {
    const auto g = builtin_graph(name);
    const auto spec = build_csp_spec(g, 2);
    const ConflictGraph k(spec);
    const auto mis = k.maximal_independent_sets();
    REQUIRE(mis == brute_force_minterms(spec));
    REQUIRE(mis == encoded_assignments(spec));
    for (const auto& s : mis) REQUIRE(s.count() == spec.constraint_count());
  }
  const auto spec8 = build_csp_spec(builtin_graph("triangle"), 8);
  const ConflictGraph k8(spec8);
  const auto mis8 = k8.maximal_independent_sets();
  REQUIRE(mis8.size() == 512);
  REQUIRE(mis8 == encoded_assignments(spec8));
}

TEST_CASE("slack entries and minterm decomposition") {
  const auto g = builtin_graph("triangle");
  const auto gad = build_gadget();
  const auto spec = build_csp_spec(g, 8);
  const ConflictGraph k(spec);
  xc::Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_assignment(3, 8, rng);
    const auto y = random_assignment(3, 8, rng);
    const auto ax = alice_encode(spec, x);
    const auto by = bob_encode(spec, g, gad, y);
    const auto entry = slack_entry_is(spec, k, ax, by);
    REQUIRE(entry == static_cast<std::int64_t>(kw_witnesses(ax, by).size()) - 1);
    REQUIRE(entry == static_cast<std::int64_t>(check_parsimony(spec, g, gad, x, y).violations) - 1);

    CspInput bigger = ax;
    for (int k2 = 0; k2 < 20; ++k2) bigger.bits[rng() % bigger.size()] = 1;
    const auto d = minterm_decompose(spec, bigger, by);
    REQUIRE(d.identity_holds());
    REQUIRE(eval_sat(spec, d.minterm).has_value());
    for (std::size_t i = 0; i < bigger.size(); ++i) {
      REQUIRE(bigger.bits[i] == (d.minterm.bits[i] | d.residual.bits[i]));
      REQUIRE((d.minterm.bits[i] & d.residual.bits[i]) == 0);
    }
    const auto same = minterm_decompose(spec, ax, by);
    REQUIRE(same.residual.count() == 0);
    REQUIRE(same.residual_entry == 0);
  }
  const auto ones = CspInput{std::vector<std::uint8_t>(spec.input_length(), 1)};
  REQUIRE_THROWS_AS(slack_entry_is(spec, k, ones, bob_encode(spec, g, gad, {0, 0, 0})), xc::Error);
}

TEST_CASE("chain check: witness matrix equals slack matrix") {
  const auto g = builtin_graph("triangle");
  const auto gad = build_gadget();
  xc::Rng rng(4);
  std::vector<std::vector<int>> xs, ys;
  for (int t = 0; t < 24; ++t) {
    xs.push_back(random_assignment(3, 8, rng));
    ys.push_back(random_assignment(3, 8, rng));
  }
  const auto r = chain_check(g, gad, xs, ys);
  REQUIRE(r.ok());
  REQUIRE(r.witness == r.slack);
  REQUIRE(r.witness == xc::lifting::lifted_witness_matrix(gad, g, xs, ys));
}

TEST_CASE("edge list export") {
  const auto spec = build_csp_spec(builtin_graph("edge"), 2);
  const ConflictGraph k(spec);
  const auto text = k.to_edge_list();
  REQUIRE(text.rfind("p edge " + std::to_string(k.node_count()) + " " + std::to_string(k.edge_count()), 0) == 0);
  REQUIRE(k.to_json(spec).contains("edges"));
}
