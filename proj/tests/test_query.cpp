#include <bit>

#include "catch_amalgamated.hpp"
#include "xc/query.hpp"

using namespace xc::query;
using xc::Rational;
using xc::tseitin::builtin_graph;
using xc::tseitin::builtin_graph_names;

namespace {

std::size_t naive_viol(const LabeledGraph& g, Mask z) {
  return xc::tseitin::violations(g, from_mask(z, g.edge_count())).size();
}

}  // namespace

TEST_CASE("conjunction basics") {
  const auto c = Conjunction::from_literals({{0, 1}, {3, 0}});
  REQUIRE(c.degree() == 2);
  REQUIRE(c.read_set() == std::vector<std::size_t>{0, 3});
  REQUIRE(c.accepts(0b0001));
  REQUIRE_FALSE(c.accepts(0b1001));
  REQUIRE(Conjunction::from_json(c.to_json()) == c);
  REQUIRE_THROWS_AS(Conjunction::from_literals({{1, 0}, {1, 1}}), xc::Error);
  REQUIRE_THROWS_AS(Conjunction::from_literals({{64, 0}}), xc::Error);
}

TEST_CASE("junta evaluation") {
  ConicalJunta empty;
  ConicalJunta one{{Term{Rational(1), Conjunction{}}}};
  for (Mask z = 0; z < 8; ++z) {
    REQUIRE(eval_junta(empty, z) == 0);
    REQUIRE(eval_junta(one, z) == 1);
  }
  ConicalJunta h{{Term{Rational(2), Conjunction::from_literals({{0, 1}})}, Term{Rational(3), Conjunction{}}}};
  REQUIRE(eval_junta(h, 1) == 5);
  REQUIRE(eval_junta(h, 2) == 3);
  REQUIRE(eval_junta_all(h, 2) == std::vector<std::int64_t>{3, 5, 3, 5});
  const auto back = ConicalJunta::from_json(h.to_json());
  REQUIRE(back.terms.size() == 2);
  REQUIRE(back.terms[0].weight == 2);
  REQUIRE(h.degree() == 1);
}

TEST_CASE("violation counts match the Tseitin module") {
  for (const char* name : {"triangle", "k4", "c5", "petersen"}) {
    const auto g = builtin_graph(name);
    const auto v = violation_counts(g);
    REQUIRE(v.size() == (std::size_t{1} << g.edge_count()));
    for (Mask z = 0; z < v.size(); z += 1 + (v.size() >> 12)) REQUIRE(v[z] == naive_viol(g, z));
  }
}

TEST_CASE("decision trees solve the search problem") {
  for (const auto& name : builtin_graph_names()) {
    const auto g = builtin_graph(name);
    if (g.edge_count() > 16) continue;
    const auto scan = node_scan_tree(g);
    REQUIRE(validate_tree(scan, g).ok());
    if (g.edge_count() <= 10) {
      const auto full = full_height_tree(g);
      REQUIRE(validate_tree(full, g).ok());
      REQUIRE(full.height() == static_cast<int>(g.edge_count()));
    }
  }
  const auto g = builtin_graph("triangle");
  DecisionTree bad;
  bad.set_root(bad.add_leaf(1));
  REQUIRE(validate_tree(bad, g).wrong_answers > 0);
  REQUIRE_THROWS_AS(tree_to_witness_junta(bad, g), xc::Error);
  DecisionTree repeat;
  const auto a = repeat.add_leaf(0);
  const auto inner = repeat.add_query(0, a, a);
  repeat.set_root(repeat.add_query(0, inner, inner));
  REQUIRE(validate_tree(repeat, g).repeated_query);
}

TEST_CASE("tree juntas are exact on the corpus") {
  for (const auto& name : builtin_graph_names()) {
    const auto g = builtin_graph(name);
    if (g.edge_count() > 16) continue;
    const auto t = node_scan_tree(g);
    const auto h = tree_to_witness_junta(t, g);
    const auto all = eval_junta_all(h, g.edge_count());
    for (Mask z = 0; z < all.size(); ++z) REQUIRE(all[z] == static_cast<std::int64_t>(naive_viol(g, z)) - 1);
    REQUIRE(check_witness_junta(h, g).ok());
    REQUIRE(h.degree() <= t.height() + g.max_degree());
    REQUIRE(verify_two_witness_claim(h, g).ok());
  }
  const auto tri = builtin_graph("triangle");
  const auto h = tree_to_witness_junta(full_height_tree(tri), tri);
  REQUIRE(eval_junta(h, to_mask(xc::tseitin::make_input_with_violations(tri, {0, 1, 2}))) == 2);
  REQUIRE(eval_junta(h, 0) == 0);
}

TEST_CASE("approximate junta mode") {
  const auto g = builtin_graph("k4");
  auto h = tree_to_witness_junta(node_scan_tree(g), g);
  REQUIRE(check_approximate_junta(h, g, 0.1).ok());
  h.terms.push_back(Term{Rational(1, 20), Conjunction{}});
  REQUIRE_FALSE(check_witness_junta(h, g).ok());
  REQUIRE_FALSE(check_approximate_junta(h, g, 0.1).ok());
}

TEST_CASE("rational simplex") {
  using R = Rational;
  const std::vector<std::vector<R>> a{{R(1), R(1)}, {R(1), R(-1)}};
  const auto ok = solve_feasibility(a, {R(3), R(1)});
  REQUIRE(ok.feasible);
  REQUIRE(ok.x == std::vector<R>{R(2), R(1)});
  const auto no = solve_feasibility(a, {R(1), R(3)});
  REQUIRE_FALSE(no.feasible);
  // y A >= 0 and y b < 0.
  for (std::size_t j = 0; j < 2; ++j) REQUIRE(no.farkas[0] * a[0][j] + no.farkas[1] * a[1][j] >= 0);
  REQUIRE(no.farkas[0] * 1 + no.farkas[1] * 3 < 0);
  REQUIRE_FALSE(solve_feasibility({{R(1)}}, {R(-1)}).feasible);
}

TEST_CASE("conjunction enumeration order") {
  const auto cs = conjunctions_up_to(3, 1);
  REQUIRE(cs.size() == 1 + 3 * 2);
  REQUIRE(cs[0] == Conjunction{});
  REQUIRE(cs[1] == Conjunction{1, 0});
  REQUIRE(cs[2] == Conjunction{1, 1});
  REQUIRE(conjunctions_up_to(4, 4).size() == 81);
}

TEST_CASE("LP minimal degree") {
  const auto edge = builtin_graph("edge");
  const auto e0 = min_junta_degree_lp(edge, 0);
  REQUIRE(e0.feasible);
  REQUIRE(minimal_junta_degree(edge).degree == 0);

  const auto tri = builtin_graph("triangle");
  const auto s = minimal_junta_degree(tri);
  REQUIRE(s.degree == brute_force_minimal_degree(tri));
  REQUIRE(s.witness.feasible);
  REQUIRE(check_witness_junta(*s.witness.junta, tri).ok());
  if (s.degree > 0) {
    REQUIRE(s.refutation.has_value());
    REQUIRE(farkas_certifies(tri, s.degree - 1, s.refutation->farkas));
  }
  bool seen = false;
  for (int d = 0; d <= 3; ++d) {
    const bool f = min_junta_degree_lp(tri, d).feasible;
    REQUIRE((!seen || f));
    REQUIRE(f == brute_force_junta_feasible(tri, d));
    seen = f;
  }
  const auto tree_degree = tree_to_witness_junta(node_scan_tree(tri), tri).degree();
  REQUIRE(min_junta_degree_lp(tri, tree_degree).feasible);

  const auto path = builtin_graph("path3");
  REQUIRE(minimal_junta_degree(path).degree == brute_force_minimal_degree(path));
  LpOptions tight;
  tight.edge_cap = 2;
  REQUIRE_THROWS_AS(min_junta_degree_lp(tri, 1, tight), xc::ResourceError);
}

TEST_CASE("completion preserves semantics") {
  const auto g = builtin_graph("prism");
  const Term empty{Rational(1), Conjunction{}};
  const auto id = complete_conjunction(empty, g);
  REQUIRE(id.terms.size() == 1);
  REQUIRE(id.growth == 1);

  // Reading every edge at node 0 isolates it as a one-node component.
  Mask care = 0;
  for (auto e : g.incident(0)) care |= Mask{1} << e;
  const Term t{Rational(3), Conjunction{care, 0}};
  const auto c = complete_conjunction(t, g);
  REQUIRE(c.completed_reads.size() >= c.original_reads.size());
  for (const auto& term : c.terms) REQUIRE(complement_connected(term.conjunction, g));
  for (Mask z = 0; z < (Mask{1} << g.edge_count()); ++z) {
    Rational sum = 0;
    for (const auto& term : c.terms) {
      if (term.conjunction.accepts(z)) sum += term.weight;
    }
    REQUIRE(sum == (t.conjunction.accepts(z) ? Rational(3) : Rational(0)));
  }

  // Reading the rung edges of the prism leaves two triangles of |V|/2 nodes.
  const auto tri_cut = Conjunction::from_literals({{*g.edge_index(0, 3), 0}, {*g.edge_index(1, 4), 0}, {*g.edge_index(2, 5), 1}});
  REQUIRE_FALSE(complement_connected(tri_cut, g));
  const auto cc = complete_conjunction(Term{Rational(1), tri_cut}, g);
  REQUIRE(cc.absorbed_components.size() == 2);
  REQUIRE(cc.absorbed_components[0].size() == 3);
  REQUIRE(cc.completed_reads.size() == g.edge_count());
  REQUIRE(cc.growth == 3);
  REQUIRE(cc.terms.size() == 64);
}

TEST_CASE("two-witness claim") {
  const auto g = builtin_graph("k5");
  const ConicalJunta constant{{Term{Rational(1), Conjunction{}}}};
  const auto r = verify_two_witness_claim(constant, g);
  REQUIRE(r.failing == 1);
  const auto& v = r.terms[0];
  REQUIRE(v.fooling_input.has_value());
  REQUIRE(v.fooling_violations.size() == 1);
  REQUIRE(v.fooling_accepted);
  REQUIRE(xc::tseitin::violations(g, *v.fooling_input).size() == 1);

  const auto w = witness_conjunction(g, 1, 3);
  REQUIRE(witnessed_violations(w, g) == std::vector<Node>{1, 3});
  REQUIRE(verify_two_witness_claim(ConicalJunta{{Term{Rational(1), w}}}, g).ok());
}

TEST_CASE("prefactor ratio is ten thirds") {
  for (int n = 7; n <= 30; ++n) REQUIRE(prefactor_ratio(n) == Rational(10, 3));
  REQUIRE(mu_prefactor(7, 3) == Rational(1, 7));
  REQUIRE_THROWS_AS(mu_prefactor(7, 4), xc::Error);
}

TEST_CASE("exact mu agrees with enumeration and the tseitin law") {
  xc::Rng rng(6);
  for (const char* name : {"k4", "k5", "prism", "petersen"}) {
    const auto g = builtin_graph(name);
    for (int t = 0; t < 6; ++t) {
      Mask care = 0;
      for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (rng() % 3 == 0) care |= Mask{1} << e;
      }
      const Conjunction c{care, rng() & care};
      for (int i = 1; i <= std::min(5, g.node_count()); i += 2) {
        REQUIRE(mu_exact(c, g, i) == mu_brute_force(c, g, i));
      }
    }
  }
  const auto g = builtin_graph("k4");
  const auto law = xc::tseitin::mu_distribution(g, 3);
  const Conjunction c{0b101, 0b001};
  Rational direct = 0;
  for (Mask z = 0; z < law.size(); ++z) {
    if (c.accepts(z)) direct += law[z];
  }
  REQUIRE(mu_exact(c, g, 3) == direct);
}

TEST_CASE("witness juntas have expectation i - 1") {
  for (const char* name : {"k5", "k6", "prism"}) {
    const auto g = builtin_graph(name);
    const auto h = tree_to_witness_junta(node_scan_tree(g), g);
    REQUIRE(junta_expectation(h, g, 3) == 2);
    REQUIRE(junta_expectation(h, g, 5) == 4);
  }
}

TEST_CASE("mu ratio on complete graphs") {
  const auto g = builtin_graph("k9");
  const auto c = witness_conjunction(g, 0, 1);
  const auto r = measure_mu_ratio(c, g);
  REQUIRE(r.prefactor_ratio == Rational(10, 3));
  REQUIRE(r.decomposition_holds);
  REQUIRE(r.coupling_holds);
  REQUIRE(r.mu3 == Rational(1, 98304));
  REQUIRE(r.mu5 == Rational(5, 147456));
  REQUIRE(r.ratio == Rational(10, 3));
  REQUIRE(r.good_event == 1);
  REQUIRE(r.mu3 == mu_exact(c, g, 3));

  const auto k6 = builtin_graph("k6");
  const auto r6 = measure_mu_ratio(witness_conjunction(k6, 0, 1), k6);
  REQUIRE(r6.coupling_method == "cycle-space enumeration");
  REQUIRE(r6.coupling_holds);
  REQUIRE(r6.decomposition_holds);

  MuRatioOptions mc;
  mc.exhaustive = false;
  mc.trials = 20000;
  mc.seed = 1;
  const auto r7 = measure_mu_ratio(witness_conjunction(builtin_graph("k7"), 0, 1), builtin_graph("k7"), mc);
  REQUIRE(r7.trials == 20000);
  REQUIRE(std::abs(r7.mu3_estimate - r7.mu3.get_d()) <= 4 * r7.mu3_stderr + 1e-12);
  REQUIRE_THROWS_AS(measure_mu_ratio(Conjunction{}, g), xc::Error);
}
