// Acceptance harness: one line per criterion with its wall time.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "xc/gadget_verify.hpp"
#include "xc/lifting.hpp"
#include "xc/nnrank.hpp"
#include "xc/query.hpp"
#include "xc/reductions.hpp"

namespace {

using xc::Rational;

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << what << "; ";
      ok = false;
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds, 0 for none
  std::function<void(Outcome&)> body;
};

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
  return r;
}

std::vector<int> random_assignment(std::size_t n, xc::Rng& rng) {
  std::vector<int> a(n);
  for (auto& v : a) v = static_cast<int>(rng() % 8);
  return a;
}

void gadget_suite(Outcome& o) {
  using namespace xc::gadget;
  const auto checks = verify_gadget(build_gadget());
  for (const auto& c : checks) o.require(c.status == xc::Status::pass, "main gadget check " + c.name);
  std::size_t cases = 0;
  const auto g = build_gadget();
  for (Bit z : {Bit{0}, Bit{1}}) {
    for (const auto& w : enumerate_windows(g, z)) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          o.require(embeddings_with(g, w, a, b).size() == 1, "embedding not unique");
          ++cases;
        }
      }
    }
  }
  o.require(cases == 192 * 4, "window case count");
  const auto neg = verify_gadget(build_smaller_gadget());
  for (const auto& c : neg) {
    const bool should_fail = c.name == "unique_stretched_embedding";
    o.require(should_fail ? c.status == xc::Status::fail : c.passed(), "negative control check " + c.name);
    if (c.name == "regularity") o.require(c.status == xc::Status::pass, "negative control regularity");
  }
}

void digraphs_and_walks(Outcome& o) {
  using namespace xc::gadget;
  const auto g = build_gadget();
  for (Bit b : {Bit{0}, Bit{1}}) {
    const auto dg = window_digraph(g, b);
    o.require(dg.nodes.size() == 32, "node count");
    o.require(dg.non_loop_edges == 192, "edge count");
    o.require(dg.strongly_connected(), "strong connectivity");
    const auto s = walk_statistics(dg, 100000, 20260101 + b, 4);
    o.require(s.walks == 100000, "walk count");
    o.require(s.p_value >= 0.01, "chi-square rejected independence");
    o.require(s.max_tv <= 0.02, "edge marginal TV above 0.02");
    o.note << "b=" << int(b) << " p=" << s.p_value << " maxTV=" << s.max_tv << "; ";
  }
}

void tseitin_invariants(Outcome& o) {
  using namespace xc::tseitin;
  xc::Rng rng(31);
  std::size_t graphs_exact = 0;
  for (const auto& name : builtin_graph_names()) {
    const auto g = builtin_graph(name);
    const auto basis = cycle_space_basis(g);
    for (int t = 0; t < 500; ++t) {
      EdgeBits z(g.edge_count());
      for (std::size_t e = 0; e < z.size(); ++e) z.set(e, rng() & 1U);
      const auto v = violations(g, z);
      o.require(v.size() % 2 == 1, name + ": even violation count");
      if (basis.size() <= 10 && t < 20) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << basis.size()); ++m) {
          const auto q = combine(basis, g.edge_count(), m);
          o.require(is_eulerian(g, q), name + ": basis combination not eulerian");
          o.require(violations(g, flip_path(z, q)) == v, name + ": eulerian flip changed violations");
        }
      }
      for (int i : {1, 3}) {
        if (i <= g.node_count()) o.require(violations(g, sample_mu(g, i, rng)).size() == static_cast<std::size_t>(i), "sample_mu size");
      }
    }
    if (g.edge_count() > 12) continue;
    ++graphs_exact;
    for (int i = 1; i <= g.node_count(); i += 2) {
      const auto law = mu_distribution(g, i);
      const Rational mass(1, static_cast<long>(binom(g.node_count(), i) << g.cycle_space_dimension()));
      for (std::uint64_t m = 0; m < law.size(); ++m) {
        const bool in = violations(g, EdgeBits::from_mask(m, g.edge_count())).size() == static_cast<std::size_t>(i);
        o.require(law[m] == (in ? mass : Rational(0)), name + ": mu law differs from closed form");
      }
    }
  }
  o.note << graphs_exact << " graphs with exact mu laws";
}

void fano(Outcome& o) {
  using namespace xc::tseitin;
  const auto g = builtin_graph("k11");
  const auto t = complete_terminals(g);
  o.require(t.k == 5, "k11 routing capacity");
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    xc::Rng rng(seed);
    const auto s = build_fano_scaffold(g, t, rng);
    for (std::size_t e = 0; e < 7; ++e) o.require(violations(g, s.z_lines[e]) == s.line_nodes(e), "viol(z_e) != e");
    for (std::size_t e = 0; e < 7; ++e) {
      for (std::size_t f = e + 1; f < 7; ++f) {
        const auto c = near_disjointness_coupling(g, t, s, e, f);
        o.require(c.difference_eulerian && is_eulerian(g, c.six_path_difference), "six-path difference not eulerian");
        o.require(c.labelings_agree, "coupled labelings disagree");
      }
    }
  }
  o.note << "10 seeds, 21 line pairs each";
}

void reduction_chain(Outcome& o) {
  using namespace xc::reductions;
  const auto gad = xc::gadget::build_gadget();
  const auto tri = xc::tseitin::builtin_graph("triangle");
  const auto k4 = xc::tseitin::builtin_graph("k4");
  const auto all3 = xc::lifting::all_player_inputs(gad, 3);

  const auto spec3 = build_csp_spec(tri, 8);
  std::size_t bad = 0;
  for (const auto& x : all3) {
    for (const auto& y : all3) bad += check_parsimony(spec3, tri, gad, x, y).ok() ? 0 : 1;
  }
  o.require(bad == 0, "triangle parsimony mismatch");

  const auto spec4 = build_csp_spec(k4, 8);
  xc::Rng rng(44);
  for (int t = 0; t < 100000; ++t) {
    const auto x = random_assignment(6, rng);
    const auto y = random_assignment(6, rng);
    bad += check_parsimony(spec4, k4, gad, x, y).ok() ? 0 : 1;
  }
  o.require(bad == 0, "k4 parsimony mismatch");

  for (const auto* g : {&tri, &k4}) {
    const auto spec2 = build_csp_spec(*g, 2);
    const ConflictGraph k(spec2);
    const auto mis = k.maximal_independent_sets();
    o.require(mis == encoded_assignments(spec2), "alphabet-2 MIS != encoded assignments");
    if (spec2.input_length() <= 22) o.require(mis == brute_force_minterms(spec2), "alphabet-2 MIS != minterms");
    for (const auto& s : mis) {
      o.require(eval_sat(spec2, s).has_value(), "MIS not a 1-input");
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s.bits[i]) continue;
        auto less = s;
        less.bits[i] = 0;
        o.require(!eval_sat(spec2, less).has_value(), "MIS not minimal");
      }
    }
  }
  const ConflictGraph k3(spec3);
  o.require(k3.maximal_independent_sets() == encoded_assignments(spec3), "alphabet-8 MIS != encoded assignments");

  const auto full = chain_check(tri, gad, all3, all3);
  o.require(full.ok(), "triangle slack != witness matrix");
  std::vector<std::vector<int>> xs, ys;
  for (int t = 0; t < 300; ++t) {
    xs.push_back(random_assignment(6, rng));
    ys.push_back(random_assignment(6, rng));
  }
  o.require(chain_check(k4, gad, xs, ys).ok(), "k4 slack != witness matrix");
  o.note << "triangle 262144 pairs exhaustive, k4 100000 sampled";
}

void protocol(Outcome& o) {
  using namespace xc::nnrank;
  xc::Rng rng(66);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 30;
    BitVector x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<std::uint8_t>(rng() & 1U);
      y[i] = static_cast<std::uint8_t>(rng() & 1U);
    }
    const auto i0 = rng() % n;
    x[i0] = 1;
    y[i0] = 0;
    const auto est = simulate_witness_protocol(first_witness, x, y, 100000, rng);
    std::int64_t w = 0;
    for (std::size_t i = 0; i < n; ++i) w += (x[i] == 1 && y[i] == 0) ? 1 : 0;
    Rational expected(w - 1, static_cast<long>(n - 1));
    expected.canonicalize();
    o.require(est.exact == expected, "exact acceptance formula");
    o.require(est.z_score() <= 4.0, "estimate outside four standard errors");
    worst = std::max(worst, est.z_score());
  }
  o.note << "max z=" << worst;
}

void nnrank_sanity(Outcome& o) {
  using namespace xc::nnrank;
  const auto b = compute_rank_bounds(xc::IntMatrix::identity(4));
  o.require(b.exact == std::optional<std::size_t>{4}, "I4 not certified at 4");
  xc::Rng rng(77);
  for (int t = 0; t < 500; ++t) {
    xc::IntMatrix m(1 + rng() % 5, 1 + rng() % 5);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = static_cast<std::int64_t>(rng() & 1U);
    }
    o.require(rectangle_cover_lower_bound(m).value == brute_force_rectangle_cover(m), "cover mismatch");
  }
  const auto square = polytope_slack_matrix({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{-1, 0}, {0, -1}, {1, 0}, {0, 1}},
                                            {0, 0, 1, 1});
  const auto square_q = polytope_slack_matrix({{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                                              {{-1, 0}, {0, -1}, {1, 0}, {0, 1}, {1, 1}}, {0, 0, 1, 1, 2});
  const auto tri = xc::tseitin::builtin_graph("triangle");
  const auto gad = xc::gadget::build_gadget();
  std::vector<std::vector<int>> xs, ys;
  for (int t = 0; t < 12; ++t) {
    xs.push_back(random_assignment(3, rng));
    ys.push_back(random_assignment(3, rng));
  }
  const auto csp = xc::reductions::chain_check(tri, gad, xs, ys).slack;
  std::size_t instances = 0;
  for (const auto& [p, pq] : std::vector<std::pair<std::optional<xc::IntMatrix>, xc::IntMatrix>>{
           {square, square}, {square, square_q}, {std::nullopt, csp}, {std::nullopt, xc::IntMatrix::identity(4)}}) {
    const auto r = check_slack_extension_inequality(p, pq);
    o.require(r.consistent, "slack extension interval inconsistent");
    ++instances;
  }
  o.note << instances << " slack-extension instances";
}

void query_suite(Outcome& o) {
  using namespace xc::query;
  std::size_t graphs = 0;
  for (const auto& name : xc::tseitin::builtin_graph_names()) {
    const auto g = xc::tseitin::builtin_graph(name);
    if (g.edge_count() > 16) continue;
    const auto h = tree_to_witness_junta(node_scan_tree(g), g);
    o.require(check_witness_junta(h, g).ok(), name + ": tree junta not exact");
    if (g.node_count() >= 5) {
      o.require(junta_expectation(h, g, 3) == 2, name + ": E[h(z3)] != 2");
      o.require(junta_expectation(h, g, 5) == 4, name + ": E[h(z5)] != 4");
    }
    ++graphs;
  }
  const auto tri = xc::tseitin::builtin_graph("triangle");
  const auto lp = minimal_junta_degree(tri);
  o.require(lp.degree == brute_force_minimal_degree(tri), "triangle LP degree != brute force");
  for (int n = 7; n <= 30; ++n) o.require(prefactor_ratio(n) == Rational(10, 3), "prefactor ratio");
  const ConicalJunta constant{{Term{Rational(1), Conjunction{}}}};
  const auto k5 = xc::tseitin::builtin_graph("k5");
  const auto r = verify_two_witness_claim(constant, k5);
  o.require(r.failing == 1 && r.terms[0].fooling_accepted && r.terms[0].fooling_violations.size() == 1,
            "constant junta not fooled");
  o.note << graphs << " graphs, triangle LP degree " << lp.degree;
}

void reproducibility(Outcome& o) {
  using namespace xc::cli;
  std::vector<xc::json> configs;
  for (const auto& [group, action] : commands()) configs.push_back(xc::json{{"command", group + " " + action}});
  configs.push_back(xc::json{{"command", "gadget verify"}, {"gadget", "negative-control"}});
  configs.push_back(xc::json{{"command", "query mu-ratio"}, {"exhaustive", true}});
  configs.push_back(xc::json{{"command", "reduce csp"}, {"exhaustive", true}});
  configs.push_back(xc::json{{"command", "tseitin sample"}, {"exhaustive", true}, {"seed", 3}});
  for (const auto& c : configs) {
    const auto first = run(c);
    const auto r = replay(serialize(first.report));
    o.require(r.identical, "replay differs for " + c["command"].get<std::string>());
  }
  o.note << configs.size() << " reports replayed";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "gadget properties, embeddings, flips, negative control", 5, gadget_suite},
      {2, "window digraphs and walk statistics", 30, digraphs_and_walks},
      {3, "Tseitin invariants and exact mu laws", 0, tseitin_invariants},
      {4, "Fano scaffold on K11", 5, fano},
      {5, "reduction chain on triangle and K4", 0, reduction_chain},
      {6, "witness protocol simulation", 0, protocol},
      {7, "nonnegative rank sanity", 0, nnrank_sanity},
      {8, "query suite", 0, query_suite},
      {9, "report replay", 0, reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs > c.time_limit) o.require(false, "time limit exceeded");
    if (!o.ok) ++failures;
    std::printf("[%s] criterion %d: %s (%.2f s%s) %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                c.time_limit > 0 ? (", limit " + std::to_string(static_cast<int>(c.time_limit)) + " s").c_str() : "",
                o.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
