#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "xc/gadget_verify.hpp"
#include "xc/graph_io.hpp"
#include "xc/lifting.hpp"
#include "xc/nnrank.hpp"
#include "xc/query.hpp"
#include "xc/reductions.hpp"
#include "xc/tseitin.hpp"

namespace xc::cli {

namespace {

using tseitin::LabeledGraph;
using tseitin::Node;

struct Context {
  json config;
  std::vector<Check> checks;
  json result = json::object();

  std::uint64_t seed() const { return config.at("seed").get<std::uint64_t>(); }
  std::size_t workers() const { return config.at("workers").get<std::size_t>(); }
  std::size_t trials() const { return config.at("trials").get<std::size_t>(); }
  double tolerance() const { return config.at("tolerance").get<double>(); }
  bool exhaustive() const { return config.at("exhaustive").get<bool>(); }
  std::string str(const char* key) const { return config.at(key).get<std::string>(); }
  int integer(const char* key) const { return config.at(key).get<int>(); }

  Check& add(std::string name, bool ok) {
    Check c;
    c.name = std::move(name);
    c.status = ok ? Status::pass : Status::fail;
    checks.push_back(std::move(c));
    return checks.back();
  }
  Check& skip(std::string name, std::string reason) {
    Check c;
    c.name = std::move(name);
    c.status = Status::skipped;
    c.detail["reason"] = std::move(reason);
    checks.push_back(std::move(c));
    return checks.back();
  }
};

gadget::Gadget load_gadget(const std::string& name) {
  if (name == "main") return gadget::build_gadget();
  if (name == "negative-control") return gadget::build_smaller_gadget();
  if (std::filesystem::exists(name)) {
    std::ifstream in(name);
    std::stringstream buf;
    buf << in.rdbuf();
    return gadget::Gadget::from_text(buf.str());
  }
  throw Error("unknown gadget '" + name + "' (main, negative-control, or a table file)");
}

// gadget verify

void gadget_verify(Context& ctx) {
  const auto g = load_gadget(ctx.str("gadget"));
  for (auto& c : gadget::verify_gadget(g)) ctx.checks.push_back(std::move(c));
  json digraphs = json::array();
  for (gadget::Bit b = 0; b < 2; ++b) {
    const auto dg = gadget::window_digraph(g, b);
    digraphs.push_back(json{{"value", b},
                            {"nodes", dg.nodes.size()},
                            {"non_loop_edges", dg.non_loop_edges},
                            {"strongly_connected", dg.strongly_connected()}});
    const std::string name = "walk_statistics_" + std::to_string(b);
    if (ctx.trials() == 0) {
      ctx.skip(name, "no walks requested");
    } else if (!dg.walk_regular()) {
      ctx.skip(name, "window digraph is not walk-regular");
    } else {
      const auto s = gadget::walk_statistics(dg, ctx.trials(), derive_seed(ctx.seed(), b), ctx.workers());
      ctx.add(name, s.passes(0.01, ctx.tolerance())).detail = s.to_json();
    }
  }
  std::size_t windows0 = gadget::enumerate_windows(g, 0).size();
  std::size_t windows1 = gadget::enumerate_windows(g, 1).size();
  ctx.result = json{{"table", g.to_text()},
                    {"windows", {windows0, windows1}},
                    {"digraphs", digraphs}};
}

// tseitin

void tseitin_sample(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  const int i = ctx.integer("i");
  Rng rng(ctx.seed());
  const auto basis = tseitin::cycle_space_basis(g);
  std::size_t bad_size = 0, bad_flip = 0;
  json samples = json::array();
  for (std::size_t k = 0; k < ctx.trials(); ++k) {
    const auto z = tseitin::sample_mu(g, i, rng);
    const auto v = tseitin::violations(g, z);
    if (v.size() % 2 == 0 || static_cast<int>(v.size()) != i) ++bad_size;
    const auto q = tseitin::sample_eulerian(basis, g.edge_count(), rng);
    if (tseitin::violations(g, z ^ q) != v) ++bad_flip;
    if (samples.size() < 10) samples.push_back(json{{"z", z.to_string()}, {"violations", v}});
  }
  ctx.add("odd_violations", bad_size == 0).detail = json{{"samples", ctx.trials()}, {"mismatches", bad_size}};
  ctx.add("eulerian_flips_preserve_violations", bad_flip == 0).detail =
      json{{"samples", ctx.trials()}, {"mismatches", bad_flip}};

  const std::size_t dim = basis.size();
  if (ctx.exhaustive() && dim <= 10) {
    const auto z = tseitin::make_input_with_violations(g, tseitin::random_subset(g.node_count(), i, rng));
    const auto v = tseitin::violations(g, z);
    std::size_t bad = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << dim); ++m) {
      const auto q = tseitin::combine(basis, g.edge_count(), m);
      if (!tseitin::is_eulerian(g, q) || tseitin::violations(g, z ^ q) != v) ++bad;
    }
    ctx.add("cycle_space_exhaustive", bad == 0).detail = json{{"dimension", dim}, {"mismatches", bad}};
  } else {
    ctx.skip("cycle_space_exhaustive", "needs --exhaustive and cycle space dimension <= 10");
  }

  if (ctx.exhaustive() && g.edge_count() <= 12) {
    const auto law = tseitin::mu_distribution(g, i);
    mpz_class sets;
    mpz_bin_uiui(sets.get_mpz_t(), static_cast<unsigned long>(g.node_count()), static_cast<unsigned long>(i));
    mpz_class denom = sets;
    denom <<= static_cast<mp_bitcnt_t>(dim);
    std::size_t bad = 0;
    for (std::size_t z = 0; z < law.size(); ++z) {
      const auto v = tseitin::violations(g, tseitin::EdgeBits::from_mask(z, g.edge_count()));
      Rational expected = static_cast<int>(v.size()) == i ? Rational(mpz_class(1), denom) : Rational(0);
      expected.canonicalize();
      if (law[z] != expected) ++bad;
    }
    ctx.add("mu_exact_distribution", bad == 0).detail = json{{"labelings", law.size()}, {"mismatches", bad}};
  } else {
    ctx.skip("mu_exact_distribution", "needs --exhaustive and at most 12 edges");
  }
  ctx.result = json{{"graph", io::graph_to_json(g)}, {"i", i}, {"cycle_space_dimension", dim}, {"samples", samples}};
}

json path_json(const tseitin::Path& p) { return json{{"nodes", p.nodes}, {"edges", p.edges.to_string()}}; }

void tseitin_route(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  const auto t = tseitin::complete_terminals(g);
  const std::size_t pairings = tseitin::certify_routable(g, t);
  ctx.add("k_routable", true).detail = json{{"k", t.k}, {"pairings", pairings}};

  Rng rng(ctx.seed());
  auto chosen = tseitin::random_subset(static_cast<int>(t.terminals.size()), 2 * t.k, rng);
  std::shuffle(chosen.begin(), chosen.end(), rng);
  tseitin::Pairing pairing;
  for (std::size_t j = 0; j + 1 < chosen.size(); j += 2) {
    pairing.emplace_back(t.terminals[static_cast<std::size_t>(chosen[j])],
                         t.terminals[static_cast<std::size_t>(chosen[j + 1])]);
  }
  const auto paths = tseitin::route_pairing(g, t, pairing);
  tseitin::EdgeSet used(g.edge_count());
  bool disjoint = true;
  json out = json::array();
  for (std::size_t j = 0; j < paths.size(); ++j) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (paths[j].edges[e] && used[e]) disjoint = false;
      if (paths[j].edges[e]) used.set(e, true);
    }
    const bool ends = paths[j].nodes.front() == pairing[j].first && paths[j].nodes.back() == pairing[j].second;
    if (!ends) disjoint = false;
    out.push_back(json{{"pair", {pairing[j].first, pairing[j].second}}, {"path", path_json(paths[j])}});
  }
  ctx.add("sample_routing_edge_disjoint", disjoint);
  ctx.result = json{{"terminals", t.terminals}, {"k", t.k}, {"routing", out}};
}

void tseitin_fano(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  const auto t = tseitin::complete_terminals(g);
  Rng rng(ctx.seed());
  const auto s = tseitin::build_fano_scaffold(g, t, rng);
  std::vector<Node> seven(s.embedded.begin(), s.embedded.end());
  std::sort(seven.begin(), seven.end());
  ctx.add("seven_violations", tseitin::violations(g, s.z7) == seven);
  std::size_t bad_lines = 0;
  json lines = json::array();
  for (std::size_t e = 0; e < 7; ++e) {
    const auto v = tseitin::violations(g, s.z_lines[e]);
    if (v != s.line_nodes(e)) ++bad_lines;
    lines.push_back(json{{"line", e}, {"nodes", s.line_nodes(e)}, {"violations", v}, {"z", s.z_lines[e].to_string()}});
  }
  ctx.add("line_violations", bad_lines == 0).detail = json{{"mismatches", bad_lines}};
  std::size_t bad_euler = 0, bad_agree = 0;
  json couplings = json::array();
  for (std::size_t e = 0; e < 7; ++e) {
    for (std::size_t f = e + 1; f < 7; ++f) {
      const auto c = tseitin::near_disjointness_coupling(g, t, s, e, f);
      if (!c.difference_eulerian) ++bad_euler;
      if (!c.labelings_agree) ++bad_agree;
      couplings.push_back(json{{"lines", {e, f}}, {"difference", c.six_path_difference.to_string()},
                               {"eulerian", c.difference_eulerian}, {"agree", c.labelings_agree}});
    }
  }
  ctx.add("six_path_difference_eulerian", bad_euler == 0).detail = json{{"pairs", 21}, {"failures", bad_euler}};
  ctx.add("coupled_labelings_agree", bad_agree == 0).detail = json{{"pairs", 21}, {"failures", bad_agree}};
  ctx.result = json{{"embedded", seven}, {"z7", s.z7.to_string()}, {"lines", lines}, {"couplings", couplings}};
}

// lift

void lift_matrix(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  const auto gad = load_gadget(ctx.str("gadget"));
  const auto m = lifting::full_lifted_witness_matrix(gad, g);
  std::map<std::int64_t, std::size_t> histogram;
  bool even = true;
  for (auto v : m.data()) {
    ++histogram[v];
    if (v < 0 || v % 2 != 0) even = false;
  }
  ctx.add("entries_even_nonnegative", even);
  json hist = json::object();
  for (const auto& [v, c] : histogram) hist[std::to_string(v)] = c;
  const auto r = nnrank::rank(m);
  ctx.result = json{{"rows", m.rows()}, {"cols", m.cols()}, {"histogram", hist},
                    {"rank", r.rank}, {"rank_over_rationals", r.over_rationals}};
  if (m.rows() <= 64 && m.cols() <= 64) ctx.result["matrix"] = m.to_json();
}

// reduce

std::vector<int> random_player_input(const gadget::Gadget& gad, std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> pick(0, gad.dim() - 1);
  std::vector<int> x(n);
  for (auto& v : x) v = pick(rng);
  return x;
}

void reduce_csp(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  const auto gad = load_gadget(ctx.str("gadget"));
  const auto spec = reductions::build_csp_spec(g, gad.dim());
  const std::size_t n = g.edge_count();
  std::size_t pairs = 0, bad = 0;
  auto test = [&](const std::vector<int>& x, const std::vector<int>& y) {
    ++pairs;
    if (!reductions::check_parsimony(spec, g, gad, x, y).ok()) ++bad;
  };
  bool exhaustive = false;
  if (ctx.exhaustive()) {
    const auto all = lifting::all_player_inputs(gad, n, 512);
    exhaustive = true;
    for (const auto& x : all) {
      for (const auto& y : all) test(x, y);
    }
  } else {
    Rng rng(ctx.seed());
    for (std::size_t k = 0; k < ctx.trials(); ++k) {
      const auto x = random_player_input(gad, n, rng);
      const auto y = random_player_input(gad, n, rng);
      test(x, y);
    }
  }
  ctx.add("parsimony", bad == 0).detail = json{{"pairs", pairs}, {"exhaustive", exhaustive}, {"mismatches", bad}};
  ctx.result = json{{"spec", spec.to_json()}, {"input_length", spec.input_length()}};
  if (spec.input_length() <= 256) ctx.result["manifest"] = reductions::input_manifest(spec);
}

void reduce_conflict_graph(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  const int alphabet = ctx.integer("alphabet");
  const auto spec = reductions::build_csp_spec(g, alphabet);
  const reductions::ConflictGraph k(spec);
  const auto mis = k.maximal_independent_sets();
  const auto encoded = reductions::encoded_assignments(spec);
  ctx.add("mis_equal_encoded_assignments", mis == encoded).detail =
      json{{"maximal_independent_sets", mis.size()}, {"assignments", encoded.size()}};
  if (spec.input_length() <= 22) {
    const auto minterms = reductions::brute_force_minterms(spec);
    ctx.add("minterms_equal_mis", minterms == mis).detail =
        json{{"minterms", minterms.size()}, {"inputs", std::size_t{1} << spec.input_length()}};
  } else {
    std::size_t bad = 0;
    for (const auto& x : mis) {
      if (!reductions::eval_sat(spec, x)) ++bad;
      for (std::size_t b = 0; b < x.size(); ++b) {
        if (!x.bits[b]) continue;
        auto smaller = x;
        smaller.bits[b] = 0;
        if (reductions::eval_sat(spec, smaller)) ++bad;
      }
    }
    ctx.add("mis_are_minterms", bad == 0).detail = json{{"sets", mis.size()}, {"failures", bad}};
  }
  ctx.result = json{{"nodes", k.node_count()}, {"edges", k.edge_count()}, {"max_degree", k.max_degree()},
                    {"maximal_independent_sets", mis.size()}};
  if (k.node_count() <= 64) ctx.result["graph"] = k.to_json(spec);
}

void reduce_chain_check(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  const auto gad = load_gadget(ctx.str("gadget"));
  const std::size_t n = g.edge_count();
  std::vector<std::vector<int>> xs, ys;
  if (ctx.exhaustive()) {
    xs = lifting::all_player_inputs(gad, n, 512);
    ys = xs;
  } else {
    Rng rng(ctx.seed());
    for (std::size_t k = 0; k < ctx.trials(); ++k) xs.push_back(random_player_input(gad, n, rng));
    for (std::size_t k = 0; k < ctx.trials(); ++k) ys.push_back(random_player_input(gad, n, rng));
  }
  const auto r = reductions::chain_check(g, gad, xs, ys);
  ctx.add("slack_equals_witness_matrix", r.ok()).detail =
      json{{"rows", xs.size()}, {"cols", ys.size()}, {"mismatches", r.mismatches}};

  const auto spec = reductions::build_csp_spec(g, gad.dim());
  std::size_t bad = 0, tested = 0;
  for (std::size_t i = 0; i < xs.size(); i += std::max<std::size_t>(1, xs.size() / 32)) {
    for (std::size_t j = 0; j < ys.size(); j += std::max<std::size_t>(1, ys.size() / 32)) {
      const auto y = reductions::bob_encode(spec, g, gad, ys[j]);
      auto x = reductions::alice_encode(spec, xs[i]);
      // Pad x with extra ones to exercise the residual part.
      for (std::size_t b = 0; b < x.size(); b += 7) x.bits[b] = 1;
      if (!reductions::eval_sat(spec, y)) {
        ++tested;
        if (!reductions::minterm_decompose(spec, x, y).identity_holds()) ++bad;
      }
    }
  }
  ctx.add("minterm_decomposition", bad == 0).detail = json{{"pairs", tested}, {"failures", bad}};
  std::map<std::int64_t, std::size_t> histogram;
  for (auto v : r.witness.data()) ++histogram[v];
  json hist = json::object();
  for (const auto& [v, c] : histogram) hist[std::to_string(v)] = c;
  ctx.result = json{{"rows", xs.size()}, {"cols", ys.size()}, {"histogram", hist}};
}

// nnrank

IntMatrix load_matrix(const std::string& source, const Context& ctx) {
  if (source.rfind("identity:", 0) == 0) return IntMatrix::identity(std::stoul(source.substr(9)));
  if (source.rfind("lifted:", 0) == 0) {
    return lifting::full_lifted_witness_matrix(load_gadget(ctx.str("gadget")), io::resolve_graph(source.substr(7)));
  }
  std::ifstream in(source);
  if (!in) throw Error("cannot read matrix '" + source + "' (identity:N, lifted:GRAPH, or a JSON/CSV file)");
  std::stringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
    return IntMatrix::from_json(json::parse(text));
  }
  return IntMatrix::from_csv(text);
}

nnrank::NmfOptions nmf_options(const Context& ctx) {
  nnrank::NmfOptions o;
  o.seed = ctx.seed();
  o.workers = ctx.workers();
  o.tolerance = ctx.tolerance();
  return o;
}

void nnrank_bounds(Context& ctx) {
  const auto m = load_matrix(ctx.str("matrix"), ctx);
  if (!m.nonnegative()) throw Error("matrix has negative entries");
  const auto b = nnrank::compute_rank_bounds(m, nmf_options(ctx));
  ctx.add("bounds_ordered", b.lower <= b.upper).detail = json{{"lower", b.lower}, {"upper", b.upper}};
  ctx.result = json{{"rows", m.rows()}, {"cols", m.cols()}, {"bounds", b.to_json()}};
}

void nnrank_protocol(Context& ctx) {
  const auto n = static_cast<std::size_t>(ctx.integer("length"));
  const auto inputs = static_cast<std::size_t>(ctx.integer("inputs"));
  if (n < 2) throw Error("--length must be at least 2");
  std::size_t bad = 0;
  double worst = 0.0;
  json rows = json::array();
  for (std::size_t k = 0; k < inputs; ++k) {
    Rng rng(derive_seed(ctx.seed(), k));
    std::bernoulli_distribution coin(0.5);
    nnrank::BitVector x(n), y(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = coin(rng);
      y[j] = coin(rng);
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const auto w = pick(rng);
    x[w] = 1;
    y[w] = 0;
    const auto est = nnrank::simulate_witness_protocol(nnrank::first_witness, x, y, ctx.trials(), rng);
    const double z = est.z_score();
    worst = std::max(worst, z);
    if (z > 4.0) ++bad;
    if (rows.size() < 20) {
      rows.push_back(json{{"input", k}, {"exact", to_string(est.exact)}, {"estimate", est.estimate},
                          {"standard_error", est.standard_error}, {"z", z}});
    }
  }
  ctx.add("within_four_standard_errors", bad == 0).detail =
      json{{"inputs", inputs}, {"trials", ctx.trials()}, {"failures", bad}, {"max_z", worst}};
  ctx.result = json{{"length", n}, {"estimates", rows}};
}

// query

void query_tree2junta(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  if (g.edge_count() > 16) throw ResourceError("tree2junta checks all inputs and needs at most 16 edges");
  const auto kind = ctx.str("tree");
  query::DecisionTree t;
  if (kind == "node-scan") {
    t = query::node_scan_tree(g);
  } else if (kind == "full-height") {
    t = query::full_height_tree(g);
  } else {
    throw Error("unknown tree '" + kind + "' (node-scan or full-height)");
  }
  const auto valid = query::validate_tree(t, g);
  ctx.add("tree_solves_search", valid.ok()).detail =
      json{{"repeated_query", valid.repeated_query}, {"wrong_answers", valid.wrong_answers}};
  const auto h = query::tree_to_witness_junta(t, g);
  const auto exact = query::check_witness_junta(h, g);
  ctx.add("junta_exact", exact.ok()).detail =
      json{{"inputs", exact.inputs}, {"mismatches", exact.mismatches}, {"counterexamples", exact.counterexamples}};
  const int bound = t.height() + g.max_degree();
  ctx.add("degree_within_height_plus_max_degree", h.degree() <= bound).detail =
      json{{"degree", h.degree()}, {"height", t.height()}, {"max_degree", g.max_degree()}};
  const auto two = query::verify_two_witness_claim(h, g);
  ctx.add("terms_witness_two_violations", two.ok()).detail = json{{"terms", h.terms.size()}, {"failing", two.failing}};
  for (int i : {3, 5}) {
    const std::string name = "expectation_mu" + std::to_string(i);
    if (i > g.node_count() || g.edge_count() > 64) {
      ctx.skip(name, "graph has fewer than " + std::to_string(i) + " nodes");
      continue;
    }
    const auto e = query::junta_expectation(h, g, i);
    ctx.add(name, e == i - 1).detail = json{{"expected", i - 1}, {"value", to_string(e)}};
  }
  query::ConicalJunta constant;
  constant.terms.push_back(query::Term{Rational(1), query::Conjunction{}});
  const auto fooled = query::verify_two_witness_claim(constant, g);
  const bool rejected = !fooled.ok() && fooled.terms.front().fooling_accepted;
  ctx.add("constant_junta_fooled", rejected).detail = fooled.to_json();
  ctx.result = json{{"tree", json{{"kind", kind}, {"height", t.height()}, {"leaves", t.leaf_count()}}},
                    {"junta_terms", h.terms.size()},
                    {"junta_degree", h.degree()}};
  if (h.terms.size() <= 256) ctx.result["junta"] = h.to_json();
}

void query_lp_degree(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  query::LpOptions o;
  o.edge_cap = static_cast<std::size_t>(ctx.integer("edge_cap"));
  const auto s = query::minimal_junta_degree(g, o);
  const auto& w = s.witness;
  const auto exact = query::check_witness_junta(*w.junta, g);
  ctx.add("witness_junta_exact", exact.ok()).detail = json{{"degree", s.degree}, {"mismatches", exact.mismatches}};
  if (s.refutation) {
    ctx.add("farkas_certificate_valid", query::farkas_certifies(g, s.degree - 1, s.refutation->farkas))
        .detail = json{{"degree", s.degree - 1}};
  } else {
    ctx.skip("farkas_certificate_valid", "degree 0 is feasible");
  }
  bool monotone = true;
  for (const auto& [d, feasible] : s.probes) {
    if (feasible != (d >= s.degree)) monotone = false;
  }
  ctx.add("probes_monotone", monotone);
  if (g.edge_count() <= 6) {
    const int brute = query::brute_force_minimal_degree(g);
    ctx.add("matches_brute_force", brute == s.degree).detail = json{{"lp", s.degree}, {"brute_force", brute}};
  } else {
    ctx.skip("matches_brute_force", "brute-force oracle runs up to 6 edges");
  }
  const auto tree = query::node_scan_tree(g);
  const int tree_degree = query::tree_to_witness_junta(tree, g).degree();
  ctx.add("tree_degree_upper_bound", s.degree <= tree_degree).detail = json{{"tree_junta_degree", tree_degree}};
  json probes = json::array();
  for (const auto& [d, f] : s.probes) probes.push_back(json{{"degree", d}, {"feasible", f}});
  ctx.result = json{{"degree", s.degree}, {"probes", probes}, {"witness", w.to_json()}};
  if (s.refutation) ctx.result["refutation"] = s.refutation->to_json();
}

void query_mu_ratio(Context& ctx) {
  const auto g = io::resolve_graph(ctx.str("graph"));
  const auto c = query::witness_conjunction(g, 0, 1);
  query::MuRatioOptions o;
  o.exhaustive = ctx.exhaustive();
  o.seed = ctx.seed();
  o.trials = ctx.trials();
  const auto r = query::measure_mu_ratio(c, g, o);
  const Rational ten_thirds(10, 3);
  ctx.add("prefactor_ratio_ten_thirds", r.prefactor_ratio == ten_thirds).detail =
      json{{"n", g.node_count()}, {"value", to_string(r.prefactor_ratio)}};
  bool all = true;
  json curve = json::array();
  for (int n = 7; n <= 30; ++n) {
    const auto q = query::prefactor_ratio(n);
    if (q != ten_thirds) all = false;
    curve.push_back(to_string(q));
  }
  ctx.add("prefactor_ratio_range", all).detail = json{{"from", 7}, {"to", 30}};
  ctx.add("conditional_decomposition", r.decomposition_holds);
  ctx.add("coupling_on_good_event", r.coupling_holds).detail = json{{"method", r.coupling_method}};
  if (r.ratio && r.cond_ratio) {
    ctx.add("ratio_identity", *r.ratio == ten_thirds * *r.cond_ratio);
  } else {
    ctx.skip("ratio_identity", "mu3(C) = 0");
  }
  if (!o.exhaustive) {
    const double z3 = r.mu3_stderr > 0 ? std::abs(r.mu3_estimate - r.mu3.get_d()) / r.mu3_stderr : 0.0;
    const double z5 = r.mu5_stderr > 0 ? std::abs(r.mu5_estimate - r.mu5.get_d()) / r.mu5_stderr : 0.0;
    ctx.add("monte_carlo_agrees", z3 <= 4.0 && z5 <= 4.0).detail = json{{"z3", z3}, {"z5", z5}};
  }
  const auto completion = query::complete_conjunction(query::Term{Rational(1), c}, g);
  ctx.result = json{{"conjunction", c.to_json()},
                    {"read_set_size", c.degree()},
                    {"complement_connected", query::complement_connected(c, g)},
                    {"completion_growth", to_string(completion.growth)},
                    {"edge_expansion", g.node_count() <= 16 ? json(to_string(tseitin::edge_expansion(g))) : json(nullptr)},
                    {"report", r.to_json()},
                    {"prefactor_ratio_by_n", curve}};
}

struct Command {
  std::string group;
  std::string action;
  std::function<void(Context&)> run;
  json defaults;
};

const std::vector<Command>& registry() {
  static const std::vector<Command> table = {
      {"gadget", "verify", gadget_verify, json{{"gadget", "main"}, {"trials", 100000}, {"tolerance", 0.02}}},
      {"tseitin", "sample", tseitin_sample, json{{"graph", "k5"}, {"trials", 1000}, {"i", 3}}},
      {"tseitin", "route", tseitin_route, json{{"graph", "k7"}}},
      {"tseitin", "fano", tseitin_fano, json{{"graph", "k11"}}},
      {"lift", "matrix", lift_matrix, json{{"graph", "edge"}, {"gadget", "main"}}},
      {"reduce", "csp", reduce_csp, json{{"graph", "triangle"}, {"gadget", "main"}, {"trials", 1000}}},
      {"reduce", "conflict-graph", reduce_conflict_graph, json{{"graph", "triangle"}, {"alphabet", 2}}},
      {"reduce", "chain-check", reduce_chain_check, json{{"graph", "triangle"}, {"gadget", "main"}, {"trials", 64}}},
      {"nnrank", "bounds", nnrank_bounds, json{{"matrix", "identity:4"}, {"gadget", "main"}, {"tolerance", 1e-6}}},
      {"nnrank", "protocol", nnrank_protocol, json{{"trials", 100000}, {"length", 10}, {"inputs", 100}}},
      {"query", "tree2junta", query_tree2junta, json{{"graph", "triangle"}, {"tree", "node-scan"}}},
      {"query", "lp-degree", query_lp_degree, json{{"graph", "triangle"}, {"edge_cap", 12}}},
      {"query", "mu-ratio", query_mu_ratio, json{{"graph", "k9"}, {"trials", 100000}}},
  };
  return table;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : registry()) {
    if (c.group + " " + c.action == name) return c;
  }
  throw Error("unknown command '" + name + "'");
}

const json& common_defaults() {
  static const json d = json{{"seed", 0},      {"graph", nullptr}, {"gadget", nullptr}, {"workers", 1},
                             {"tolerance", 0.0}, {"trials", 0},    {"exhaustive", false}, {"out", nullptr}};
  return d;
}

std::string render_summary(const json& report, const std::vector<Check>& checks) {
  std::ostringstream out;
  out << "xc " << report["config"]["command"].get<std::string>() << ": " << report["status"].get<std::string>()
      << '\n';
  for (const auto& c : checks) out << "  " << status_name(c.status) << "  " << c.name << '\n';
  return out.str();
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& commands() {
  static const auto list = [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& c : registry()) out.emplace_back(c.group, c.action);
    return out;
  }();
  return list;
}

json complete_config(json config) {
  if (!config.is_object() || !config.contains("command")) throw Error("config needs a command");
  const auto& cmd = find_command(config.at("command").get<std::string>());
  json out;
  out["command"] = config.at("command");
  for (const auto& [key, value] : common_defaults().items()) {
    if (config.contains(key) && !config.at(key).is_null()) {
      out[key] = config.at(key);
    } else if (cmd.defaults.contains(key)) {
      out[key] = cmd.defaults.at(key);
    } else {
      out[key] = value;
    }
  }
  for (const auto& [key, value] : cmd.defaults.items()) {
    if (out.contains(key)) continue;
    out[key] = config.contains(key) && !config.at(key).is_null() ? config.at(key) : value;
  }
  for (const auto& [key, value] : config.items()) {
    if (!out.contains(key) && !value.is_null()) throw Error("option '" + key + "' does not apply to " + cmd.group + " " + cmd.action);
  }
  if (out["workers"].get<std::int64_t>() < 1) throw Error("--workers must be at least 1");
  return out;
}

Outcome run(const json& raw) {
  Context ctx;
  ctx.config = complete_config(raw);
  find_command(ctx.config["command"].get<std::string>()).run(ctx);
  const bool ok = all_passed(ctx.checks);
  Outcome o;
  o.report["tool"] = "xc";
  o.report["version"] = kVersion;
  o.report["config"] = ctx.config;
  o.report["status"] = ok ? "pass" : "fail";
  o.report["checks"] = checks_json(ctx.checks);
  o.report["result"] = ctx.result;
  o.exit_code = ok ? kOk : kVerificationFailure;
  o.summary = render_summary(o.report, ctx.checks);
  return o;
}

std::string serialize(const json& report) { return report.dump(2) + "\n"; }

ReplayResult replay(const std::string& report_text) {
  const auto stored = json::parse(report_text);
  if (!stored.contains("config")) throw Error("report has no embedded config");
  ReplayResult r;
  r.rerun = run(stored.at("config"));
  const auto fresh = serialize(r.rerun.report);
  r.identical = fresh == report_text;
  if (!r.identical) {
    const auto mismatch = std::mismatch(fresh.begin(), fresh.end(), report_text.begin(), report_text.end());
    r.first_difference = static_cast<std::size_t>(mismatch.first - fresh.begin());
  }
  return r;
}

}  // namespace xc::cli
