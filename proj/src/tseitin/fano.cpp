#include <algorithm>

#include "xc/tseitin.hpp"

namespace xc::tseitin {

const std::array<std::array<int, 3>, 7>& fano_lines() {
  static const std::array<std::array<int, 3>, 7> lines{{
      {0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}}};
  return lines;
}

std::vector<Node> FanoScaffold::line_nodes(std::size_t e) const {
  std::vector<Node> out;
  for (int p : fano_lines()[e]) out.push_back(embedded[static_cast<std::size_t>(p)]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::array<int, 4> points_off_line(std::size_t e) {
  std::array<int, 4> rest{};
  std::size_t n = 0;
  for (int p = 0; p < 7; ++p) {
    const auto& line = fano_lines()[e];
    if (std::find(line.begin(), line.end(), p) == line.end()) rest[n++] = p;
  }
  return rest;
}

int common_point(std::size_t e, std::size_t f) {
  for (int p : fano_lines()[e]) {
    const auto& other = fano_lines()[f];
    if (std::find(other.begin(), other.end(), p) != other.end()) return p;
  }
  throw Error("Fano lines do not meet");
}

Pairing shuffled_pairing(std::vector<Node> nodes, Rng& rng) {
  std::shuffle(nodes.begin(), nodes.end(), rng);
  Pairing p;
  for (std::size_t i = 0; i + 1 < nodes.size(); i += 2) p.emplace_back(nodes[i], nodes[i + 1]);
  return p;
}

EdgeSet path_union(const std::vector<Path>& paths, std::size_t first, std::size_t count, std::size_t edges) {
  EdgeSet u(edges);
  for (std::size_t i = first; i < first + count; ++i) u ^= paths[i].edges;
  return u;
}

}  // namespace

FanoScaffold build_fano_scaffold(const LabeledGraph& g, const TerminalSet& t, Rng& rng) {
  if (t.k < 5) throw Error("Fano scaffold needs k >= 5");
  if (t.terminals.size() != static_cast<std::size_t>(2 * t.k + 1)) throw Error("terminal set must have 2k+1 nodes");

  FanoScaffold s;
  std::vector<Node> pool = t.terminals;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::copy_n(pool.begin(), 7, s.embedded.begin());
  s.residual = shuffled_pairing(std::vector<Node>(pool.begin() + 7, pool.end()), rng);

  std::vector<Node> seven(s.embedded.begin(), s.embedded.end());
  s.z7 = make_input_with_violations(g, seven) ^ sample_eulerian(g, rng);
  if (violations(g, s.z7) != [&] { std::sort(seven.begin(), seven.end()); return seven; }()) {
    throw Error("base labeling has the wrong violations");
  }

  for (std::size_t e = 0; e < 7; ++e) {
    const auto rest = points_off_line(e);
    Pairing pe{{s.embedded[static_cast<std::size_t>(rest[0])], s.embedded[static_cast<std::size_t>(rest[1])]},
               {s.embedded[static_cast<std::size_t>(rest[2])], s.embedded[static_cast<std::size_t>(rest[3])]}};
    Pairing full = pe;
    full.insert(full.end(), s.residual.begin(), s.residual.end());
    auto paths = route_pairing(g, t, full);
    s.line_pairings[e] = pe;
    s.line_paths[e] = {paths[0], paths[1]};
    s.z_lines[e] = s.z7 ^ path_union(paths, 0, 2, g.edge_count());
    if (violations(g, s.z_lines[e]) != s.line_nodes(e)) throw Error("line labeling has the wrong violations");
  }
  return s;
}

NearDisjointnessCoupling near_disjointness_coupling(const LabeledGraph& g, const TerminalSet& t,
                                                    const FanoScaffold& s, std::size_t e,
                                                    std::size_t e_prime) {
  if (e >= 7 || e_prime >= 7 || e == e_prime) throw Error("need two distinct Fano lines");
  const int c = common_point(e, e_prime);
  auto minus_c = [&](std::size_t line) {
    std::vector<Node> out;
    for (int p : fano_lines()[line]) {
      if (p != c) out.push_back(s.embedded[static_cast<std::size_t>(p)]);
    }
    return std::pair{out[0], out[1]};
  };

  std::vector<Node> others;
  for (int p = 0; p < 7; ++p) {
    const auto& a = fano_lines()[e];
    const auto& b = fano_lines()[e_prime];
    if (std::find(a.begin(), a.end(), p) == a.end() && std::find(b.begin(), b.end(), p) == b.end()) {
      others.push_back(s.embedded[static_cast<std::size_t>(p)]);
    }
  }

  Pairing p_prime{minus_c(e), minus_c(e_prime), {others[0], others[1]}};
  p_prime.insert(p_prime.end(), s.residual.begin(), s.residual.end());
  const auto b_prime = route_pairing(g, t, p_prime);

  NearDisjointnessCoupling out;
  out.e = e;
  out.e_prime = e_prime;
  out.six_path_difference = b_prime[0].edges ^ b_prime[1].edges ^ s.line_paths[e][0].edges ^
                            s.line_paths[e][1].edges ^ s.line_paths[e_prime][0].edges ^
                            s.line_paths[e_prime][1].edges;
  out.difference_eulerian = is_eulerian(g, out.six_path_difference);

  const EdgeLabeling z1 = s.z_lines[e] ^ b_prime[0].edges;
  const EdgeLabeling z_hat = z1 ^ b_prime[1].edges;
  out.labelings_agree = violations(g, z1) == std::vector<Node>{s.embedded[static_cast<std::size_t>(c)]} &&
                        violations(g, z_hat) == violations(g, s.z_lines[e_prime]) &&
                        (z_hat ^ s.z_lines[e_prime]) == out.six_path_difference;
  return out;
}

}  // namespace xc::tseitin
