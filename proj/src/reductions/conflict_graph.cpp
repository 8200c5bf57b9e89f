#include <algorithm>
#include <bit>
#include <sstream>

#include "xc/reductions.hpp"

namespace xc::reductions {

ConflictGraph::ConflictGraph(const CspSatSpec& spec)
    : n_(spec.input_length()), words_((spec.input_length() + 63) / 64) {
  adj_.assign(n_, std::vector<std::uint64_t>(words_, 0));
  const auto cs = spec.constraint_count();
  for (std::size_t c = 0; c < cs; ++c) {
    for (std::size_t d = c; d < cs; ++d) {
      std::vector<std::pair<std::size_t, std::size_t>> shared;
      for (std::size_t i = 0; i < spec.vars(c).size(); ++i) {
        for (std::size_t j = 0; j < spec.vars(d).size(); ++j) {
          if (spec.vars(c)[i] == spec.vars(d)[j]) shared.emplace_back(i, j);
        }
      }
      if (c != d && shared.empty()) continue;
      std::vector<std::vector<int>> dec_d;
      for (std::size_t l = 0; l < spec.local_count(d); ++l) dec_d.push_back(spec.decode(d, l));
      for (std::size_t l = 0; l < spec.local_count(c); ++l) {
        const auto a = spec.decode(c, l);
        for (std::size_t l2 = (c == d ? l + 1 : 0); l2 < spec.local_count(d); ++l2) {
          bool conflict = c == d;
          for (const auto& [i, j] : shared) conflict = conflict || a[i] != dec_d[l2][j];
          if (!conflict) continue;
          const auto u = spec.bit(c, l);
          const auto v = spec.bit(d, l2);
          adj_[u][v >> 6] |= std::uint64_t{1} << (v & 63);
          adj_[v][u >> 6] |= std::uint64_t{1} << (u & 63);
        }
      }
    }
  }
}

std::size_t ConflictGraph::degree(std::size_t u) const {
  std::size_t d = 0;
  for (auto w : adj_[u]) d += static_cast<std::size_t>(std::popcount(w));
  return d;
}

std::size_t ConflictGraph::max_degree() const {
  std::size_t d = 0;
  for (std::size_t u = 0; u < n_; ++u) d = std::max(d, degree(u));
  return d;
}

std::size_t ConflictGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t u = 0; u < n_; ++u) total += degree(u);
  return total / 2;
}

bool ConflictGraph::independent(const CspInput& x) const {
  if (x.size() != n_) throw Error("input length must equal the node count");
  for (std::size_t u = 0; u < n_; ++u) {
    if (!x.bits[u]) continue;
    for (std::size_t v = u + 1; v < n_; ++v) {
      if (x.bits[v] && adjacent(u, v)) return false;
    }
  }
  return true;
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool empty(const Bits& b) {
  return std::all_of(b.begin(), b.end(), [](std::uint64_t w) { return w == 0; });
}

template <class F>
void for_each_bit(const Bits& b, F&& f) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::uint64_t w = b[i]; w != 0; w &= w - 1) f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
  }
}

class MisSearch {
 public:
  MisSearch(std::size_t n, std::vector<Bits> free, std::size_t limit)
      : n_(n), free_(std::move(free)), limit_(limit) {}

  void run(Bits& r, Bits p, Bits x) {
    if (empty(p)) {
      if (empty(x)) {
        if (out.size() >= limit_) throw ResourceError("too many maximal independent sets");
        CspInput in{std::vector<std::uint8_t>(n_, 0)};
        for_each_bit(r, [&](std::size_t v) { in.bits[v] = 1; });
        out.push_back(std::move(in));
      }
      return;
    }
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have = false;
    auto consider = [&](std::size_t u) {
      std::size_t s = 0;
      for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<std::size_t>(std::popcount(p[i] & free_[u][i]));
      if (!have || s > best) {
        best = s;
        pivot = u;
        have = true;
      }
    };
    for_each_bit(p, consider);
    for_each_bit(x, consider);

    Bits branch = p;
    for (std::size_t i = 0; i < branch.size(); ++i) branch[i] &= ~free_[pivot][i];
    for_each_bit(branch, [&](std::size_t v) {
      Bits p2 = p;
      Bits x2 = x;
      for (std::size_t i = 0; i < p.size(); ++i) {
        p2[i] &= free_[v][i];
        x2[i] &= free_[v][i];
      }
      r[v >> 6] |= std::uint64_t{1} << (v & 63);
      run(r, std::move(p2), std::move(x2));
      r[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      p[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
      x[v >> 6] |= std::uint64_t{1} << (v & 63);
    });
  }

  std::vector<CspInput> out;

 private:
  std::size_t n_;
  std::vector<Bits> free_;
  std::size_t limit_;
};

}  // namespace

std::vector<CspInput> ConflictGraph::maximal_independent_sets(std::size_t limit) const {
  Bits all(words_, 0);
  for (std::size_t v = 0; v < n_; ++v) all[v >> 6] |= std::uint64_t{1} << (v & 63);
  std::vector<Bits> free(n_);
  for (std::size_t v = 0; v < n_; ++v) {
    free[v] = all;
    for (std::size_t i = 0; i < words_; ++i) free[v][i] &= ~adj_[v][i];
    free[v][v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }
  MisSearch search(n_, std::move(free), limit);
  Bits r(words_, 0);
  search.run(r, all, Bits(words_, 0));
  std::sort(search.out.begin(), search.out.end());
  return std::move(search.out);
}

json ConflictGraph::to_json(const CspSatSpec& spec) const {
  json nodes = json::array();
  for (std::size_t u = 0; u < n_; ++u) {
    const auto [c, l] = spec.locate(u);
    nodes.push_back(json{{"id", u}, {"constraint", c}, {"assignment", spec.decode(c, l)}});
  }
  json edges = json::array();
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) edges.push_back(json::array({u, v}));
    }
  }
  json j;
  j["node_count"] = n_;
  j["edge_count"] = edges.size();
  j["max_degree"] = max_degree();
  j["nodes"] = nodes;
  j["edges"] = edges;
  return j;
}

std::string ConflictGraph::to_edge_list() const {
  std::ostringstream out;
  out << "p edge " << n_ << ' ' << edge_count() << '\n';
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) out << u << ' ' << v << '\n';
    }
  }
  return out.str();
}

std::vector<CspInput> brute_force_minterms(const CspSatSpec& spec) {
  const auto m = spec.input_length();
  if (m > 22) throw ResourceError("brute-force minterm search capped at 22 input bits");
  std::vector<std::uint8_t> sat(std::size_t{1} << m);
  auto to_input = [&](std::uint32_t mask) {
    CspInput in{std::vector<std::uint8_t>(m, 0)};
    for (std::size_t i = 0; i < m; ++i) in.bits[i] = static_cast<std::uint8_t>((mask >> i) & 1U);
    return in;
  };
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) sat[mask] = eval_sat(spec, to_input(mask)).has_value();
  std::vector<CspInput> out;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    if (!sat[mask]) continue;
    bool minimal = true;
    for (std::uint32_t w = mask; w != 0 && minimal; w &= w - 1) {
      if (sat[mask & ~(w & (~w + 1))]) minimal = false;
    }
    if (minimal) out.push_back(to_input(mask));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CspInput> encoded_assignments(const CspSatSpec& spec, std::size_t limit) {
  std::size_t total = 1;
  for (int i = 0; i < spec.variable_count(); ++i) {
    total *= static_cast<std::size_t>(spec.sigma());
    if (total > limit) throw ResourceError("too many global assignments to enumerate");
  }
  std::vector<CspInput> out;
  out.reserve(total);
  std::vector<int> a(static_cast<std::size_t>(spec.variable_count()), 0);
  for (std::size_t k = 0; k < total; ++k) {
    out.push_back(alice_encode(spec, a));
    for (std::size_t i = a.size(); i-- > 0;) {
      if (++a[i] < spec.sigma()) break;
      a[i] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace xc::reductions
