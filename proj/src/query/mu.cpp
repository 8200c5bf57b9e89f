#include <algorithm>
#include <bit>
#include <cmath>

#include "xc/query.hpp"

namespace xc::query {

namespace {

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

void check_odd(int n, int i) {
  if (i < 1 || i % 2 == 0) throw Error("mu_i needs odd i");
  if (i > n) throw Error("mu_i needs i <= |V|");
}

// Cycle basis projected onto the read set S, reduced to an echelon basis
// over GF(2); membership of a target pattern is then a reduction to zero.
class Projection {
 public:
  Projection(const LabeledGraph& g, Mask care) {
    for (const auto& b : tseitin::cycle_space_basis(g)) insert(b.to_mask() & care);
  }
  std::size_t rank() const { return rows_.size(); }
  bool contains(Mask target) const {
    for (const auto& r : rows_) {
      if ((target >> std::countr_zero(r)) & 1U) target ^= r;
    }
    return target == 0;
  }

 private:
  void insert(Mask v) {
    for (const auto& r : rows_) {
      if ((v >> std::countr_zero(r)) & 1U) v ^= r;
    }
    if (v == 0) return;
    for (auto& r : rows_) {
      if ((r >> std::countr_zero(v)) & 1U) r ^= v;
    }
    rows_.push_back(v);
  }
  std::vector<Mask> rows_;
};

// Calls f(T) for every i-subset T of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int i, F&& f) {
  std::vector<Node> idx(static_cast<std::size_t>(i));
  for (int k = 0; k < i; ++k) idx[static_cast<std::size_t>(k)] = k;
  while (true) {
    f(idx);
    int pos = i;
    while (pos > 0 && idx[static_cast<std::size_t>(pos - 1)] == n - i + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[static_cast<std::size_t>(pos - 1)];
    for (int k = pos; k < i; ++k) idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
  }
}

struct MuSums {
  mpz_class hits_all;        // sum over T of 2^rank * Pr
  mpz_class hits_with_pair;  // restricted to T containing v1 and v2
};

// Counts T for which the coset z_T + cycles meets C (each such T has
// probability 2^-rank); optionally split on T containing a node pair.
MuSums mu_sums(const Conjunction& c, const LabeledGraph& g, int i, const Projection& proj, Node v1 = -1,
               Node v2 = -1) {
  MuSums s;
  for_each_subset(g.node_count(), i, [&](const std::vector<Node>& t) {
    const Mask z = tseitin::make_input_with_violations(g, t).to_mask();
    if (!proj.contains((z ^ c.value) & c.care)) return;
    ++s.hits_all;
    if (v1 >= 0 && std::binary_search(t.begin(), t.end(), v1) && std::binary_search(t.begin(), t.end(), v2)) {
      ++s.hits_with_pair;
    }
  });
  return s;
}

void require_masks(const LabeledGraph& g) {
  if (g.edge_count() > 64) throw ResourceError("conjunction masks support at most 64 edges");
}

Rational pow2_inverse(std::size_t k) {
  mpz_class d = 1;
  d <<= static_cast<mp_bitcnt_t>(k);
  return Rational(mpz_class(1), d);
}

}  // namespace

Rational mu_prefactor(int n, int i) {
  check_odd(n, i);
  Rational r(binomial(n - 2, i - 2), binomial(n, i));
  r.canonicalize();
  return r;
}

Rational prefactor_ratio(int n) {
  Rational r = mu_prefactor(n, 5) / mu_prefactor(n, 3);
  r.canonicalize();
  return r;
}

Rational mu_exact(const Conjunction& c, const LabeledGraph& g, int i) {
  require_masks(g);
  check_odd(g.node_count(), i);
  const Projection proj(g, c.care);
  const auto s = mu_sums(c, g, i, proj);
  Rational r = Rational(s.hits_all, binomial(g.node_count(), i)) * pow2_inverse(proj.rank());
  r.canonicalize();
  return r;
}

Rational mu_brute_force(const Conjunction& c, const LabeledGraph& g, int i) {
  check_odd(g.node_count(), i);
  const auto viol = violation_counts(g);
  mpz_class hits = 0;
  for (Mask z = 0; z < viol.size(); ++z) {
    if (viol[z] == i && c.accepts(z)) ++hits;
  }
  Rational r = Rational(hits, binomial(g.node_count(), i)) * pow2_inverse(g.cycle_space_dimension());
  r.canonicalize();
  return r;
}

Rational junta_expectation(const ConicalJunta& h, const LabeledGraph& g, int i) {
  Rational total(0);
  for (const auto& t : h.terms) {
    if (t.weight != 0) total += t.weight * mu_exact(t.conjunction, g, i);
  }
  total.canonicalize();
  return total;
}

json MuRatioReport::to_json() const {
  json j;
  j["nodes"] = nodes;
  j["witnessed"] = witnessed;
  j["exhaustive"] = exact;
  j["mu3"] = to_string(mu3);
  j["mu5"] = to_string(mu5);
  j["prefactor3"] = to_string(prefactor3);
  j["prefactor5"] = to_string(prefactor5);
  j["prefactor_ratio"] = to_string(prefactor_ratio);
  j["cond3"] = to_string(cond3);
  j["cond5"] = to_string(cond5);
  j["ratio"] = ratio ? json(to_string(*ratio)) : json(nullptr);
  j["ratio_decimal"] = ratio ? json(ratio->get_d()) : json(nullptr);
  j["cond_ratio"] = cond_ratio ? json(to_string(*cond_ratio)) : json(nullptr);
  j["good_event"] = to_string(good_event);
  j["decomposition_holds"] = decomposition_holds;
  j["coupling_holds"] = coupling_holds;
  j["coupling_method"] = coupling_method;
  if (trials > 0) {
    j["monte_carlo"] = json{{"trials", trials},
                            {"mu3", mu3_estimate},
                            {"mu3_stderr", mu3_stderr},
                            {"mu5", mu5_estimate},
                            {"mu5_stderr", mu5_stderr}};
  }
  return j;
}

MuRatioReport measure_mu_ratio(const Conjunction& c, const LabeledGraph& g, const MuRatioOptions& options) {
  require_masks(g);
  const int n = g.node_count();
  if (n < 5) throw Error("mu-ratio needs at least 5 nodes");
  MuRatioReport r;
  r.nodes = static_cast<std::size_t>(n);
  r.exact = options.exhaustive;
  const auto w = witnessed_violations(c, g);
  if (w.size() < 2) throw Error("conjunction must witness two violations");
  const Node v1 = w[0];
  const Node v2 = w[1];
  r.witnessed = {v1, v2};

  const Projection proj(g, c.care);
  const Rational unit = pow2_inverse(proj.rank());
  const auto s3 = mu_sums(c, g, 3, proj, v1, v2);
  const auto s5 = mu_sums(c, g, 5, proj, v1, v2);
  r.mu3 = Rational(s3.hits_all, binomial(n, 3)) * unit;
  r.mu5 = Rational(s5.hits_all, binomial(n, 5)) * unit;
  r.cond3 = Rational(s3.hits_with_pair, binomial(n - 2, 1)) * unit;
  r.cond5 = Rational(s5.hits_with_pair, binomial(n - 2, 3)) * unit;
  for (auto* q : {&r.mu3, &r.mu5, &r.cond3, &r.cond5}) q->canonicalize();
  r.prefactor3 = mu_prefactor(n, 3);
  r.prefactor5 = mu_prefactor(n, 5);
  r.prefactor_ratio = prefactor_ratio(n);
  r.decomposition_holds = r.mu3 == r.prefactor3 * r.cond3 && r.mu5 == r.prefactor5 * r.cond5;
  if (r.mu3 != 0) {
    Rational q = r.mu5 / r.mu3;
    q.canonicalize();
    r.ratio = q;
  }
  if (r.cond3 != 0) {
    Rational q = r.cond5 / r.cond3;
    q.canonicalize();
    r.cond_ratio = q;
  }

  // Coupling: y3 = x3 + q, y5 = x3 + p + q with p a path from v4 to v5
  // avoiding S. Good event: such a path exists.
  const auto blocked = from_mask(c.care, g.edge_count());
  const auto basis = tseitin::cycle_space_basis(g);
  const std::size_t dim = basis.size();
  const bool enumerate = dim <= 16;
  r.coupling_method = enumerate ? "cycle-space enumeration" : "path avoids read set";
  mpz_class good = 0, total = 0;
  bool holds = true;
  std::vector<Mask> cycles;
  if (enumerate) {
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << dim); ++m) {
      cycles.push_back(tseitin::combine(basis, g.edge_count(), m).to_mask());
    }
  }
  for (Node v3 = 0; v3 < n; ++v3) {
    if (v3 == v1 || v3 == v2) continue;
    std::vector<Node> t3{v1, v2, v3};
    std::sort(t3.begin(), t3.end());
    const Mask x3 = tseitin::make_input_with_violations(g, t3).to_mask();
    for (Node v4 = 0; v4 < n; ++v4) {
      if (v4 == v1 || v4 == v2 || v4 == v3) continue;
      for (Node v5 = v4 + 1; v5 < n; ++v5) {
        if (v5 == v1 || v5 == v2 || v5 == v3) continue;
        ++total;
        const auto p = tseitin::shortest_path(g, v4, v5, &blocked);
        if (!p) continue;
        ++good;
        const Mask pm = p->to_mask();
        if (pm & c.care) holds = false;
        if (!enumerate) continue;
        std::vector<Node> t5{v1, v2, v3, v4, v5};
        std::sort(t5.begin(), t5.end());
        for (Mask q : cycles) {
          const Mask y3 = x3 ^ q;
          const Mask y5 = y3 ^ pm;
          if (c.accepts(y3) != c.accepts(y5)) holds = false;
          if (violations(g, from_mask(y5, g.edge_count())) != t5) holds = false;
        }
      }
    }
  }
  r.good_event = Rational(good, total);
  r.good_event.canonicalize();
  r.coupling_holds = holds;

  if (!options.exhaustive) {
    Rng rng(options.seed);
    std::size_t hit3 = 0, hit5 = 0;
    for (std::size_t k = 0; k < options.trials; ++k) {
      if (c.accepts(tseitin::sample_mu(g, 3, rng).to_mask())) ++hit3;
      if (c.accepts(tseitin::sample_mu(g, 5, rng).to_mask())) ++hit5;
    }
    const auto t = static_cast<double>(std::max<std::size_t>(options.trials, 1));
    r.trials = options.trials;
    r.mu3_estimate = static_cast<double>(hit3) / t;
    r.mu5_estimate = static_cast<double>(hit5) / t;
    r.mu3_stderr = std::sqrt(r.mu3_estimate * (1 - r.mu3_estimate) / t);
    r.mu5_stderr = std::sqrt(r.mu5_estimate * (1 - r.mu5_estimate) / t);
  }
  return r;
}

}  // namespace xc::query
