#include <bit>
#include <cmath>

#include "xc/kernels.hpp"
#include "xc/query.hpp"

namespace xc::query {

Conjunction Conjunction::from_literals(const std::vector<std::pair<std::size_t, std::uint8_t>>& literals) {
  Conjunction c;
  for (const auto& [e, bit] : literals) {
    if (e >= 64) throw Error("conjunctions support at most 64 edges");
    if (c.reads(e)) throw Error("edge " + std::to_string(e) + " fixed twice");
    c.care |= Mask{1} << e;
    if (bit) c.value |= Mask{1} << e;
  }
  return c;
}

int Conjunction::degree() const { return std::popcount(care); }

std::vector<std::size_t> Conjunction::read_set() const {
  std::vector<std::size_t> out;
  for (Mask m = care; m; m &= m - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  return out;
}

json Conjunction::to_json() const {
  json lits = json::array();
  for (auto e : read_set()) lits.push_back(json::array({e, (value >> e) & 1U}));
  return lits;
}

Conjunction Conjunction::from_json(const json& j) {
  std::vector<std::pair<std::size_t, std::uint8_t>> lits;
  for (const auto& l : j) lits.emplace_back(l.at(0).get<std::size_t>(), l.at(1).get<std::uint8_t>());
  return from_literals(lits);
}

int ConicalJunta::degree() const {
  int d = 0;
  for (const auto& t : terms) {
    if (t.weight > 0) d = std::max(d, t.conjunction.degree());
  }
  return d;
}

json ConicalJunta::to_json() const {
  json arr = json::array();
  for (const auto& t : terms) arr.push_back(json{{"weight", to_string(t.weight)}, {"literals", t.conjunction.to_json()}});
  return json{{"degree", degree()}, {"terms", arr}};
}

ConicalJunta ConicalJunta::from_json(const json& j) {
  ConicalJunta h;
  for (const auto& t : j.at("terms")) {
    Rational w(t.at("weight").get<std::string>());
    w.canonicalize();
    if (w < 0) throw Error("junta weights must be nonnegative");
    h.terms.push_back(Term{w, Conjunction::from_json(t.at("literals"))});
  }
  return h;
}

Rational eval_junta(const ConicalJunta& h, Mask z) {
  Rational total(0);
  for (const auto& t : h.terms) {
    if (t.conjunction.accepts(z)) total += t.weight;
  }
  return total;
}

namespace {

constexpr std::size_t kEnumerationCap = 24;
constexpr std::size_t kChunk = 4096;

}  // namespace

std::vector<std::int64_t> eval_junta_all(const ConicalJunta& h, std::size_t edges) {
  if (edges > kEnumerationCap) throw ResourceError("exhaustive junta evaluation capped at 24 edges");
  std::vector<std::uint32_t> care, value;
  std::vector<std::int32_t> weight;
  for (const auto& t : h.terms) {
    if (t.weight.get_den() != 1 || !t.weight.get_num().fits_sint_p()) {
      throw Error("batch evaluation needs 32-bit integer weights");
    }
    care.push_back(static_cast<std::uint32_t>(t.conjunction.care));
    value.push_back(static_cast<std::uint32_t>(t.conjunction.value));
    weight.push_back(static_cast<std::int32_t>(t.weight.get_num().get_si()));
  }
  const kernels::TermSet set{care, value, weight};
  const std::size_t total = std::size_t{1} << edges;
  std::vector<std::int64_t> out(total);
  const auto& k = kernels::active();
  for (std::size_t first = 0; first < total; first += kChunk) {
    const auto n = std::min(kChunk, total - first);
    k.accept_weights(set, static_cast<std::uint32_t>(first), std::span<std::int64_t>(out.data() + first, n));
  }
  return out;
}

std::vector<std::uint8_t> violation_counts(const LabeledGraph& g) {
  if (g.edge_count() > kEnumerationCap) throw ResourceError("exhaustive enumeration capped at 24 edges");
  std::vector<std::uint32_t> incidence(static_cast<std::size_t>(g.node_count()), 0);
  std::uint32_t labels = 0;
  for (Node v = 0; v < g.node_count(); ++v) {
    for (auto e : g.incident(v)) incidence[static_cast<std::size_t>(v)] |= 1U << e;
    if (g.label(v)) labels |= 1U << v;
  }
  if (g.node_count() > 32) throw ResourceError("batch parity needs at most 32 nodes");
  const kernels::ParityProblem p{incidence, labels};
  const std::size_t total = std::size_t{1} << g.edge_count();
  std::vector<std::uint8_t> out(total);
  const auto& k = kernels::active();
  for (std::size_t first = 0; first < total; first += kChunk) {
    const auto n = std::min(kChunk, total - first);
    k.count_violations(p, static_cast<std::uint32_t>(first), std::span<std::uint8_t>(out.data() + first, n));
  }
  return out;
}

Mask to_mask(const tseitin::EdgeLabeling& z) { return z.to_mask(); }

tseitin::EdgeLabeling from_mask(Mask z, std::size_t edges) { return tseitin::EdgeBits::from_mask(z, edges); }

namespace {

bool integer_weights(const ConicalJunta& h) {
  for (const auto& t : h.terms) {
    if (t.weight.get_den() != 1 || !t.weight.get_num().fits_sint_p()) return false;
  }
  return true;
}

template <class Accept>
ExactnessReport compare_all(const ConicalJunta& h, const LabeledGraph& g, Accept&& accept) {
  ExactnessReport r;
  const auto viol = violation_counts(g);
  r.inputs = viol.size();
  std::vector<std::int64_t> fast;
  if (integer_weights(h)) fast = eval_junta_all(h, g.edge_count());
  for (std::size_t z = 0; z < viol.size(); ++z) {
    const Rational value = fast.empty() ? eval_junta(h, z) : Rational(static_cast<long>(fast[z]));
    const int target = static_cast<int>(viol[z]) - 1;
    if (!accept(value, target)) {
      ++r.mismatches;
      if (r.counterexamples.size() < 8) {
        r.counterexamples.push_back(json{{"z", from_mask(z, g.edge_count()).to_string()},
                                         {"h", to_string(value)},
                                         {"target", target}});
      }
    }
  }
  return r;
}

}  // namespace

ExactnessReport check_witness_junta(const ConicalJunta& h, const LabeledGraph& g) {
  return compare_all(h, g, [](const Rational& v, int t) { return v == t; });
}

ExactnessReport check_approximate_junta(const ConicalJunta& h, const LabeledGraph& g, double eps) {
  if (eps < 0) throw Error("epsilon must be nonnegative");
  return compare_all(h, g, [eps](const Rational& v, int t) {
    const double x = v.get_d();
    return x >= (1.0 - eps) * t - 1e-12 && x <= (1.0 + eps) * t + 1e-12;
  });
}

}  // namespace xc::query
