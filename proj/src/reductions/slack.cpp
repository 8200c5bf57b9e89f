#include "xc/lifting.hpp"
#include "xc/reductions.hpp"

namespace xc::reductions {

std::int64_t slack_entry_unchecked(const CspSatSpec& spec, const CspInput& x, const CspInput& y) {
  if (x.size() != spec.input_length() || y.size() != spec.input_length()) throw Error("CSP input length mismatch");
  std::int64_t overlap = 0;
  for (std::size_t i = 0; i < x.size(); ++i) overlap += (x.bits[i] & y.bits[i]);
  return static_cast<std::int64_t>(spec.constraint_count()) - 1 - overlap;
}

std::int64_t slack_entry_is(const CspSatSpec& spec, const ConflictGraph& k, const CspInput& x,
                            const CspInput& y) {
  if (!k.independent(x)) throw Error("x is not an independent set of K");
  if (eval_sat(spec, y)) throw Error("y is not a 0-input");
  const auto entry = slack_entry_unchecked(spec, x, y);
  if (entry < 0) throw Error("slack inequality violated: |x & y| exceeds n - 1");
  return entry;
}

MintermDecomposition minterm_decompose(const CspSatSpec& spec, const CspInput& x, const CspInput& y) {
  const auto phi = eval_sat(spec, x);
  if (!phi) throw Error("x is not a 1-input");
  MintermDecomposition d;
  d.minterm = alice_encode(spec, *phi);
  d.residual = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (d.minterm.bits[i]) d.residual.bits[i] = 0;
  }
  auto against = [&](const CspInput& a) {
    std::int64_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a.bits[i] && !y.bits[i]) ? 1 : 0;
    return n;
  };
  d.entry = against(x) - 1;
  d.minterm_entry = against(d.minterm) - 1;
  d.residual_entry = against(d.residual);
  return d;
}

ChainReport chain_check(const tseitin::LabeledGraph& g, const gadget::Gadget& gad,
                        const std::vector<std::vector<int>>& xs, const std::vector<std::vector<int>>& ys) {
  const auto spec = build_csp_spec(g, gad.dim());
  ChainReport r;
  r.witness = lifting::lifted_witness_matrix(gad, g, xs, ys);
  std::vector<CspInput> ax;
  std::vector<CspInput> by;
  for (const auto& x : xs) ax.push_back(alice_encode(spec, x));
  for (const auto& y : ys) by.push_back(bob_encode(spec, g, gad, y));
  r.slack = IntMatrix(xs.size(), ys.size());
  r.slack.row_labels = r.witness.row_labels;
  r.slack.col_labels = r.witness.col_labels;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      r.slack(i, j) = slack_entry_unchecked(spec, ax[i], by[j]);
      if (r.slack(i, j) != r.witness(i, j)) ++r.mismatches;
    }
  }
  return r;
}

}  // namespace xc::reductions
