#include <algorithm>
#include <deque>

#include "xc/reductions.hpp"

namespace xc::reductions {

CspSatSpec::CspSatSpec(int sigma, int variables, std::vector<std::vector<int>> vars)
    : sigma_(sigma), variables_(variables), vars_(std::move(vars)) {
  if (sigma_ < 1) throw Error("alphabet must be nonempty");
  if (variables_ < 0) throw Error("negative variable count");
  std::vector<std::vector<std::size_t>> constraints_of(static_cast<std::size_t>(variables_));
  for (std::size_t c = 0; c < vars_.size(); ++c) {
    std::size_t count = 1;
    for (std::size_t k = 0; k < vars_[c].size(); ++k) {
      const int v = vars_[c][k];
      if (v < 0 || v >= variables_) throw Error("constraint variable out of range");
      if (std::find(vars_[c].begin(), vars_[c].begin() + static_cast<std::ptrdiff_t>(k), v) !=
          vars_[c].begin() + static_cast<std::ptrdiff_t>(k)) {
        throw Error("constraint reads a variable twice");
      }
      constraints_of[static_cast<std::size_t>(v)].push_back(c);
      count *= static_cast<std::size_t>(sigma_);
      if (count > (std::size_t{1} << 24)) throw ResourceError("constraint truth table too large");
    }
    offsets_.push_back(length_);
    local_counts_.push_back(count);
    length_ += count;
  }

  std::vector<bool> seen(vars_.size(), false);
  for (std::size_t root = 0; root < vars_.size(); ++root) {
    if (seen[root]) continue;
    std::deque<std::size_t> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const auto c = queue.front();
      queue.pop_front();
      order_.push_back(c);
      for (int v : vars_[c]) {
        for (auto d : constraints_of[static_cast<std::size_t>(v)]) {
          if (!seen[d]) {
            seen[d] = true;
            queue.push_back(d);
          }
        }
      }
    }
  }
}

int CspSatSpec::max_arity() const {
  std::size_t d = 0;
  for (const auto& v : vars_) d = std::max(d, v.size());
  return static_cast<int>(d);
}

std::pair<std::size_t, std::size_t> CspSatSpec::locate(std::size_t bit) const {
  if (bit >= length_) throw Error("input bit out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), bit);
  const auto c = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return {c, bit - offsets_[c]};
}

std::size_t CspSatSpec::restrict(std::size_t c, const std::vector<int>& assignment) const {
  std::size_t local = 0;
  for (int v : vars_[c]) {
    const int a = assignment[static_cast<std::size_t>(v)];
    if (a < 0 || a >= sigma_) throw Error("assignment value out of range");
    local = local * static_cast<std::size_t>(sigma_) + static_cast<std::size_t>(a);
  }
  return local;
}

std::vector<int> CspSatSpec::decode(std::size_t c, std::size_t local) const {
  std::vector<int> values(vars_[c].size());
  for (std::size_t k = values.size(); k-- > 0;) {
    values[k] = static_cast<int>(local % static_cast<std::size_t>(sigma_));
    local /= static_cast<std::size_t>(sigma_);
  }
  return values;
}

json CspSatSpec::to_json() const {
  json j;
  j["alphabet"] = sigma_;
  j["variables"] = variables_;
  j["constraints"] = vars_;
  j["input_length"] = length_;
  j["max_arity"] = max_arity();
  return j;
}

CspSatSpec build_csp_spec(const tseitin::LabeledGraph& g, int alphabet) {
  std::vector<std::vector<int>> vars;
  for (tseitin::Node v = 0; v < g.node_count(); ++v) {
    std::vector<int> es;
    for (auto e : g.incident(v)) es.push_back(static_cast<int>(e));
    vars.push_back(std::move(es));
  }
  return CspSatSpec(alphabet, static_cast<int>(g.edge_count()), std::move(vars));
}

std::size_t CspInput::count() const {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::string CspInput::to_string() const {
  std::string s;
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

CspInput CspInput::from_string(const std::string& s) {
  CspInput in;
  for (char ch : s) {
    if (ch != '0' && ch != '1') throw Error("CSP input must contain only 0/1");
    in.bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return in;
}

json input_manifest(const CspSatSpec& spec) {
  json arr = json::array();
  for (std::size_t c = 0; c < spec.constraint_count(); ++c) {
    for (std::size_t l = 0; l < spec.local_count(c); ++l) {
      arr.push_back(json{{"bit", spec.bit(c, l)}, {"constraint", c}, {"assignment", spec.decode(c, l)}});
    }
  }
  return arr;
}

CspInput alice_encode(const CspSatSpec& spec, const std::vector<int>& assignment) {
  if (assignment.size() != static_cast<std::size_t>(spec.variable_count())) {
    throw Error("assignment length must equal the variable count");
  }
  CspInput in{std::vector<std::uint8_t>(spec.input_length(), 0)};
  for (std::size_t c = 0; c < spec.constraint_count(); ++c) in.bits[spec.bit(c, spec.restrict(c, assignment))] = 1;
  return in;
}

CspInput bob_encode(const CspSatSpec& spec, const tseitin::LabeledGraph& g, const gadget::Gadget& gad,
                    const std::vector<int>& y) {
  if (y.size() != g.edge_count()) throw Error("Bob input length must equal |E|");
  if (spec.sigma() != gad.dim()) throw Error("alphabet must match the gadget domain");
  CspInput in{std::vector<std::uint8_t>(spec.input_length(), 0)};
  for (std::size_t c = 0; c < spec.constraint_count(); ++c) {
    const auto& vars = spec.vars(c);
    for (std::size_t l = 0; l < spec.local_count(c); ++l) {
      const auto values = spec.decode(c, l);
      std::uint8_t parity = 0;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        parity ^= gad(values[k], y[static_cast<std::size_t>(vars[k])]);
      }
      if (parity == g.label(static_cast<tseitin::Node>(c))) in.bits[spec.bit(c, l)] = 1;
    }
  }
  return in;
}

namespace {

class SatSearch {
 public:
  SatSearch(const CspSatSpec& spec, const CspInput& input)
      : spec_(spec), input_(input), assignment_(static_cast<std::size_t>(spec.variable_count()), -1) {}

  bool run(std::size_t k) {
    const auto& order = spec_.search_order();
    if (k == order.size()) return true;
    const auto c = order[k];
    const auto& vars = spec_.vars(c);
    for (std::size_t l = 0; l < spec_.local_count(c); ++l) {
      if (!input_.bits[spec_.bit(c, l)]) continue;
      const auto values = spec_.decode(c, l);
      bool consistent = true;
      for (std::size_t i = 0; i < vars.size() && consistent; ++i) {
        const int cur = assignment_[static_cast<std::size_t>(vars[i])];
        consistent = cur < 0 || cur == values[i];
      }
      if (!consistent) continue;
      std::vector<int> fresh;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        auto& slot = assignment_[static_cast<std::size_t>(vars[i])];
        if (slot < 0) {
          slot = values[i];
          fresh.push_back(vars[i]);
        }
      }
      if (run(k + 1)) return true;
      for (int v : fresh) assignment_[static_cast<std::size_t>(v)] = -1;
    }
    return false;
  }

  std::vector<int> result() const {
    auto a = assignment_;
    for (auto& v : a) v = std::max(v, 0);
    return a;
  }

 private:
  const CspSatSpec& spec_;
  const CspInput& input_;
  std::vector<int> assignment_;
};

}  // namespace

std::optional<std::vector<int>> eval_sat(const CspSatSpec& spec, const CspInput& input) {
  if (input.size() != spec.input_length()) throw Error("CSP input length mismatch");
  SatSearch search(spec, input);
  if (!search.run(0)) return std::nullopt;
  return search.result();
}

std::vector<std::size_t> kw_witnesses(const CspInput& x, const CspInput& y) {
  if (x.size() != y.size()) throw Error("KW inputs of different length");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.bits[i] && !y.bits[i]) out.push_back(i);
  }
  return out;
}

ParsimonyResult check_parsimony(const CspSatSpec& spec, const tseitin::LabeledGraph& g,
                                const gadget::Gadget& gad, const std::vector<int>& x,
                                const std::vector<int>& y) {
  ParsimonyResult r;
  tseitin::EdgeLabeling z(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) z.set(e, gad(x[e], y[e]) != 0);
  const auto viol = tseitin::violations(g, z);
  const auto ax = alice_encode(spec, x);
  const auto by = bob_encode(spec, g, gad, y);
  r.violations = viol.size();
  r.kw_witnesses = kw_witnesses(ax, by).size();
  for (std::size_t c = 0; c < spec.constraint_count(); ++c) {
    const bool violated = std::binary_search(viol.begin(), viol.end(), static_cast<tseitin::Node>(c));
    const bool witness = by.bits[spec.bit(c, spec.restrict(c, x))] == 0;
    if (violated != witness) r.nodewise = false;
  }
  return r;
}

}  // namespace xc::reductions
