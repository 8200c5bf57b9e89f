#include <algorithm>
#include <functional>
#include <map>

#include "xc/query.hpp"

namespace xc::query {

SimplexResult solve_feasibility(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw Error("right-hand side length mismatch");
  const std::size_t n = m == 0 ? 0 : a[0].size();
  for (const auto& row : a) {
    if (row.size() != n) throw Error("ragged constraint matrix");
  }
  SimplexResult out;
  if (m == 0) {
    out.feasible = true;
    out.x.assign(n, Rational(0));
    return out;
  }

  // Tableau [A' | I | b'] with rows negated where b < 0.
  const std::size_t width = n + m + 1;
  std::vector<int> sign(m, 1);
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) sign[i] = -1;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = sign[i] * a[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = sign[i] * b[i];
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> cost(width, Rational(0));
  for (std::size_t j = n; j < n + m; ++j) cost[j] = 1;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < width; ++j) cost[j] -= t[i][j];
  }

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == m) throw Error("phase-one objective unbounded");
    const Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) {
      if (v != 0) v /= pivot;
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (t[leave][j] != 0) t[i][j] -= f * t[leave][j];
      }
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (t[leave][j] != 0) cost[j] -= f * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  // -cost[n + m] is the phase-one optimum.
  if (cost[n + m] == 0) {
    out.feasible = true;
    out.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) out.x[basis[i]] = t[i][n + m];
    }
    return out;
  }
  out.farkas.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Rational y = 1 - cost[n + i];
    out.farkas[i] = -y * sign[i];
  }
  return out;
}

std::vector<Conjunction> conjunctions_up_to(std::size_t edges, int d) {
  if (edges > 64) throw Error("at most 64 edges");
  std::vector<Conjunction> out;
  const auto top = static_cast<std::size_t>(std::clamp(d, 0, static_cast<int>(edges)));
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Mask care = 0;
      for (auto e : idx) care |= Mask{1} << e;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v) {
        Mask value = 0;
        for (std::size_t i = 0; i < k; ++i) {
          if ((v >> i) & 1U) value |= Mask{1} << idx[i];
        }
        out.push_back(Conjunction{care, value});
      }
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == edges - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

json LpResult::to_json() const {
  json j{{"feasible", feasible}, {"rows", rows}, {"columns", columns}};
  if (junta) j["junta"] = junta->to_json();
  if (!farkas.empty()) {
    json y = json::array();
    for (const auto& v : farkas) y.push_back(to_string(v));
    j["farkas"] = y;
  }
  return j;
}

namespace {

std::vector<Rational> targets(const LabeledGraph& g) {
  const auto viol = violation_counts(g);
  std::vector<Rational> b(viol.size());
  for (std::size_t z = 0; z < viol.size(); ++z) b[z] = static_cast<int>(viol[z]) - 1;
  return b;
}

}  // namespace

LpResult min_junta_degree_lp(const LabeledGraph& g, int d, const LpOptions& options) {
  const std::size_t edges = g.edge_count();
  if (edges > options.edge_cap) {
    throw ResourceError("LP needs |E| <= " + std::to_string(options.edge_cap) + ", got " + std::to_string(edges));
  }
  const auto cols = conjunctions_up_to(edges, d);
  if (cols.size() > options.column_cap) {
    throw ResourceError("LP would need " + std::to_string(cols.size()) + " columns");
  }
  const auto b = targets(g);
  std::vector<std::vector<Rational>> a(b.size(), std::vector<Rational>(cols.size(), Rational(0)));
  for (Mask z = 0; z < b.size(); ++z) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].accepts(z)) a[z][c] = 1;
    }
  }
  const auto s = solve_feasibility(a, b);
  LpResult r;
  r.rows = b.size();
  r.columns = cols.size();
  r.feasible = s.feasible;
  if (s.feasible) {
    ConicalJunta h;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (s.x[c] != 0) h.terms.push_back(Term{s.x[c], cols[c]});
    }
    r.junta = std::move(h);
  } else {
    r.farkas = s.farkas;
  }
  return r;
}

bool farkas_certifies(const LabeledGraph& g, int d, const std::vector<Rational>& y) {
  const auto b = targets(g);
  if (y.size() != b.size()) return false;
  Rational yb(0);
  for (std::size_t z = 0; z < b.size(); ++z) yb += y[z] * b[z];
  if (yb >= 0) return false;
  for (const auto& c : conjunctions_up_to(g.edge_count(), d)) {
    Rational col(0);
    for (Mask z = 0; z < b.size(); ++z) {
      if (c.accepts(z)) col += y[z];
    }
    if (col < 0) return false;
  }
  return true;
}

DegreeSearch minimal_junta_degree(const LabeledGraph& g, const LpOptions& options) {
  DegreeSearch out;
  std::map<int, LpResult> cache;
  auto probe = [&](int d) -> const LpResult& {
    auto it = cache.find(d);
    if (it == cache.end()) {
      it = cache.emplace(d, min_junta_degree_lp(g, d, options)).first;
      out.probes.emplace_back(d, it->second.feasible);
    }
    return it->second;
  };
  int lo = 0;
  int hi = static_cast<int>(g.edge_count());
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (probe(mid).feasible) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  out.degree = lo;
  out.witness = probe(lo);
  if (!out.witness.feasible) throw Error("LP infeasible at full degree");
  if (lo > 0) out.refutation = probe(lo - 1);
  return out;
}

namespace {

// Solves the square-or-tall system A_S x = b by elimination; nullopt when
// inconsistent.
std::optional<std::vector<Rational>> solve_columns(const std::vector<std::vector<Rational>>& a,
                                                   const std::vector<Rational>& b,
                                                   const std::vector<std::size_t>& cols) {
  const std::size_t m = a.size();
  const std::size_t k = cols.size();
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(k + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < k; ++j) t[i][j] = a[i][cols[j]];
    t[i][k] = b[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_row(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t p = row;
    while (p < m && t[p][j] == 0) ++p;
    if (p == m) return std::nullopt;  // dependent; callers pass independent sets
    std::swap(t[p], t[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || t[i][j] == 0) continue;
      const Rational f = t[i][j] / t[row][j];
      for (std::size_t c = j; c <= k; ++c) t[i][c] -= f * t[row][c];
    }
    pivot_row[j] = row++;
  }
  for (std::size_t i = row; i < m; ++i) {
    if (t[i][k] != 0) return std::nullopt;
  }
  std::vector<Rational> x(k);
  for (std::size_t j = 0; j < k; ++j) x[j] = t[pivot_row[j]][k] / t[pivot_row[j]][j];
  return x;
}

bool independent(const std::vector<std::vector<Rational>>& a, const std::vector<std::size_t>& cols) {
  std::vector<Rational> dummy(a.size(), Rational(0));
  return solve_columns(a, dummy, cols).has_value();
}

constexpr std::size_t kBruteBudget = 2'000'000;

}  // namespace

bool brute_force_junta_feasible(const LabeledGraph& g, int d) {
  if (g.edge_count() > 8) throw ResourceError("brute-force junta oracle limited to 8 edges");
  const auto viol = violation_counts(g);
  std::vector<Mask> positive;
  std::vector<Rational> b;
  for (Mask z = 0; z < viol.size(); ++z) {
    if (viol[z] > 1) {
      positive.push_back(z);
      b.push_back(static_cast<int>(viol[z]) - 1);
    }
  }
  if (positive.empty()) return true;
  // Terms accepting a zero-target input must carry weight zero.
  std::vector<Conjunction> usable;
  for (const auto& c : conjunctions_up_to(g.edge_count(), d)) {
    bool ok = true;
    for (Mask z = 0; z < viol.size() && ok; ++z) {
      if (viol[z] <= 1 && c.accepts(z)) ok = false;
    }
    if (ok) usable.push_back(c);
  }
  std::vector<std::vector<Rational>> a(positive.size(), std::vector<Rational>(usable.size(), Rational(0)));
  for (std::size_t i = 0; i < positive.size(); ++i) {
    for (std::size_t c = 0; c < usable.size(); ++c) {
      if (usable[c].accepts(positive[i])) a[i][c] = 1;
    }
  }
  // Basic solutions: supports of independent columns.
  std::size_t visited = 0;
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t start) -> bool {
    if (++visited > kBruteBudget) throw ResourceError("brute-force junta search budget exhausted");
    if (!chosen.empty()) {
      if (auto x = solve_columns(a, b, chosen)) {
        if (std::all_of(x->begin(), x->end(), [](const Rational& v) { return v >= 0; })) return true;
      }
    }
    if (chosen.size() == positive.size()) return false;
    for (std::size_t c = start; c < usable.size(); ++c) {
      chosen.push_back(c);
      if (independent(a, chosen) && search(c + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return search(0);
}

int brute_force_minimal_degree(const LabeledGraph& g) {
  for (int d = 0; d <= static_cast<int>(g.edge_count()); ++d) {
    if (brute_force_junta_feasible(g, d)) return d;
  }
  throw Error("no feasible degree found");
}

}  // namespace xc::query
