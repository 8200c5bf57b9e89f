#include <algorithm>

#include "xc/nnrank.hpp"

namespace xc::nnrank {

NonnegMatrix kw_slack_matrix(const MonotoneOracle& f, const std::vector<BitVector>& ones,
                             const std::vector<BitVector>& zeros) {
  NonnegMatrix m(ones.size(), zeros.size());
  for (std::size_t i = 0; i < ones.size(); ++i) {
    if (!f(ones[i])) throw Error("row " + std::to_string(i) + " is not a 1-input");
  }
  for (std::size_t j = 0; j < zeros.size(); ++j) {
    if (f(zeros[j])) throw Error("column " + std::to_string(j) + " is not a 0-input");
  }
  for (std::size_t i = 0; i < ones.size(); ++i) {
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      if (ones[i].size() != zeros[j].size()) throw Error("KW inputs of different length");
      std::int64_t count = 0;
      for (std::size_t k = 0; k < ones[i].size(); ++k) count += (ones[i][k] && !zeros[j][k]) ? 1 : 0;
      if (count < 1) throw Error("negative slack: the oracle is not monotone-consistent with the inputs");
      m(i, j) = count - 1;
    }
  }
  return m;
}

json RankBounds::to_json() const {
  json j;
  j["lower"] = lower;
  j["lower_kind"] = lower_kind;
  j["upper"] = upper;
  j["upper_kind"] = upper_kind;
  j["residual"] = residual;
  j["seeds"] = seeds;
  j["exact"] = exact ? json(*exact) : json(nullptr);
  j["linear_rank"] = linear_rank;
  j["rank_field"] = rank_over_rationals ? "rationals" : "prime-field";
  j["cover"] = json{{"value", cover.value}, {"exact", cover.exact}, {"method", cover.method}};
  return j;
}

RankBounds compute_rank_bounds(const IntMatrix& m, const NmfOptions& options) {
  if (!m.nonnegative()) throw Error("rank bounds need a nonnegative matrix");
  RankBounds b;
  const auto r = rank(m);
  b.linear_rank = r.rank;
  b.rank_over_rationals = r.over_rationals;
  b.cover = rectangle_cover_lower_bound(m.support());
  if (b.cover.value > r.rank) {
    b.lower = b.cover.value;
    b.lower_kind = "rectangle-cover";
  } else {
    b.lower = r.rank;
    b.lower_kind = "linear-rank";
  }

  std::size_t nonzero_rows = 0;
  std::size_t nonzero_cols = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) {
        ++nonzero_rows;
        break;
      }
    }
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, j) != 0) {
        ++nonzero_cols;
        break;
      }
    }
  }
  b.upper = std::min(nonzero_rows, nonzero_cols);
  b.upper_kind = "trivial";
  b.seeds.push_back(options.seed);

  if (m.rows() * m.cols() <= options.max_cells) {
    for (std::size_t target = b.upper; target-- > std::max<std::size_t>(b.lower, 1);) {
      const auto f = nmf_upper_bound(m, target, options);
      if (!f) break;
      b.upper = target;
      b.upper_kind = "nmf";
      b.residual = f->residual;
      b.seeds.push_back(f->seed);
    }
  }
  if (b.lower > b.upper) throw Error("lower bound exceeds upper bound");
  if (b.lower == b.upper && b.upper_kind == "trivial") b.exact = b.lower;
  return b;
}

NonnegMatrix polytope_slack_matrix(const std::vector<std::vector<std::int64_t>>& vertices,
                                   const std::vector<std::vector<std::int64_t>>& a,
                                   const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) throw Error("one right-hand side per inequality");
  NonnegMatrix m(vertices.size(), a.size());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].size() != vertices[v].size()) throw Error("inequality dimension mismatch");
      std::int64_t dot = 0;
      for (std::size_t k = 0; k < a[i].size(); ++k) dot += a[i][k] * vertices[v][k];
      m(v, i) = b[i] - dot;
      if (m(v, i) < 0) throw Error("vertex violates an inequality");
    }
  }
  return m;
}

json SlackExtensionReport::to_json() const {
  json j;
  j["m_p"] = p ? p->to_json() : json(nullptr);
  j["m_pq"] = pq.to_json();
  j["both_exact"] = both_exact;
  j["consistent"] = consistent;
  return j;
}

SlackExtensionReport check_slack_extension_inequality(const std::optional<IntMatrix>& m_p,
                                                      const IntMatrix& m_pq, const NmfOptions& options) {
  SlackExtensionReport r;
  r.pq = compute_rank_bounds(m_pq, options);
  if (m_p) {
    if (m_p->rows() != m_pq.rows()) throw Error("M(P) and M(P;Q) must share the vertex rows");
    r.p = compute_rank_bounds(*m_p, options);
    r.both_exact = r.p->exact.has_value() && r.pq.exact.has_value();
    r.consistent = r.pq.lower <= r.p->upper + 1;
  }
  return r;
}

}  // namespace xc::nnrank
