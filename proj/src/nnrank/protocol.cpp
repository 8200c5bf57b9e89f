#include <cmath>

#include "xc/nnrank.hpp"

namespace xc::nnrank {

double ProtocolEstimate::z_score() const {
  const double diff = std::abs(estimate - exact.get_d());
  if (standard_error == 0.0) return diff == 0.0 ? 0.0 : INFINITY;
  return diff / standard_error;
}

std::size_t first_witness(const BitVector& x, const BitVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && !y[i]) return i;
  }
  throw Error("no witness: x is not above y");
}

ProtocolEstimate simulate_witness_protocol(const KwSolver& solver, const BitVector& x, const BitVector& y,
                                           std::size_t trials, Rng& rng) {
  const std::size_t n = x.size();
  if (y.size() != n) throw Error("KW inputs of different length");
  if (n < 2) throw Error("protocol needs at least two coordinates");
  std::size_t witnesses = 0;
  for (std::size_t k = 0; k < n; ++k) witnesses += (x[k] && !y[k]) ? 1 : 0;
  if (witnesses == 0) throw Error("no witness: x is not above y");

  ProtocolEstimate est;
  est.trials = trials;
  est.exact = Rational(static_cast<long>(witnesses - 1), static_cast<unsigned long>(n - 1));
  est.exact.canonicalize();
  std::uniform_int_distribution<std::size_t> pick(0, n - 2);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto i = solver(x, y);
    if (i >= n || !x[i] || y[i]) throw Error("solver returned an invalid witness");
    auto j = pick(rng);
    if (j >= i) ++j;
    if (x[j] && !y[j]) ++est.accepted;
  }
  if (trials > 0) {
    est.estimate = static_cast<double>(est.accepted) / static_cast<double>(trials);
    const double p = est.exact.get_d();
    est.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  }
  return est;
}

}  // namespace xc::nnrank
