#include "xc/kernels.hpp"

#include <bit>

namespace xc::kernels::scalar {

void count_violations(const ParityProblem& p, std::uint32_t first,
                      std::span<std::uint8_t> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::uint32_t z = first + static_cast<std::uint32_t>(k);
    unsigned count = 0;
    for (std::size_t v = 0; v < p.incidence.size(); ++v) {
      const unsigned parity = std::popcount(z & p.incidence[v]) & 1U;
      count += parity ^ ((p.label_mask >> v) & 1U);
    }
    out[k] = static_cast<std::uint8_t>(count);
  }
}

void accept_weights(const TermSet& t, std::uint32_t first,
                    std::span<std::int64_t> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::uint32_t z = first + static_cast<std::uint32_t>(k);
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < t.care.size(); ++i) {
      if ((z & t.care[i]) == t.value[i]) sum += t.weight[i];
    }
    out[k] = sum;
  }
}

void matmul(const double* a, const double* b, double* c, std::size_t m,
            std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* row = c + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = a[i * k + p];
      const double* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) row[j] += s * brow[j];
    }
  }
}

void multiplicative_update(double* x, const double* num, const double* den,
                           std::size_t count, double eps) {
  for (std::size_t i = 0; i < count; ++i) x[i] *= num[i] / (den[i] + eps);
}

}  // namespace xc::kernels::scalar
