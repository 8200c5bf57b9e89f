#include "xc/kernels.hpp"

#include <immintrin.h>

#include <bit>

namespace xc::kernels::avx2 {

namespace {

inline __m256i lane_offsets() { return _mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7); }

// Parity of each 32-bit lane, returned as 0/1 per lane.
inline __m256i parity_epi32(__m256i m) {
  m = _mm256_xor_si256(m, _mm256_srli_epi32(m, 16));
  m = _mm256_xor_si256(m, _mm256_srli_epi32(m, 8));
  m = _mm256_xor_si256(m, _mm256_srli_epi32(m, 4));
  m = _mm256_xor_si256(m, _mm256_srli_epi32(m, 2));
  m = _mm256_xor_si256(m, _mm256_srli_epi32(m, 1));
  return _mm256_and_si256(m, _mm256_set1_epi32(1));
}

}  // namespace

void count_violations(const ParityProblem& p, std::uint32_t first,
                      std::span<std::uint8_t> out) {
  const std::size_t n = out.size();
  std::size_t k = 0;
  alignas(32) std::uint32_t lanes[8];
  for (; k + 8 <= n; k += 8) {
    const __m256i z = _mm256_add_epi32(
        _mm256_set1_epi32(static_cast<int>(first + static_cast<std::uint32_t>(k))),
        lane_offsets());
    __m256i count = _mm256_setzero_si256();
    for (std::size_t v = 0; v < p.incidence.size(); ++v) {
      const __m256i inc = _mm256_set1_epi32(static_cast<int>(p.incidence[v]));
      const __m256i label = _mm256_set1_epi32(static_cast<int>((p.label_mask >> v) & 1U));
      const __m256i par = parity_epi32(_mm256_and_si256(z, inc));
      count = _mm256_add_epi32(count, _mm256_xor_si256(par, label));
    }
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
    for (int j = 0; j < 8; ++j) out[k + j] = static_cast<std::uint8_t>(lanes[j]);
  }
  if (k < n) scalar::count_violations(p, first + static_cast<std::uint32_t>(k), out.subspan(k));
}

void accept_weights(const TermSet& t, std::uint32_t first,
                    std::span<std::int64_t> out) {
  const std::size_t n = out.size();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256i z = _mm256_add_epi32(
        _mm256_set1_epi32(static_cast<int>(first + static_cast<std::uint32_t>(k))),
        lane_offsets());
    __m256i lo = _mm256_setzero_si256();
    __m256i hi = _mm256_setzero_si256();
    for (std::size_t i = 0; i < t.care.size(); ++i) {
      const __m256i care = _mm256_set1_epi32(static_cast<int>(t.care[i]));
      const __m256i value = _mm256_set1_epi32(static_cast<int>(t.value[i]));
      const __m256i hit = _mm256_cmpeq_epi32(_mm256_and_si256(z, care), value);
      const __m256i w = _mm256_set1_epi64x(t.weight[i]);
      lo = _mm256_add_epi64(lo, _mm256_and_si256(
          _mm256_cvtepi32_epi64(_mm256_castsi256_si128(hit)), w));
      hi = _mm256_add_epi64(hi, _mm256_and_si256(
          _mm256_cvtepi32_epi64(_mm256_extracti128_si256(hit, 1)), w));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + k), lo);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + k + 4), hi);
  }
  if (k < n) scalar::accept_weights(t, first + static_cast<std::uint32_t>(k), out.subspan(k));
}

// Same accumulation order as the scalar reference, without fused multiply-add,
// so both variants round identically.
void matmul(const double* a, const double* b, double* c, std::size_t m,
            std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* row = c + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double s = a[i * k + p];
      const __m256d sv = _mm256_set1_pd(s);
      const double* brow = b + p * n;
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        const __m256d prod = _mm256_mul_pd(sv, _mm256_loadu_pd(brow + j));
        _mm256_storeu_pd(row + j, _mm256_add_pd(_mm256_loadu_pd(row + j), prod));
      }
      for (; j < n; ++j) row[j] += s * brow[j];
    }
  }
}

void multiplicative_update(double* x, const double* num, const double* den,
                           std::size_t count, double eps) {
  const __m256d e = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d ratio = _mm256_div_pd(_mm256_loadu_pd(num + i),
                                        _mm256_add_pd(_mm256_loadu_pd(den + i), e));
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), ratio));
  }
  for (; i < count; ++i) x[i] *= num[i] / (den[i] + eps);
}

}  // namespace xc::kernels::avx2
