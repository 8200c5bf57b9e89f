#pragma once

// Data-parallel inner loops shared by the exhaustive checkers and the NMF
// search. Every kernel has a portable scalar reference; an AVX2 variant is
// compiled separately and chosen once at runtime. Both variants are always
// reachable through `kernel_table(Isa)` so tests can compare them directly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace xc::kernels {

enum class Isa { scalar, avx2 };

/// Parity-check description of a Tseitin instance over labelings packed in
/// the low bits of a 32-bit word (bit e = label of edge e).
struct ParityProblem {
  std::span<const std::uint32_t> incidence;  // per node: mask of incident edges
  std::uint32_t label_mask = 0;              // bit v set iff l(v) = 1
};

/// Conjunctions over packed labelings: term t accepts z iff
/// (z & care[t]) == value[t]. Weights are integers so sums stay exact.
struct TermSet {
  std::span<const std::uint32_t> care;
  std::span<const std::uint32_t> value;
  std::span<const std::int32_t> weight;
};

struct KernelTable {
  Isa isa;
  // out[k] = |viol(first + k)| for k < out.size().
  void (*count_violations)(const ParityProblem&, std::uint32_t first,
                           std::span<std::uint8_t> out);
  // out[k] = sum of weights of terms accepting first + k.
  void (*accept_weights)(const TermSet&, std::uint32_t first,
                         std::span<std::int64_t> out);
  // Row-major c(m x n) = a(m x k) * b(k x n).
  void (*matmul)(const double* a, const double* b, double* c, std::size_t m,
                 std::size_t k, std::size_t n);
  // x[i] *= num[i] / (den[i] + eps).
  void (*multiplicative_update)(double* x, const double* num, const double* den,
                                std::size_t count, double eps);
};

/// True when the AVX2 variants were compiled in and the CPU supports them.
bool avx2_available();

/// Kernel table for a specific ISA; falls back to scalar if unavailable.
const KernelTable& kernel_table(Isa isa);

/// The table selected at first use: AVX2 when available unless the
/// environment variable XC_FORCE_SCALAR is set.
const KernelTable& active();

std::string_view isa_name(Isa isa);

namespace scalar {
void count_violations(const ParityProblem&, std::uint32_t, std::span<std::uint8_t>);
void accept_weights(const TermSet&, std::uint32_t, std::span<std::int64_t>);
void matmul(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
void multiplicative_update(double*, const double*, const double*, std::size_t, double);
}  // namespace scalar

namespace avx2 {
void count_violations(const ParityProblem&, std::uint32_t, std::span<std::uint8_t>);
void accept_weights(const TermSet&, std::uint32_t, std::span<std::int64_t>);
void matmul(const double*, const double*, double*, std::size_t, std::size_t, std::size_t);
void multiplicative_update(double*, const double*, const double*, std::size_t, double);
}  // namespace avx2

}  // namespace xc::kernels
