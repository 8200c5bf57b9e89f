#include <utility>

#include "xc/nnrank.hpp"

namespace xc::nnrank {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a)) {
    if (e & 1U) r = mulmod(r, a);
  }
  return r;
}

std::size_t rank_mod_p(const IntMatrix& m) {
  const auto rows = m.rows();
  const auto cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto v = m(i, j);
      a[i * cols + j] = v >= 0 ? static_cast<std::uint64_t>(v) % kPrime
                               : kPrime - static_cast<std::uint64_t>(-v) % kPrime;
    }
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[pivot * cols + j]);
    const auto inv = powmod(a[r * cols + c], kPrime - 2);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const auto f = mulmod(a[i * cols + c], inv);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) {
        a[i * cols + j] = (a[i * cols + j] + kPrime - mulmod(f, a[r * cols + j])) % kPrime;
      }
    }
    ++r;
  }
  return r;
}

std::size_t rank_rational(const IntMatrix& m) {
  const auto rows = m.rows();
  const auto cols = m.cols();
  std::vector<Rational> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = Rational(static_cast<long>(m(i, j)));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[pivot * cols + j]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i * cols + c] == 0) continue;
      const Rational f = a[i * cols + c] / a[r * cols + c];
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] -= f * a[r * cols + j];
    }
    ++r;
  }
  return r;
}

}  // namespace

RankResult rank(const IntMatrix& m, std::size_t exact_limit) {
  if (m.rows() <= exact_limit && m.cols() <= exact_limit) return {rank_rational(m), true};
  return {rank_mod_p(m), false};
}

}  // namespace xc::nnrank
