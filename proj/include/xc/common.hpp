#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace xc {

/// Seeded random source used by every sampler. Callers own the seed.
using Rng = std::mt19937_64;

/// Exact rational arithmetic for ranks, LPs and probabilities.
using Rational = mpq_class;

/// Raised on malformed input or a violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a resource guard (enumeration size, edge cap) trips.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// splitmix64 step; derives independent per-partition seeds from one seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace xc
