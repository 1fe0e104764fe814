#pragma once

#include <cstdint>

#include "cgiter/rational.hpp"

namespace cgiter {

// SplitMix64: the repository's deterministic random source.  Chosen because
// it is a 64-bit counter-style generator with a published reference
// implementation, so seeded streams reproduce bit-for-bit on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next();

  // Uniform in [0, n) via masked rejection (no modulo bias).
  uint64_t next_below(uint64_t n);

  // Uniform in [lo, hi], inclusive.
  long next_in(long lo, long hi);

  // True with probability exactly p (p in [0, 1]), by comparing a draw
  // against p * 2^64 in exact integer arithmetic.
  bool bernoulli(const Rational& p);

 private:
  uint64_t state_;
};

// Derives an independent stream seed from a master seed and up to three
// coordinates (instance indices, sample numbers, ...).
uint64_t mix_seed(uint64_t master, uint64_t a, uint64_t b = 0, uint64_t c = 0);

}  // namespace cgiter
