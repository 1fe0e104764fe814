#include "cgiter/rng.hpp"

#include <stdexcept>

namespace cgiter {

uint64_t SplitMix64::next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t SplitMix64::next_below(uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below: empty range");
  uint64_t mask = n - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  uint64_t r;
  do {
    r = next() & mask;
  } while (r >= n);
  return r;
}

long SplitMix64::next_in(long lo, long hi) {
  if (lo > hi) throw std::invalid_argument("next_in: empty range");
  return lo + static_cast<long>(next_below(static_cast<uint64_t>(hi - lo) + 1));
}

bool SplitMix64::bernoulli(const Rational& p) {
  if (p < 0 || p > 1) throw std::invalid_argument("bernoulli: probability outside [0,1]");
  uint64_t r = next();
  // r / 2^64 < p  <=>  r * den < num * 2^64
  Integer lhs = Integer(static_cast<unsigned long>(r >> 32));
  lhs <<= 32;
  lhs += static_cast<unsigned long>(r & 0xffffffffULL);
  lhs *= p.get_den();
  Integer rhs = p.get_num();
  rhs <<= 64;
  return lhs < rhs;
}

uint64_t mix_seed(uint64_t master, uint64_t a, uint64_t b, uint64_t c) {
  SplitMix64 g(master);
  uint64_t s = g.next() ^ (a * 0x9e3779b97f4a7c15ULL);
  SplitMix64 g2(s);
  s = g2.next() ^ (b * 0xc2b2ae3d27d4eb4fULL);
  SplitMix64 g3(s);
  s = g3.next() ^ (c * 0x165667b19e3779f9ULL);
  SplitMix64 g4(s);
  return g4.next();
}

}  // namespace cgiter
