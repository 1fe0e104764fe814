#pragma once

#include "cgiter/rational.hpp"

namespace cgiter {

// Certified enclosure of a real value by two exact rationals.  Field
// operations are exact; only roots round outward, at `bits` binary digits.
// Used wherever a bound involves sqrt(d), 2^{d/2} or the like, so that
// guarantee checks stay sound without symbolic algebra.
struct Interval {
  Rational lo, hi;

  static Interval exact(const Rational& x) { return {x, x}; }
  bool is_exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

inline constexpr unsigned kDefaultRootBits = 128;

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
// Division requires b to be sign-definite (0 not in [b.lo, b.hi]).
Interval operator/(const Interval& a, const Interval& b);

Interval operator+(const Interval& a, const Rational& b);
Interval operator*(const Rational& a, const Interval& b);

// Largest rational on a 2^-bits grid that is <= sqrt(x), and smallest that
// is >= sqrt(x).  Exact when x is a perfect rational square.
Rational sqrt_lower(const Rational& x, unsigned bits = kDefaultRootBits);
Rational sqrt_upper(const Rational& x, unsigned bits = kDefaultRootBits);

// Enclosure of sqrt over an interval (requires a.lo >= 0).
Interval sqrt_iv(const Interval& a, unsigned bits = kDefaultRootBits);

// Enclosure of sqrt(n) for an integer n >= 0 (exact for perfect squares).
Interval sqrt_of_int(const Integer& n, unsigned bits = kDefaultRootBits);

// Enclosure of 2^{d/2} (exact for even d).
Interval pow2_half(int d, unsigned bits = kDefaultRootBits);

// ceil(sqrt(n)) for integer n >= 0, exact.
Integer ceil_sqrt(const Integer& n);

// Enclosure of n^{1/k} for integer n >= 0, k >= 1.
Interval kth_root_iv(const Integer& n, unsigned k, unsigned bits = kDefaultRootBits);

// x is certainly <= / < the value enclosed by b (sound one-sided tests).
inline bool certainly_le(const Rational& x, const Interval& b) { return x <= b.lo; }
inline bool certainly_lt(const Rational& x, const Interval& b) { return x < b.lo; }
inline bool certainly_gt(const Rational& x, const Interval& b) { return x > b.hi; }

}  // namespace cgiter
