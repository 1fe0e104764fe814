#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace cgiter {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;
using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

// Floor/ceil/round of a rational to an integer. round_int rounds to the
// nearest integer with ties going up (floor(x + 1/2)).
Integer floor_int(const Rational& x);
Integer ceil_int(const Rational& x);
Integer round_int(const Rational& x);

// Fractional part {x} = x - floor(x), always in [0, 1).
Rational frac(const Rational& x);

// Componentwise fractional part; every entry of the result lies in [0, 1).
RatVec mod1(const RatVec& v);

// Exact squared Euclidean norm. Norm comparisons throughout the library are
// done on squares so that no irrational value is ever materialized.
Rational norm_sq(const RatVec& v);

Rational dot(const RatVec& a, const RatVec& b);
RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const Rational& s, const RatVec& v);

// Divides the joint gcd out of (p_1, ..., p_k, q). Requires q > 0 and
// 0 <= p_i < q; the represented rational vector p/q is unchanged.
std::pair<IntVec, Integer> normalize_multiplier(IntVec p, Integer q);

// A rational vector in standard form: entries p_i / q over one common
// denominator with gcd(p_1, ..., p_d, q) = 1 and 0 <= p_i < q.
struct NuForm {
  IntVec p;
  Integer q;

  // Normalizes (divides out the joint gcd) and validates.
  static NuForm normalized(IntVec p, Integer q);
  // Validates without normalizing; throws if gcd(p, q) != 1.
  static NuForm checked(IntVec p, Integer q);
  // Builds the standard form of a vector with entries in [0, 1).
  static NuForm from_vector(const RatVec& v);

  int dim() const { return static_cast<int>(p.size()); }
  RatVec to_vector() const;
  Rational entry(int i) const;
};

// Rendering.  to_string gives the exact "p/q" (or plain integer) form;
// to_decimal gives a fixed-point decimal with the requested number of places,
// rounded half away from zero; sqrt_decimal renders sqrt(x_sq) truncated to
// the requested number of places (default precision for reports is 12).
std::string to_string(const Rational& x);
std::string to_string(const RatVec& v);
std::string to_decimal(const Rational& x, int digits);
std::string sqrt_decimal(const Rational& x_sq, int digits);

// Parses "p/q", a plain integer, or a decimal literal ("0.25") exactly.
Rational parse_rational(const std::string& s);
// Whitespace-separated list of rationals.
RatVec parse_rational_vector(const std::string& s);

}  // namespace cgiter
