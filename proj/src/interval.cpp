#include "cgiter/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgiter {

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw std::domain_error("interval division by interval containing zero");
  Rational p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

Interval operator+(const Interval& a, const Rational& b) { return {a.lo + b, a.hi + b}; }

Interval operator*(const Rational& a, const Interval& b) {
  if (a >= 0) return {a * b.lo, a * b.hi};
  return {a * b.hi, a * b.lo};
}

namespace {

Integer shift_left(const Integer& x, unsigned bits) {
  Integer r;
  mpz_mul_2exp(r.get_mpz_t(), x.get_mpz_t(), bits);
  return r;
}

// sqrt(num/den) = sqrt(num*den)/den; floor-sqrt the scaled integer.
void sqrt_bounds(const Rational& x, unsigned bits, Rational* lo, Rational* hi) {
  if (x < 0) throw std::domain_error("sqrt of negative rational");
  Integer prod = x.get_num() * x.get_den();
  if (mpz_perfect_square_p(prod.get_mpz_t())) {
    Integer root;
    mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
    Rational exact(root, x.get_den());
    exact.canonicalize();
    if (lo) *lo = exact;
    if (hi) *hi = exact;
    return;
  }
  Integer scaled = shift_left(prod, 2 * bits);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Integer den = shift_left(x.get_den(), bits);
  if (lo) {
    Rational l(root, den);
    l.canonicalize();
    *lo = l;
  }
  if (hi) {
    Rational h(root + 1, den);
    h.canonicalize();
    *hi = h;
  }
}

}  // namespace

Rational sqrt_lower(const Rational& x, unsigned bits) {
  Rational lo;
  sqrt_bounds(x, bits, &lo, nullptr);
  return lo;
}

Rational sqrt_upper(const Rational& x, unsigned bits) {
  Rational hi;
  sqrt_bounds(x, bits, nullptr, &hi);
  return hi;
}

Interval sqrt_iv(const Interval& a, unsigned bits) {
  if (a.lo < 0) throw std::domain_error("sqrt_iv: interval extends below zero");
  return {sqrt_lower(a.lo, bits), sqrt_upper(a.hi, bits)};
}

Interval sqrt_of_int(const Integer& n, unsigned bits) {
  return sqrt_iv(Interval::exact(Rational(n)), bits);
}

Interval pow2_half(int d, unsigned bits) {
  if (d < 0) throw std::domain_error("pow2_half: negative exponent");
  if (d % 2 == 0) {
    Integer v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(d / 2));
    return Interval::exact(Rational(v));
  }
  Integer v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>(d));
  return sqrt_of_int(v, bits);
}

Integer ceil_sqrt(const Integer& n) {
  if (n < 0) throw std::domain_error("ceil_sqrt of negative integer");
  Integer root;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  if (root * root < n) root += 1;
  return root;
}

Interval kth_root_iv(const Integer& n, unsigned k, unsigned bits) {
  if (n < 0 || k == 0) throw std::domain_error("kth_root_iv: bad arguments");
  Integer scaled = n;
  for (unsigned i = 0; i < k; ++i) scaled = shift_left(scaled, bits);
  Integer root;
  int exactp = mpz_root(root.get_mpz_t(), scaled.get_mpz_t(), k);
  Integer den = shift_left(Integer(1), bits);
  Rational lo(root, den);
  lo.canonicalize();
  if (exactp) return Interval::exact(lo);
  Rational hi(root + 1, den);
  hi.canonicalize();
  return {lo, hi};
}

}  // namespace cgiter
