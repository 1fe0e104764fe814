#include "cgiter/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cgiter {

Integer floor_int(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Integer ceil_int(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

Integer round_int(const Rational& x) {
  return floor_int(x + Rational(1, 2));
}

Rational frac(const Rational& x) {
  Rational r = x - Rational(floor_int(x));
  return r;
}

RatVec mod1(const RatVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (const Rational& x : v) out.push_back(frac(x));
  return out;
}

Rational norm_sq(const RatVec& v) {
  Rational s = 0;
  for (const Rational& x : v) s += x * x;
  return s;
}

Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RatVec add(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVec sub(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVec scale(const Rational& s, const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

std::pair<IntVec, Integer> normalize_multiplier(IntVec p, Integer q) {
  if (q <= 0) throw std::invalid_argument("normalize_multiplier: denominator must be positive");
  Integer g = q;
  for (const Integer& pi : p) {
    if (pi < 0 || pi >= q) throw std::invalid_argument("normalize_multiplier: entries must satisfy 0 <= p_i < q");
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), pi.get_mpz_t());
  }
  for (Integer& pi : p) pi /= g;
  q /= g;
  return {std::move(p), std::move(q)};
}

NuForm NuForm::normalized(IntVec p, Integer q) {
  auto [pn, qn] = normalize_multiplier(std::move(p), std::move(q));
  return NuForm{std::move(pn), std::move(qn)};
}

NuForm NuForm::checked(IntVec p, Integer q) {
  if (q <= 0) throw std::invalid_argument("NuForm: denominator must be positive");
  Integer g = q;
  for (const Integer& pi : p) {
    if (pi < 0 || pi >= q) throw std::invalid_argument("NuForm: entries must satisfy 0 <= p_i < q");
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), pi.get_mpz_t());
  }
  if (g != 1) throw std::invalid_argument("NuForm: not in standard form, gcd(p_1,...,p_d,q) = " + g.get_str());
  return NuForm{std::move(p), std::move(q)};
}

NuForm NuForm::from_vector(const RatVec& v) {
  Integer q = 1;
  for (const Rational& x : v) {
    if (x < 0 || x >= 1) throw std::invalid_argument("NuForm: entries must lie in [0,1)");
    mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), x.get_den().get_mpz_t());
  }
  IntVec p;
  p.reserve(v.size());
  for (const Rational& x : v) p.push_back(Integer(x.get_num() * (q / x.get_den())));
  return normalized(std::move(p), std::move(q));
}

RatVec NuForm::to_vector() const {
  RatVec v;
  v.reserve(p.size());
  for (const Integer& pi : p) {
    Rational x(pi, q);
    x.canonicalize();
    v.push_back(x);
  }
  return v;
}

Rational NuForm::entry(int i) const {
  Rational x(p[static_cast<size_t>(i)], q);
  x.canonicalize();
  return x;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const RatVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += to_string(v[i]);
  }
  return s;
}

namespace {

Integer pow10(int k) {
  Integer t;
  mpz_ui_pow_ui(t.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return t;
}

std::string fixed_point(const Integer& scaled, int digits, bool negative) {
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits + 1) - s.size(), '0');
  std::string out = s.substr(0, s.size() - static_cast<size_t>(digits));
  if (digits > 0) out += "." + s.substr(s.size() - static_cast<size_t>(digits));
  if (negative && scaled != 0) out.insert(0, 1, '-');
  return out;
}

}  // namespace

std::string to_decimal(const Rational& x, int digits) {
  bool neg = x < 0;
  Rational a = neg ? Rational(-x) : x;
  Integer num = a.get_num() * pow10(digits);
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), a.get_den().get_mpz_t());
  if (2 * r >= a.get_den()) q += 1;
  return fixed_point(q, digits, neg);
}

std::string sqrt_decimal(const Rational& x_sq, int digits) {
  if (x_sq < 0) throw std::domain_error("sqrt_decimal: negative value");
  Integer scaled = (x_sq.get_num() * pow10(2 * digits)) / x_sq.get_den();
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  return fixed_point(root, digits, false);
}

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("parse_rational: empty string");
  auto slash = t.find('/');
  try {
    if (slash != std::string::npos) {
      Integer num(t.substr(0, slash), 10);
      Integer den(t.substr(slash + 1), 10);
      if (den == 0) throw std::invalid_argument("zero denominator");
      Rational x(num, den);
      x.canonicalize();
      return x;
    }
    auto point = t.find('.');
    if (point != std::string::npos) {
      std::string head = t.substr(0, point), tail = t.substr(point + 1);
      if (head.empty() || head == "-" || head == "+") head += '0';
      Integer num(head + tail, 10);
      Rational x(num, pow10(static_cast<int>(tail.size())));
      x.canonicalize();
      return x;
    }
    return Rational(Integer(t, 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
  }
}

RatVec parse_rational_vector(const std::string& s) {
  RatVec out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(parse_rational(tok));
  return out;
}

}  // namespace cgiter
