#include "cgiter/strategies.hpp"

#include <stdexcept>

#include "cgiter/errors.hpp"
#include "cgiter/lattice.hpp"

namespace cgiter {

std::string strategy_name(StrategyId id) {
  switch (id) {
    case StrategyId::S0: return "0";
    case StrategyId::S1: return "1";
    case StrategyId::S2: return "2";
    case StrategyId::S3: return "3";
    case StrategyId::S4: return "4";
    case StrategyId::S5: return "5";
    case StrategyId::ApproxMult: return "approx-mult";
    case StrategyId::ApproxAdd: return "approx-add";
  }
  return "?";
}

Rational n_of(const RatVec& xi) {
  const size_t d = xi.size();
  if (d < 2) throw std::invalid_argument("n_of: dimension must be at least 2");
  Rational s = 0;
  for (size_t i = 0; i + 1 < d; ++i) s += xi[i] * xi[i];
  Rational last = 1 - xi[d - 1];
  return s + last * last;
}

Rational r_of(const RatVec& xi) {
  const size_t d = xi.size();
  if (d < 1) throw std::invalid_argument("r_of: empty vector");
  if (xi[d - 1] == 0) throw std::domain_error("r_of: last entry is zero, ratio undefined");
  Rational s = 0;
  for (size_t i = 0; i + 1 < d; ++i) s += xi[i] * xi[i];
  return s / (xi[d - 1] * xi[d - 1]);
}

namespace {

// Fills the measure fields of a choice from t and nu.
StrategyChoice make_choice(StrategyId id, const NuForm& nu, Integer t, bool approx) {
  StrategyChoice c;
  c.id = id;
  c.approx = approx;
  Integer tr;
  mpz_fdiv_r(tr.get_mpz_t(), t.get_mpz_t(), nu.q.get_mpz_t());
  c.t = tr;
  const int d = nu.dim();
  c.xi.assign(static_cast<size_t>(d), Rational(0));
  for (int i = 0; i < d; ++i) {
    Integer r = (tr * nu.p[static_cast<size_t>(i)]) % nu.q;
    Rational x(r, nu.q);
    x.canonicalize();
    c.xi[static_cast<size_t>(i)] = x;
  }
  c.rounding = c.xi[static_cast<size_t>(d - 1)];
  c.trivial = (c.rounding == 0);
  if (!c.trivial) c.r_sq = r_of(c.xi);
  c.n_sq = n_of(c.xi);
  return c;
}

void require_nontrivial(const NuForm& nu) {
  if (nu.dim() < 2) throw std::invalid_argument("strategy: augmented vector must have dimension >= 2");
  if (nu.p.back() == 0) throw std::domain_error("strategy: trivial cut (rounding effect nu = 0)");
}

// Largest positive integer t with t * (pd/q) < 1.
Integer multiply_up_t(const Integer& pd, const Integer& q) {
  Integer t;
  mpz_cdiv_q(t.get_mpz_t(), q.get_mpz_t(), pd.get_mpz_t());
  return t - 1;
}

}  // namespace

StrategyChoice strategy_basic(int kind, const NuForm& nu) {
  require_nontrivial(nu);
  const Integer& q = nu.q;
  const Integer& pd = nu.p.back();
  Integer t;
  switch (kind) {
    case 0:
      t = 1;
      break;
    case 1:
      t = (2 * pd >= q) ? Integer(1) : multiply_up_t(pd, q);
      break;
    case 2:
      t = (2 * pd >= q) ? Integer(1) : q - 1;
      break;
    case 3: {
      // max {t nu} = (q - g)/q with g = gcd(pd, q); the lowest attaining t
      // solves t pd = q - g (mod q).
      Integer g;
      mpz_gcd(g.get_mpz_t(), pd.get_mpz_t(), q.get_mpz_t());
      Integer qg = q / g, pg = pd / g, target = (q - g) / g;
      Integer inv;
      if (mpz_invert(inv.get_mpz_t(), pg.get_mpz_t(), qg.get_mpz_t()) == 0)
        throw std::logic_error("strategy_basic: inverse must exist");
      t = (target * inv) % qg;
      break;
    }
    default:
      throw std::invalid_argument("strategy_basic: kind must be 0..3");
  }
  return make_choice(static_cast<StrategyId>(kind), nu, std::move(t), false);
}

StrategyChoice strategy_basic(int kind, const CgCut& cg) { return strategy_basic(kind, cg.nu_form()); }

namespace {

// Fast-path limits for the exact enumerations: running sums fit in uint64
// and cross-multiplied ratio comparisons fit in unsigned __int128.
constexpr unsigned long long kFastPathMaxQ = 100000000ULL;  // 1e8
constexpr int kFastPathMaxDim = 64;

struct ScanResult {
  unsigned long long t = 0;
  unsigned long long num = 0;  // projection norm (mult) or N numerator (add)
  unsigned long long den = 0;  // {t nu} numerator (mult only)
  bool found = false;
};

template <bool kAdditive>
ScanResult scan_exact(const NuForm& nu) {
  const size_t d = static_cast<size_t>(nu.dim());
  const unsigned long long q = nu.q.get_ui();
  std::vector<unsigned long long> p(d), cur(d, 0);
  for (size_t i = 0; i < d; ++i) p[i] = nu.p[i].get_ui();
  ScanResult best;
  for (unsigned long long t = 1; t < q; ++t) {
    for (size_t i = 0; i < d; ++i) {
      cur[i] += p[i];
      if (cur[i] >= q) cur[i] -= q;
    }
    const unsigned long long last = cur[d - 1];
    if (last == 0) continue;
    unsigned long long proj = 0;
    for (size_t i = 0; i + 1 < d; ++i) proj += cur[i] * cur[i];
    if (kAdditive) {
      unsigned long long val = proj + (q - last) * (q - last);
      if (!best.found || val < best.num) {
        best = {t, val, q, true};
      }
    } else {
      // minimize proj / last^2
      using U128 = unsigned __int128;
      if (!best.found ||
          U128(proj) * (U128(best.den) * best.den) < U128(best.num) * (U128(last) * last)) {
        best = {t, proj, last, true};
      }
    }
  }
  return best;
}

void check_enumeration_guard(const NuForm& nu, const Integer& guard) {
  if (nu.q > guard)
    throw CapabilityError("exact strategy: q = " + nu.q.get_str() + " exceeds the enumeration guard " +
                          guard.get_str() + "; use the approximation algorithm");
  if (nu.q > Integer(static_cast<unsigned long>(kFastPathMaxQ)) || nu.dim() > kFastPathMaxDim)
    throw CapabilityError("exact strategy: q or dimension exceeds the enumeration fast-path limits");
}

}  // namespace

StrategyChoice strategy_mult_exact(const NuForm& nu, const Integer& guard) {
  require_nontrivial(nu);
  check_enumeration_guard(nu, guard);
  ScanResult best = scan_exact<false>(nu);
  if (!best.found) throw std::logic_error("strategy_mult_exact: no iterate with positive rounding");
  return make_choice(StrategyId::S4, nu, Integer(static_cast<unsigned long>(best.t)), false);
}

StrategyChoice strategy_mult_exact(const CgCut& cg, const Integer& guard) {
  return strategy_mult_exact(cg.nu_form(), guard);
}

StrategyChoice strategy_add_exact(const NuForm& nu, const Integer& guard) {
  require_nontrivial(nu);
  check_enumeration_guard(nu, guard);
  ScanResult best = scan_exact<true>(nu);
  if (!best.found) throw std::logic_error("strategy_add_exact: no iterate with positive rounding");
  return make_choice(StrategyId::S5, nu, Integer(static_cast<unsigned long>(best.t)), false);
}

StrategyChoice strategy_add_exact(const CgCut& cg, const Integer& guard) {
  return strategy_add_exact(cg.nu_form(), guard);
}

GeomBound geom_r(int d, const Rational& R, unsigned bits) { return geom_r(d, Interval::exact(R), bits); }

GeomBound geom_r(int d, const Interval& R, unsigned bits) {
  if (d < 2) throw std::invalid_argument("geom_r: d must be at least 2");
  if (R.lo <= 0) throw std::domain_error("geom_r: R must be positive");
  GeomBound out;
  out.d = d;
  out.R = R;
  if (R.hi >= Rational(1, 2)) {
    out.finite = false;  // r(d, R) = +infinity for R >= 1/2
    return out;
  }
  const Interval one = Interval::exact(Rational(1));
  Interval r2 = R * R;
  // (d-1) R^2 - 2R + 1 and d R^2 - 2R + 1 are both positive on (0, 1/2).
  Interval disc = Rational(d - 1) * r2 - Rational(2) * R + one;
  if (disc.lo < 0) disc.lo = 0;
  Interval den = Rational(d) * r2 - Rational(2) * R + one;
  Interval num = (one - R) * sqrt_iv(disc, bits) - sqrt_of_int(Integer(d - 1), bits) * r2;
  out.a = num / den;
  if (out.a.lo <= 0) {
    // Cannot certify a > 0 at this precision; report the unbounded branch.
    out.finite = false;
    return out;
  }
  out.finite = true;
  out.r_sq = one / (out.a * out.a) - one;
  if (out.r_sq.lo < 0) out.r_sq.lo = 0;
  return out;
}

ApproxPoint approx_point(const NuForm& nu, const Rational& eps) {
  const int d = nu.dim();
  if (d < 2) throw std::invalid_argument("approx_point: dimension must be at least 2");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("approx_point: eps must lie in (0, 1)");
  LatticeBasis basis = lll_reduce(basis_from_nu(nu));
  auto corner = [d](const Rational& r) {
    RatVec c(static_cast<size_t>(d), r);
    c[static_cast<size_t>(d - 1)] = 1 - r;
    return c;
  };
  auto in_s = [d](const RatVec& x) {
    for (int i = 0; i + 1 < d; ++i)
      if (x[static_cast<size_t>(i)] < 0) return false;
    return x[static_cast<size_t>(d - 1)] < 1;
  };
  Rational r_minus(0), r_plus(1);
  RatVec xi = corner(Rational(1));  // (1,...,1,0), always in L and in S
  while (r_plus - r_minus > eps) {
    Rational mid = (r_minus + r_plus) / 2;
    RatVec chi = babai_nearest_plane(basis, corner(mid));
    if (in_s(chi)) {
      r_plus = mid;
      xi = std::move(chi);
    } else {
      r_minus = mid;
    }
  }
  return ApproxPoint{std::move(xi), std::move(r_plus)};
}

StrategyChoice approx_mult(const NuForm& nu, const Rational& eps) {
  require_nontrivial(nu);
  ApproxPoint ap = approx_point(nu, eps);
  // Fallback iterate from the multiply-up argument: guarantees {t0 nu} >= 1/2.
  const Integer& q = nu.q;
  const Integer& pd = nu.p.back();
  Integer t0;
  if (2 * pd >= q) {
    t0 = 1;
  } else {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_mpz_t(), pd.get_mpz_t());
    t0 = (f * pd == q) ? f - 1 : f;
  }
  StrategyChoice fallback = make_choice(StrategyId::ApproxMult, nu, std::move(t0), true);
  RatVec reduced = mod1(ap.xi);
  if (reduced[static_cast<size_t>(nu.dim() - 1)] > 0) {
    Integer t = recover_t(reduced, nu);
    if (t != 0) {
      StrategyChoice located = make_choice(StrategyId::ApproxMult, nu, std::move(t), true);
      if (located.r_sq && fallback.r_sq && *located.r_sq < *fallback.r_sq) return located;
    }
  }
  return fallback;
}

StrategyChoice approx_add(const NuForm& nu, const Rational& delta) {
  if (nu.dim() < 2) throw std::invalid_argument("approx_add: dimension must be at least 2");
  if (delta <= 0 || delta >= 1) throw std::invalid_argument("approx_add: delta must lie in (0, 1)");
  if (nu.q == 1) {
    // Degenerate integral vector: every iterate is trivial.
    StrategyChoice c = make_choice(StrategyId::ApproxAdd, nu, Integer(0), true);
    c.trivial = true;
    return c;
  }
  Rational eps = delta / Rational(ceil_sqrt(Integer(nu.dim())));
  ApproxPoint ap = approx_point(nu, eps);
  RatVec reduced = mod1(ap.xi);
  Integer t = recover_t(reduced, nu);
  return make_choice(StrategyId::ApproxAdd, nu, std::move(t), true);
}

Integer recover_t(const RatVec& xi, const NuForm& nu) {
  const int d = nu.dim();
  if (static_cast<int>(xi.size()) != d) throw std::invalid_argument("recover_t: dimension mismatch");
  const Integer& q = nu.q;
  // Merge congruences t p_i = c_i (mod q) by CRT; gcd(p_1,...,p_d,q) = 1
  // makes the combined modulus exactly q.
  Integer r(0), mod(1);
  for (int i = 0; i < d; ++i) {
    Rational scaled = frac(xi[static_cast<size_t>(i)]) * Rational(q);
    if (scaled.get_den() != 1)
      throw std::domain_error("recover_t: point is not in L_nu (coordinates not multiples of 1/q)");
    Integer ci = scaled.get_num();
    const Integer& pi = nu.p[static_cast<size_t>(i)];
    Integer g;
    mpz_gcd(g.get_mpz_t(), pi.get_mpz_t(), q.get_mpz_t());
    if (ci % g != 0) throw std::domain_error("recover_t: point is not in L_nu (congruence unsolvable)");
    Integer qi = q / g;
    if (qi == 1) continue;
    Integer inv;
    if (mpz_invert(inv.get_mpz_t(), Integer(pi / g).get_mpz_t(), qi.get_mpz_t()) == 0)
      throw std::logic_error("recover_t: inverse must exist");
    Integer ti = ((ci / g) % qi * inv) % qi;
    // Combine t = r (mod mod) with t = ti (mod qi).
    Integer g2;
    mpz_gcd(g2.get_mpz_t(), mod.get_mpz_t(), qi.get_mpz_t());
    if ((r - ti) % g2 != 0) throw std::domain_error("recover_t: inconsistent congruences, point not in L_nu");
    Integer lcm = mod / g2 * qi;
    Integer qig = qi / g2;
    if (qig != 1) {
      Integer inv2;
      if (mpz_invert(inv2.get_mpz_t(), Integer(mod / g2).get_mpz_t(), qig.get_mpz_t()) == 0)
        throw std::logic_error("recover_t: CRT inverse must exist");
      Integer k = (((ti - r) / g2) % qig * inv2) % qig;
      if (k < 0) k += qig;
      r = r + mod * k;
    }
    mod = lcm;
    r %= mod;
    if (r < 0) r += mod;
  }
  if (mod != q) throw std::logic_error("recover_t: standard form must pin t uniquely");
  return r;
}

StrategyResult apply_strategy(const IlpInstance& inst, const CgCut& cg, StrategyId id,
                              const StrategyParams& params) {
  StrategyChoice choice;
  switch (id) {
    case StrategyId::S0:
    case StrategyId::S1:
    case StrategyId::S2:
    case StrategyId::S3:
      choice = strategy_basic(static_cast<int>(id), cg.nu_form());
      break;
    case StrategyId::S4:
      choice = strategy_mult_exact(cg.nu_form(), params.guard);
      break;
    case StrategyId::S5:
      choice = strategy_add_exact(cg.nu_form(), params.guard);
      break;
    case StrategyId::ApproxMult:
      choice = approx_mult(cg.nu_form(), params.eps);
      break;
    case StrategyId::ApproxAdd:
      choice = approx_add(cg.nu_form(), params.delta);
      break;
  }
  StrategyResult out;
  if (choice.t != 0) out.cut = iterate_cut(inst, cg, choice.t);
  out.choice = std::move(choice);
  return out;
}

}  // namespace cgiter
