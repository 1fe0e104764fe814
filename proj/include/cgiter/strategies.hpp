#pragma once

#include <optional>
#include <string>

#include "cgiter/cuts.hpp"
#include "cgiter/interval.hpp"
#include "cgiter/rational.hpp"

namespace cgiter {

enum class StrategyId { S0 = 0, S1, S2, S3, S4, S5, ApproxMult, ApproxAdd };

std::string strategy_name(StrategyId id);

// Outcome of an iterate-selection rule on an augmented vector nu in standard
// form p/q: the chosen t, the point xi = t nu mod 1, its rounding effect
// (last entry of xi) and the squared quality measures.
struct StrategyChoice {
  StrategyId id = StrategyId::S0;
  Integer t;
  RatVec xi;
  Rational rounding;
  std::optional<Rational> r_sq;  // present iff rounding > 0
  Rational n_sq;
  bool approx = false;
  bool trivial = false;  // rounding == 0 (possible for the approximate rules)
};

// Squared N(x) = ||(x_1, ..., x_{d-1}, 1 - x_d)||^2.  Requires dim >= 2.
Rational n_of(const RatVec& xi);

// Squared ratio ||pi_d(xi)||^2 / xi_d^2.  Throws std::domain_error when the
// last entry is zero.
Rational r_of(const RatVec& xi);

// Default ceiling for the exact enumeration over t = 1..q-1.
inline const Integer kEnumerationGuard = Integer(10000000);

// Strategies 0..3: t = 1; Gomory's multiply-up rule; the negation rule
// (t = q-1); and the rounding-effect maximizer (lowest t on ties).  The
// multiply-up and negation rules strengthen when nu < 1/2 and fall back to
// t = 1 otherwise.  All require nu > 0.
StrategyChoice strategy_basic(int kind, const NuForm& nu);
StrategyChoice strategy_basic(int kind, const CgCut& cg);

// Exact minimizer of ||t nu mod 1|| / {t nu} over t with {t nu} > 0, by full
// enumeration; lowest t on ties.  Throws CapabilityError beyond the guard.
StrategyChoice strategy_mult_exact(const NuForm& nu, const Integer& guard = kEnumerationGuard);
StrategyChoice strategy_mult_exact(const CgCut& cg, const Integer& guard = kEnumerationGuard);

// Exact minimizer of N(t nu mod 1) over t with {t nu} > 0.
StrategyChoice strategy_add_exact(const NuForm& nu, const Integer& guard = kEnumerationGuard);
StrategyChoice strategy_add_exact(const CgCut& cg, const Integer& guard = kEnumerationGuard);

// Closed-form ball geometry: a(d, R) and the squared maximum ratio r(d, R)^2
// over B^d(c(R), R), as certified intervals (exact whenever the square roots
// involved are rational).  finite is false for R >= 1/2, where r = +infinity.
struct GeomBound {
  int d = 0;
  Interval R;
  bool finite = false;
  Interval a;
  Interval r_sq;
};

GeomBound geom_r(int d, const Rational& R, unsigned bits = kDefaultRootBits);
GeomBound geom_r(int d, const Interval& R, unsigned bits = kDefaultRootBits);

// Binary-search + nearest-plane point location: returns xi in L_nu with
// xi in S = [0, inf)^{d-1} x (-inf, 1) and xi in B(c(r_plus), 2^{d/2} tau),
// where 0 < r_plus <= 2^{d/2} tau(L_nu) + eps.
struct ApproxPoint {
  RatVec xi;
  Rational r_plus;
};

ApproxPoint approx_point(const NuForm& nu, const Rational& eps);

// Polynomial-time approximations for the two optimization strategies.  The
// multiplicative one returns the better of the located point and the
// multiply-up fallback iterate; the additive one runs the point location
// with eps = delta / ceil(sqrt(d)) and reduces mod 1 (flagged trivial when
// the rounding effect vanishes).
StrategyChoice approx_mult(const NuForm& nu, const Rational& eps);
StrategyChoice approx_add(const NuForm& nu, const Rational& delta);

// Index of an iterate: the unique t in 0..q-1 with xi = t nu (mod Z^d),
// via congruences t p_i = xi_i q (mod q) merged across coordinates.
// Throws std::domain_error when xi is not in L_nu.
Integer recover_t(const RatVec& xi, const NuForm& nu);

// Runs one strategy on a CG-cut and materializes the resulting iterated cut.
// A trivial approximate outcome (t = 0) carries no cut.
struct StrategyResult {
  StrategyChoice choice;
  std::optional<IteratedCut> cut;
};

struct StrategyParams {
  Rational eps = Rational(1, 64);    // approx-mult tolerance
  Rational delta = Rational(1, 64);  // approx-add tolerance
  Integer guard = kEnumerationGuard;
};

StrategyResult apply_strategy(const IlpInstance& inst, const CgCut& cg, StrategyId id,
                              const StrategyParams& params = {});

}  // namespace cgiter
