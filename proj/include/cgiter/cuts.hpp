#pragma once

#include "cgiter/lp.hpp"
#include "cgiter/rational.hpp"

namespace cgiter {

// Gomory fractional cut sum_j frac_coeffs[j] * x_j >= rhs read off one
// tableau row with fractional right-hand side.  Coefficients are dense over
// all n+m variables; basic positions are zero.
struct GfCut {
  RatVec frac_coeffs;
  Rational rhs;        // frac(x_k*), in (0, 1)
  int source_row = -1; // basic variable index k
};

// Chvatal-Gomory cut floor(lambda^T A) x <= floor(lambda^T b) together with
// the multiplier data needed for iteration.  lambda and nu share the single
// common denominator q of the augmented vector (lambda_1,...,lambda_m, nu),
// stored jointly coprime.
struct CgCut {
  RatVec lambda;  // length m, entries in [0, 1)
  IntVec p;       // lambda_i = p[i] / q
  Integer p_nu;   // nu = p_nu / q
  Integer q;
  Rational nu;    // frac(lambda^T b); the cut is nontrivial iff nu > 0
  IntVec pi;      // length n
  Integer pi0;

  int dim() const { return static_cast<int>(lambda.size()) + 1; }
  RatVec augmented() const;  // (lambda_1, ..., lambda_m, nu)
  NuForm nu_form() const;    // augmented vector in standard form
};

// Iterate t of a CG-cut: multiplier mu = (t lambda) mod 1, rounding effect
// {t nu}, and the floored integral inequality pi^T x <= pi0.
struct IteratedCut {
  Integer t;
  RatVec mu;
  Rational rounding;
  IntVec pi;
  Integer pi0;

  bool trivial() const { return rounding == 0; }
};

// Reads the GF-cut off a tableau row.  Throws std::domain_error when the
// right-hand side is integral (no cut) or when every coefficient is integral
// while the right-hand side is not (such a row certifies that the problem
// has no integer solution and must be rejected upstream).
GfCut gf_from_row(const TableauRow& row, int n, int m);

// Converts a GF-cut to a CG-cut by eliminating slacks: lambda_j is the
// fractional part of the slack-column coefficient of the source row.
CgCut cg_from_gf(const GfCut& gf, const LpSolution& sol, const IlpInstance& inst);

// Builds iterate t (any integer; reduced mod q, t = -1 maps to q-1).
// Throws std::domain_error when t is congruent to 0 mod q.
IteratedCut iterate_cut(const IlpInstance& inst, const CgCut& cg, Integer t);

}  // namespace cgiter
