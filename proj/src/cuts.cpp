#include "cgiter/cuts.hpp"

#include <stdexcept>

namespace cgiter {

RatVec CgCut::augmented() const {
  RatVec v = lambda;
  v.push_back(nu);
  return v;
}

NuForm CgCut::nu_form() const {
  IntVec pp = p;
  pp.push_back(p_nu);
  return NuForm::checked(pp, q);
}

GfCut gf_from_row(const TableauRow& row, int n, int m) {
  if (static_cast<int>(row.coeffs.size()) != n + m)
    throw std::invalid_argument("gf_from_row: row width mismatch");
  GfCut gf;
  gf.rhs = frac(row.rhs);
  if (gf.rhs == 0) throw std::domain_error("gf_from_row: integral right-hand side, no cut");
  gf.source_row = row.basic_index;
  gf.frac_coeffs.reserve(row.coeffs.size());
  bool any = false;
  for (const Rational& a : row.coeffs) {
    Rational f = frac(a);
    if (f != 0) any = true;
    gf.frac_coeffs.push_back(f);
  }
  if (!any)
    throw std::domain_error("gf_from_row: all coefficients integral with fractional rhs; "
                            "the instance has no integer solution");
  return gf;
}

CgCut cg_from_gf(const GfCut& gf, const LpSolution& sol, const IlpInstance& inst) {
  const int n = inst.n, m = inst.m;
  if (static_cast<int>(gf.frac_coeffs.size()) != n + m)
    throw std::invalid_argument("cg_from_gf: cut width mismatch");
  CgCut cg;
  cg.lambda.assign(m, Rational(0));
  for (int j = 0; j < m; ++j) cg.lambda[j] = gf.frac_coeffs[n + j];
  // Zero-slack assumption: lambda_j > 0 only on rows binding at x*, so
  // lambda^T (b - A x*) = 0.  Violations mean gf does not belong to sol.
  Rational slack_weight = 0;
  for (int j = 0; j < m; ++j) {
    if (cg.lambda[j] == 0) continue;
    Rational s = Rational(inst.b[j]);
    for (int col = 0; col < n; ++col) s -= Rational(inst.a[j][col]) * sol.x[col];
    slack_weight += cg.lambda[j] * s;
  }
  if (slack_weight != 0)
    throw std::logic_error("cg_from_gf: zero-slack assumption violated; cut does not match the solution");
  // nu = frac(lambda^T b); equals the GF rhs because the slack part of the
  // source row is the corresponding row of B^{-1}.
  cg.nu = frac(dot(cg.lambda, RatVec(inst.b.begin(), inst.b.end())));
  if (cg.nu == 0) {
    bool zero = true;
    for (const Rational& l : cg.lambda) zero &= (l == 0);
    if (zero) throw std::domain_error("cg_from_gf: trivial cut (lambda = 0, nu = 0)");
  }
  // Common denominator of the augmented vector, jointly coprime.
  Integer q = cg.nu.get_den();
  for (const Rational& l : cg.lambda) mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), l.get_den().get_mpz_t());
  IntVec parts;
  parts.reserve(static_cast<size_t>(m) + 1);
  for (const Rational& l : cg.lambda) parts.push_back(Integer(l.get_num() * (q / l.get_den())));
  parts.push_back(Integer(cg.nu.get_num() * (q / cg.nu.get_den())));
  auto [pn, qn] = normalize_multiplier(std::move(parts), std::move(q));
  cg.p_nu = pn.back();
  pn.pop_back();
  cg.p = std::move(pn);
  cg.q = std::move(qn);
  // Floored integral inequality floor(lambda^T A) x <= floor(lambda^T b).
  cg.pi.assign(n, Integer(0));
  for (int j = 0; j < n; ++j) {
    Rational s = 0;
    for (int i = 0; i < m; ++i) s += cg.lambda[i] * Rational(inst.a[i][j]);
    cg.pi[j] = floor_int(s);
  }
  cg.pi0 = floor_int(dot(cg.lambda, RatVec(inst.b.begin(), inst.b.end())));
  return cg;
}

IteratedCut iterate_cut(const IlpInstance& inst, const CgCut& cg, Integer t) {
  Integer tr;
  mpz_fdiv_r(tr.get_mpz_t(), t.get_mpz_t(), cg.q.get_mpz_t());
  if (tr == 0) throw std::domain_error("iterate_cut: t is congruent to 0 mod q, degenerate iterate");
  IteratedCut it;
  it.t = tr;
  it.mu.reserve(cg.lambda.size());
  for (const Rational& l : cg.lambda) it.mu.push_back(frac(Rational(tr) * l));
  it.rounding = frac(Rational(tr) * cg.nu);
  it.pi.assign(inst.n, Integer(0));
  for (int j = 0; j < inst.n; ++j) {
    Rational s = 0;
    for (int i = 0; i < inst.m; ++i) s += it.mu[i] * Rational(inst.a[i][j]);
    it.pi[j] = floor_int(s);
  }
  it.pi0 = floor_int(dot(it.mu, RatVec(inst.b.begin(), inst.b.end())));
  return it;
}

}  // namespace cgiter
