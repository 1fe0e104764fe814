#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cgiter/cuts.hpp"
#include "cgiter/experiments.hpp"
#include "cgiter/lp.hpp"
#include "cgiter/rng.hpp"
#include "oracles.hpp"

using namespace cgiter;

namespace {

Rational q(long num, long den = 1) {
  Rational x(num, den);
  x.canonicalize();
  return x;
}

IlpInstance make(int n, int m, IntVec c, IntMat a, IntVec b) {
  IlpInstance inst;
  inst.n = n;
  inst.m = m;
  inst.c = std::move(c);
  inst.a = std::move(a);
  inst.b = std::move(b);
  return inst;
}

const IlpInstance kOneDim = make(1, 1, {Integer(1)}, {{Integer(2)}}, {Integer(3)});

// Collects the CG cut of every fractional basic variable.
std::vector<CgCut> all_cg_cuts(const IlpInstance& inst, const LpSolution& sol) {
  std::vector<CgCut> cuts;
  for (int i = 0; i < inst.m; ++i) {
    if (frac(sol.rhs[static_cast<size_t>(i)]) == 0) continue;
    TableauRow row = tableau_row(sol, sol.basis[static_cast<size_t>(i)]);
    cuts.push_back(cg_from_gf(gf_from_row(row, inst.n, inst.m), sol, inst));
  }
  return cuts;
}

}  // namespace

TEST_CASE("gf_from_row on the 1-D instance") {
  LpSolution sol = solve_lp(kOneDim);
  TableauRow row = tableau_row(sol, 0);
  GfCut gf = gf_from_row(row, 1, 1);
  CHECK(gf.rhs == q(1, 2));
  CHECK(gf.frac_coeffs == RatVec{q(0), q(1, 2)});
  CHECK(gf.source_row == 0);
}

TEST_CASE("gf_from_row error paths") {
  TableauRow integral;
  integral.basic_index = 0;
  integral.coeffs = {q(0), q(1, 2)};
  integral.rhs = q(2);
  CHECK_THROWS_AS(gf_from_row(integral, 1, 1), std::domain_error);

  TableauRow degenerate;
  degenerate.basic_index = 0;
  degenerate.coeffs = {q(0), q(3)};  // all integral
  degenerate.rhs = q(1, 2);
  CHECK_THROWS_AS(gf_from_row(degenerate, 1, 1), std::domain_error);
}

TEST_CASE("gf_from_row componentwise fractional parts") {
  TableauRow row;
  row.basic_index = 1;
  row.coeffs = {q(0), q(3, 4), q(1, 3)};
  row.rhs = q(7, 3);
  GfCut gf = gf_from_row(row, 2, 1);
  CHECK(gf.frac_coeffs == RatVec{q(0), q(3, 4), q(1, 3)});
  CHECK(gf.rhs == q(1, 3));
}

TEST_CASE("cg_from_gf hand elimination on the 1-D instance") {
  LpSolution sol = solve_lp(kOneDim);
  GfCut gf = gf_from_row(tableau_row(sol, 0), 1, 1);
  CgCut cg = cg_from_gf(gf, sol, kOneDim);
  CHECK(cg.lambda == RatVec{q(1, 2)});
  CHECK(cg.nu == q(1, 2));
  CHECK(cg.pi == IntVec{Integer(1)});  // floor(1/2 * 2) = 1
  CHECK(cg.pi0 == 1);                  // floor(3/2)
  CHECK(cg.q == 2);
  CHECK(cg.p == IntVec{Integer(1)});
  CHECK(cg.p_nu == 1);
  CHECK(cg.augmented() == RatVec{q(1, 2), q(1, 2)});
}

TEST_CASE("cg_from_gf flags a trivial cut when lambda^T b is integral") {
  LpSolution sol = solve_lp(kOneDim);
  GfCut synthetic;
  synthetic.source_row = 0;
  synthetic.frac_coeffs = {q(0), q(1, 3)};  // lambda = 1/3, lambda^T b = 1
  synthetic.rhs = q(1, 3);
  CgCut cg = cg_from_gf(synthetic, sol, kOneDim);
  CHECK(cg.nu == 0);  // flagged trivial, not an error
  CHECK(cg.pi == IntVec{Integer(0)});
  CHECK(cg.pi0 == 1);
}

TEST_CASE("cg_from_gf rejects the all-zero multiplier") {
  LpSolution sol = solve_lp(kOneDim);
  GfCut zero;
  zero.source_row = 0;
  zero.frac_coeffs = {q(1, 2), q(0)};  // no slack support: lambda = 0
  zero.rhs = q(1, 2);
  CHECK_THROWS_AS(cg_from_gf(zero, sol, kOneDim), std::domain_error);
}

TEST_CASE("iterate_cut identities") {
  LpSolution sol = solve_lp(kOneDim);
  CgCut cg = cg_from_gf(gf_from_row(tableau_row(sol, 0), 1, 1), sol, kOneDim);
  IteratedCut t1 = iterate_cut(kOneDim, cg, Integer(1));
  CHECK(t1.mu == cg.lambda);
  CHECK(t1.rounding == cg.nu);
  CHECK_THROWS_AS(iterate_cut(kOneDim, cg, Integer(0)), std::domain_error);
  CHECK_THROWS_AS(iterate_cut(kOneDim, cg, cg.q), std::domain_error);
}

TEST_CASE("iterate_cut fractional arithmetic") {
  // synthetic multiplier: lambda = (1/4), nu = 3/4, q = 4
  IlpInstance inst = make(1, 1, {Integer(1)}, {{Integer(1)}}, {Integer(1)});
  CgCut cg;
  cg.lambda = {q(1, 4)};
  cg.p = {Integer(1)};
  cg.p_nu = 3;
  cg.q = 4;
  cg.nu = q(3, 4);
  IteratedCut t3 = iterate_cut(inst, cg, Integer(3));
  CHECK(t3.mu == RatVec{q(3, 4)});
  CHECK(t3.rounding == q(1, 4));  // frac(9/4)

  // t = -1 canonicalizes to q-1 and mirrors the entries
  IteratedCut tm1 = iterate_cut(inst, cg, Integer(-1));
  CHECK(tm1.t == 3);
  CHECK(tm1.mu == RatVec{1 - q(1, 4)});
  CHECK(tm1.rounding == 1 - q(3, 4));
}

TEST_CASE("iterate periodicity") {
  SplitMix64 rng(301);
  ExperimentConfig cfg;
  for (int trial = 0; trial < 5; ++trial) {
    IlpInstance inst = gen_instance(3, 5, cfg, rng.next());
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    for (const CgCut& cg : all_cg_cuts(inst, sol)) {
      Integer t(static_cast<long>(1 + rng.next_below(20)));
      if (t % cg.q == 0) continue;
      IteratedCut a = iterate_cut(inst, cg, t);
      IteratedCut b = iterate_cut(inst, cg, t + cg.q);
      CHECK(a.mu == b.mu);
      CHECK(a.rounding == b.rounding);
      CHECK(a.pi == b.pi);
      CHECK(a.pi0 == b.pi0);
    }
  }
}

TEST_CASE("converted cut equals the GF cut eliminated by hand") {
  // floor(lambda^T A)_j = lambda^T A_j - frac(alpha_j) and likewise for b:
  // the slack elimination is an identity, hence domination on P.
  SplitMix64 rng(77);
  ExperimentConfig cfg;
  for (int trial = 0; trial < 8; ++trial) {
    IlpInstance inst = gen_instance(3, 4, cfg, rng.next());
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    for (int i = 0; i < inst.m; ++i) {
      if (frac(sol.rhs[static_cast<size_t>(i)]) == 0) continue;
      TableauRow row = tableau_row(sol, sol.basis[static_cast<size_t>(i)]);
      GfCut gf = gf_from_row(row, inst.n, inst.m);
      CgCut cg = cg_from_gf(gf, sol, inst);
      RatVec b_rat(inst.b.begin(), inst.b.end());
      for (int j = 0; j < inst.n; ++j) {
        Rational lam_a = 0;
        for (int r = 0; r < inst.m; ++r)
          lam_a += cg.lambda[static_cast<size_t>(r)] * Rational(inst.a[static_cast<size_t>(r)][static_cast<size_t>(j)]);
        CHECK(Rational(cg.pi[static_cast<size_t>(j)]) == lam_a - gf.frac_coeffs[static_cast<size_t>(j)]);
      }
      CHECK(Rational(cg.pi0) == dot(cg.lambda, b_rat) - gf.rhs);
      CHECK(cg.nu == gf.rhs);
    }
  }
}

TEST_CASE("slack-form violation at x_star is exactly the rounding effect") {
  SplitMix64 rng(55);
  ExperimentConfig cfg;
  for (int trial = 0; trial < 6; ++trial) {
    IlpInstance inst = gen_instance(4, 6, cfg, rng.next());
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    for (const CgCut& cg : all_cg_cuts(inst, sol)) {
      for (long t = 1; t < 8; ++t) {
        if (Integer(t) % cg.q == 0) continue;
        IteratedCut it = iterate_cut(inst, cg, Integer(t));
        Rational lhs = 0;  // mu^T (b - A x*)
        for (int r = 0; r < inst.m; ++r) {
          Rational s = Rational(inst.b[static_cast<size_t>(r)]);
          for (int j = 0; j < inst.n; ++j)
            s -= Rational(inst.a[static_cast<size_t>(r)][static_cast<size_t>(j)]) * sol.x[static_cast<size_t>(j)];
          lhs += it.mu[static_cast<size_t>(r)] * s;
        }
        CHECK(lhs == 0);  // zero slack carried to every iterate
        if (it.rounding > 0) CHECK(lhs < it.rounding);
      }
    }
  }
}

TEST_CASE("all iterated cuts are valid for every feasible integer point") {
  SplitMix64 rng(991);
  ExperimentConfig cfg;
  for (int trial = 0; trial < 5; ++trial) {
    IlpInstance inst = gen_instance(3, 5, cfg, rng.next());
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    std::vector<CgCut> cuts = all_cg_cuts(inst, sol);
    std::vector<IteratedCut> iterated;
    for (const CgCut& cg : cuts)
      for (long t = 1; t < 10; ++t) {
        if (Integer(t) % cg.q == 0) continue;
        iterated.push_back(iterate_cut(inst, cg, Integer(t)));
      }
    testing::for_each_feasible(inst, [&](const IntVec& x) {
      for (const IteratedCut& it : iterated) {
        Integer lhs(0);
        for (int j = 0; j < inst.n; ++j) lhs += it.pi[static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
        CHECK(lhs <= it.pi0);
      }
    });
  }
}

TEST_CASE("nu_form is jointly normalized") {
  SplitMix64 rng(13);
  ExperimentConfig cfg;
  IlpInstance inst = gen_instance(4, 6, cfg, rng.next());
  LpSolution sol = solve_lp(inst);
  REQUIRE(sol.status == SolveStatus::Optimal);
  for (const CgCut& cg : all_cg_cuts(inst, sol)) {
    NuForm nu = cg.nu_form();
    CHECK(nu.dim() == inst.m + 1);
    Integer g = nu.q;
    for (const Integer& pi : nu.p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), pi.get_mpz_t());
    CHECK(g == 1);
    CHECK(nu.to_vector() == cg.augmented());
  }
}
