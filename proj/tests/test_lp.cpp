#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

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

ExperimentConfig default_cfg() { return ExperimentConfig{}; }

}  // namespace

TEST_CASE("solve_lp one-dimensional") {
  LpSolution sol = solve_lp(kOneDim);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == q(3, 2));
  CHECK(sol.x == RatVec{q(3, 2)});
  CHECK(sol.basis_det == 2);
  CHECK(sol.basis == std::vector<int>{0});
}

TEST_CASE("solve_lp simplex vertex") {
  IlpInstance inst = make(2, 1, {Integer(1), Integer(1)}, {{Integer(1), Integer(1)}}, {Integer(1)});
  LpSolution sol = solve_lp(inst);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == 1);
  CHECK(sol.x[0] + sol.x[1] == 1);
}

TEST_CASE("generated instances have nonnegative optimum and exact optimality") {
  ExperimentConfig cfg = default_cfg();
  SplitMix64 seeder(5);
  for (int trial = 0; trial < 20; ++trial) {
    IlpInstance inst = gen_instance(4, 6, cfg, seeder.next());
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective >= 0);  // the origin is feasible
    // primal feasibility, exactly
    for (int i = 0; i < inst.m; ++i) {
      Rational lhs = 0;
      for (int j = 0; j < inst.n; ++j)
        lhs += Rational(inst.a[static_cast<size_t>(i)][static_cast<size_t>(j)]) * sol.x[static_cast<size_t>(j)];
      CHECK(lhs <= Rational(inst.b[static_cast<size_t>(i)]));
    }
    for (const Rational& xj : sol.x) CHECK(xj >= 0);
    // dual feasibility: reduced costs of a maximum are nonpositive,
    // c_j - sum_i c_{B(i)} T[i][j] <= 0, recomputed from the tableau.
    RatVec cost(static_cast<size_t>(inst.n + inst.m), Rational(0));
    for (int j = 0; j < inst.n; ++j) cost[static_cast<size_t>(j)] = Rational(inst.c[static_cast<size_t>(j)]);
    for (int j = 0; j < inst.n + inst.m; ++j) {
      Rational reduced = cost[static_cast<size_t>(j)];
      for (int i = 0; i < inst.m; ++i)
        reduced -= cost[static_cast<size_t>(sol.basis[static_cast<size_t>(i)])] *
                   sol.tableau[static_cast<size_t>(i)][static_cast<size_t>(j)];
      CHECK(reduced <= 0);
    }
    // objective equals c^T x exactly
    Rational obj = 0;
    for (int j = 0; j < inst.n; ++j) obj += Rational(inst.c[static_cast<size_t>(j)]) * sol.x[static_cast<size_t>(j)];
    CHECK(obj == sol.objective);
  }
}

TEST_CASE("solve_lp infeasible and unbounded detection") {
  // x1 <= -1 with x1 >= 0 is infeasible
  IlpInstance bad = make(1, 1, {Integer(1)}, {{Integer(1)}}, {Integer(-1)});
  CHECK(solve_lp(bad).status == SolveStatus::Infeasible);
  // maximize x1 with a vacuous row is unbounded
  IlpInstance unb = make(2, 1, {Integer(1), Integer(0)}, {{Integer(0), Integer(1)}}, {Integer(5)});
  CHECK(solve_lp(unb).status == SolveStatus::Unbounded);
}

TEST_CASE("tableau_row identity basis") {
  // c <= 0 keeps the slack basis optimal, so rows read off A and b directly.
  IlpInstance inst = make(2, 2, {Integer(-1), Integer(-2)},
                          {{Integer(3), Integer(1)}, {Integer(2), Integer(5)}}, {Integer(7), Integer(9)});
  LpSolution sol = solve_lp(inst);
  REQUIRE(sol.status == SolveStatus::Optimal);
  for (int i = 0; i < 2; ++i) {
    REQUIRE(sol.basis[static_cast<size_t>(i)] == inst.n + i);
    TableauRow row = tableau_row(sol, inst.n + i);
    CHECK(row.rhs == Rational(inst.b[static_cast<size_t>(i)]));
    for (int j = 0; j < inst.n; ++j)
      CHECK(row.coeffs[static_cast<size_t>(j)] == Rational(inst.a[static_cast<size_t>(i)][static_cast<size_t>(j)]));
  }
}

TEST_CASE("tableau_row hand pivot of the 1-D system") {
  LpSolution sol = solve_lp(kOneDim);
  TableauRow row = tableau_row(sol, 0);
  CHECK(row.basic_index == 0);
  CHECK(row.rhs == q(3, 2));
  CHECK(row.coeffs[0] == 0);        // basic position
  CHECK(row.coeffs[1] == q(1, 2));  // slack coefficient
  CHECK_THROWS_AS(tableau_row(sol, 1), std::invalid_argument);
}

TEST_CASE("tableau_row identity holds on random feasible points") {
  ExperimentConfig cfg = default_cfg();
  SplitMix64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    IlpInstance inst = gen_instance(3, 5, cfg, rng.next());
    LpSolution sol = solve_lp(inst);
    REQUIRE(sol.status == SolveStatus::Optimal);
    IntVec bounds = testing::column_bounds(inst);
    for (int sample = 0; sample < 20; ++sample) {
      // random box point, kept only if feasible
      IntVec x(static_cast<size_t>(inst.n));
      for (int j = 0; j < inst.n; ++j)
        x[static_cast<size_t>(j)] = Integer(rng.next_in(0, bounds[static_cast<size_t>(j)].get_si()));
      RatVec aug(static_cast<size_t>(inst.n + inst.m), Rational(0));
      bool feasible = true;
      for (int j = 0; j < inst.n; ++j) aug[static_cast<size_t>(j)] = Rational(x[static_cast<size_t>(j)]);
      for (int i = 0; i < inst.m; ++i) {
        Rational s = Rational(inst.b[static_cast<size_t>(i)]);
        for (int j = 0; j < inst.n; ++j)
          s -= Rational(inst.a[static_cast<size_t>(i)][static_cast<size_t>(j)]) * aug[static_cast<size_t>(j)];
        if (s < 0) feasible = false;
        aug[static_cast<size_t>(inst.n + i)] = s;
      }
      if (!feasible) continue;
      for (int i = 0; i < inst.m; ++i) {
        TableauRow row = tableau_row(sol, sol.basis[static_cast<size_t>(i)]);
        Rational lhs = aug[static_cast<size_t>(row.basic_index)];
        for (int j = 0; j < inst.n + inst.m; ++j) lhs += row.coeffs[static_cast<size_t>(j)] * aug[static_cast<size_t>(j)];
        CHECK(lhs == row.rhs);
      }
    }
  }
}

TEST_CASE("solve_ilp examples") {
  IlpResult r = solve_ilp(kOneDim);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(r.objective == 1);
  CHECK(r.x == IntVec{Integer(1)});

  // LP optimum already integral
  IlpInstance integral = make(1, 1, {Integer(1)}, {{Integer(1)}}, {Integer(4)});
  CHECK(solve_lp(integral).objective == solve_ilp(integral).objective);

  IlpInstance two = make(2, 1, {Integer(1), Integer(1)}, {{Integer(2), Integer(2)}}, {Integer(3)});
  CHECK(solve_ilp(two).objective == 1);
}

TEST_CASE("solve_ilp with negative rhs exercises phase 1") {
  // x1 >= 2 encoded as -x1 <= -2, plus 2 x1 <= 7: optimum x1 = 3 for max x1.
  IlpInstance inst = make(1, 2, {Integer(1)}, {{Integer(-1)}, {Integer(2)}}, {Integer(-2), Integer(7)});
  LpSolution lp = solve_lp(inst);
  REQUIRE(lp.status == SolveStatus::Optimal);
  CHECK(lp.objective == q(7, 2));
  IlpResult r = solve_ilp(inst);
  CHECK(r.objective == 3);
  // and infeasible integer band: 3 < 2 x1 < 4
  IlpInstance band = make(1, 2, {Integer(1)}, {{Integer(-2)}, {Integer(2)}}, {Integer(-4), Integer(3)});
  CHECK(solve_lp(band).status == SolveStatus::Infeasible);
}

TEST_CASE("solve_ilp matches exhaustive enumeration") {
  ExperimentConfig cfg = default_cfg();
  SplitMix64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    int m = static_cast<int>(rng.next_in(2, 4));
    int n = static_cast<int>(rng.next_in(2, 6));
    IlpInstance inst = gen_instance(m, n, cfg, rng.next());
    IlpResult fast = solve_ilp(inst);
    REQUIRE(fast.status == SolveStatus::Optimal);
    CHECK(fast.objective == testing::best_objective_brute(inst));
    CHECK(fast.objective <= solve_lp(inst).objective);
  }
}

TEST_CASE("resolve_with_cut") {
  // cut satisfied by x*: objective unchanged
  CHECK(resolve_with_cut(kOneDim, {Integer(1)}, Integer(2)) == q(3, 2));
  // rounded cut x1 <= 1
  CHECK(resolve_with_cut(kOneDim, {Integer(1)}, Integer(1)) == 1);
  // trivial cut 0^T x <= 0
  CHECK(resolve_with_cut(kOneDim, {Integer(0)}, Integer(0)) == q(3, 2));
  // a cut that empties the region signals an upstream bug
  CHECK_THROWS_AS(resolve_with_cut(kOneDim, {Integer(1)}, Integer(-1)), std::domain_error);
}

TEST_CASE("solver determinism") {
  ExperimentConfig cfg = default_cfg();
  IlpInstance inst = gen_instance(4, 7, cfg, 12345);
  LpSolution a = solve_lp(inst), b = solve_lp(inst);
  CHECK(a.basis == b.basis);
  CHECK(a.x == b.x);
  CHECK(a.basis_det == b.basis_det);
  IlpResult ia = solve_ilp(inst), ib = solve_ilp(inst);
  CHECK(ia.objective == ib.objective);
  CHECK(ia.x == ib.x);
}
