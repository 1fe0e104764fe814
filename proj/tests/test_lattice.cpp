#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cgiter/errors.hpp"
#include "cgiter/experiments.hpp"
#include "cgiter/interval.hpp"
#include "cgiter/lattice.hpp"
#include "cgiter/rng.hpp"
#include "cgiter/strategies.hpp"

using namespace cgiter;

namespace {

Rational q(long num, long den = 1) {
  Rational x(num, den);
  x.canonicalize();
  return x;
}

NuForm nu_of(std::initializer_list<long> p, long qq) {
  IntVec pv;
  for (long v : p) pv.push_back(Integer(v));
  return NuForm::normalized(std::move(pv), Integer(qq));
}

NuForm random_nu(SplitMix64& rng, int d, long t_bound) {
  IntVec a = sample_primitive(d, Integer(t_bound), rng);
  Integer qq = a.back();
  a.pop_back();
  return NuForm::checked(std::move(a), qq);
}

RatVec random_target(SplitMix64& rng, int d, long den_bound) {
  RatVec t;
  for (int i = 0; i < d; ++i) {
    long den = rng.next_in(1, den_bound);
    t.push_back(q(rng.next_in(-2 * den, 2 * den), den));
  }
  return t;
}

LatticeBasis identity(int d) {
  RatMat v(static_cast<size_t>(d), RatVec(static_cast<size_t>(d), Rational(0)));
  for (int i = 0; i < d; ++i) v[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  return LatticeBasis(std::move(v));
}

bool same_lattice(const LatticeBasis& a, const LatticeBasis& b) {
  if (a.det_abs() != b.det_abs()) return false;
  for (int i = 0; i < a.dim(); ++i)
    if (!lattice_contains(b, a.vector(i))) return false;
  return true;
}

}  // namespace

TEST_CASE("hnf_columns on the worked 2x3 example") {
  IntMat cols{{Integer(4), Integer(0)}, {Integer(0), Integer(4)}, {Integer(1), Integer(3)}};
  IntMat h = hnf_columns(cols, 2);
  REQUIRE(h.size() == 2);
  CHECK(h[0] == IntVec{Integer(1), Integer(3)});
  CHECK(h[1] == IntVec{Integer(0), Integer(4)});
}

TEST_CASE("basis_from_nu examples") {
  LatticeBasis l = basis_from_nu(nu_of({1, 3}, 4));
  CHECK(l.det_abs() == q(1, 4));
  CHECK(lattice_contains(l, {q(1, 4), q(3, 4)}));
  CHECK(lattice_contains(l, {q(1), q(0)}));
  CHECK(lattice_contains(l, {q(0), q(1)}));
  CHECK_FALSE(lattice_contains(l, {q(1, 4), q(1, 4)}));

  LatticeBasis half = basis_from_nu(nu_of({1, 1}, 2));
  CHECK(half.det_abs() == q(1, 2));
  CHECK(lattice_contains(half, {q(1, 2), q(1, 2)}));
  CHECK(lattice_contains(half, {q(1, 2), q(-1, 2)}));
  CHECK_FALSE(lattice_contains(half, {q(1, 2), q(0)}));

  LatticeBasis integral = basis_from_nu(nu_of({0, 0, 0}, 1));
  CHECK(integral.det_abs() == 1);
  CHECK(lattice_contains(integral, {q(2), q(-1), q(5)}));
  CHECK_FALSE(lattice_contains(integral, {q(1, 2), q(0), q(0)}));
}

TEST_CASE("basis_from_nu membership property") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    int d = static_cast<int>(rng.next_in(2, 4));
    NuForm nu = random_nu(rng, d, 50);
    LatticeBasis l = basis_from_nu(nu);
    CHECK(l.det_abs() == Rational(Integer(1), nu.q));
    RatVec nuv = nu.to_vector();
    // random z + t nu lies in the integer span of the basis
    for (int rep = 0; rep < 3; ++rep) {
      long t = rng.next_in(0, 60);
      RatVec pt = scale(Rational(t), nuv);
      for (int i = 0; i < d; ++i) pt[static_cast<size_t>(i)] += rng.next_in(-3, 3);
      CHECK(lattice_contains(l, pt));
    }
    // conversely every basis vector is z + t nu for some t (recover_t succeeds)
    for (int i = 0; i < d; ++i) CHECK_NOTHROW(recover_t(l.vector(i), nu));
  }
}

TEST_CASE("determinant basics") {
  CHECK(identity(2).det_abs() == 1);
  CHECK(identity(5).det_abs() == 1);
  // unimodular recombination leaves the determinant unchanged
  SplitMix64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    NuForm nu = random_nu(rng, 3, 30);
    LatticeBasis l = basis_from_nu(nu);
    RatMat v = l.vectors();
    for (int step = 0; step < 6; ++step) {
      int i = static_cast<int>(rng.next_below(3)), j = static_cast<int>(rng.next_below(3));
      if (i == j) continue;
      long f = rng.next_in(-3, 3);
      v[static_cast<size_t>(i)] = add(v[static_cast<size_t>(i)], scale(Rational(f), v[static_cast<size_t>(j)]));
    }
    LatticeBasis recombined(v);
    CHECK(recombined.det_abs() == l.det_abs());
    CHECK(same_lattice(recombined, l));
  }
}

TEST_CASE("lll_reduce examples and properties") {
  // identity is already reduced
  LatticeBasis id2 = identity(2);
  LatticeBasis red_id = lll_reduce(id2);
  CHECK(red_id.vectors() == id2.vectors());

  LatticeBasis skew(RatMat{{q(1), q(0)}, {q(3), q(1)}});
  LatticeBasis red = lll_reduce(skew);
  CHECK(is_lll_reduced(red));
  CHECK(norm_sq(red.vector(0)) == 1);
  CHECK(same_lattice(red, skew));

  SplitMix64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    int d = static_cast<int>(rng.next_in(2, 4));
    NuForm nu = random_nu(rng, d, 64);
    LatticeBasis l = basis_from_nu(nu);
    LatticeBasis r = lll_reduce(l);
    CHECK(r.det_abs() == l.det_abs());
    CHECK(is_lll_reduced(r, q(3, 4)));
    CHECK(same_lattice(r, l));
  }
  CHECK_THROWS_AS(lll_reduce(id2, q(1, 8)), std::invalid_argument);
  CHECK_THROWS_AS(lll_reduce(id2, q(1)), std::invalid_argument);
}

TEST_CASE("babai examples") {
  LatticeBasis z2 = identity(2);
  RatVec inside{q(3), q(-2)};
  CHECK(babai_nearest_plane(z2, inside) == inside);  // lattice points are fixed
  CHECK(babai_nearest_plane(z2, {q(3, 10), q(7, 10)}) == RatVec{q(0), q(1)});
}

TEST_CASE("babai factor against exact cvp") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    int d = static_cast<int>(rng.next_in(2, 3));
    NuForm nu = random_nu(rng, d, 64);
    LatticeBasis red = lll_reduce(basis_from_nu(nu));
    Rational factor = Rational(Integer(1) << static_cast<unsigned>(d));  // 2^d in squared form
    for (int rep = 0; rep < 3; ++rep) {
      RatVec target = random_target(rng, d, 16);
      RatVec approx = babai_nearest_plane(red, target);
      CvpResult exact = closest_vector(red, target);
      CHECK(lattice_contains(red, approx));
      CHECK(lattice_contains(red, exact.point));
      CHECK(exact.dist_sq <= norm_sq(sub(approx, target)));
      CHECK(norm_sq(sub(approx, target)) <= factor * exact.dist_sq);
    }
  }
}

TEST_CASE("shortest vector examples") {
  auto [v2, n2] = shortest_vector(identity(2));
  CHECK(n2 == 1);
  auto [vh, nh] = shortest_vector(basis_from_nu(nu_of({1, 1}, 2)));
  CHECK(nh == q(1, 2));
  CHECK(norm_sq(vh) == nh);
  // homogeneity: scaling the basis scales lambda_1^2 by alpha^2
  RatMat scaled;
  LatticeBasis base = basis_from_nu(nu_of({1, 3}, 4));
  for (int i = 0; i < 2; ++i) scaled.push_back(scale(q(3), base.vector(i)));
  auto [vs, ns] = shortest_vector(LatticeBasis(scaled));
  auto [vb, nb] = shortest_vector(base);
  CHECK(ns == 9 * nb);
  // dimension guard
  CHECK_THROWS_AS(shortest_vector(identity(11)), CapabilityError);
}

TEST_CASE("successive minima") {
  RatVec mins = successive_minima_sq(identity(3));
  CHECK(mins == RatVec{q(1), q(1), q(1)});
  RatVec half = successive_minima_sq(basis_from_nu(nu_of({1, 1}, 2)));
  CHECK(half == RatVec{q(1, 2), q(1, 2)});

  SplitMix64 rng(606);
  for (int trial = 0; trial < 15; ++trial) {
    int d = static_cast<int>(rng.next_in(2, 3));
    NuForm nu = random_nu(rng, d, 48);
    LatticeBasis l = basis_from_nu(nu);
    RatVec m = successive_minima_sq(l);
    for (size_t i = 1; i < m.size(); ++i) CHECK(m[i - 1] <= m[i]);
    CHECK(m.front() == shortest_vector(l).second);
    // Hadamard + sublattice: the product of the minima dominates det(L)
    Rational prod = 1;
    for (const Rational& mi : m) prod *= mi;
    CHECK(prod >= l.det_abs() * l.det_abs());
  }
}

TEST_CASE("dual basis") {
  LatticeBasis z3 = identity(3);
  CHECK(same_lattice(dual_basis(z3), z3));  // self-dual

  SplitMix64 rng(707);
  for (int trial = 0; trial < 20; ++trial) {
    int d = static_cast<int>(rng.next_in(2, 4));
    NuForm nu = random_nu(rng, d, 40);
    LatticeBasis l = basis_from_nu(nu);
    LatticeBasis dual = dual_basis(l);
    CHECK(dual.det_abs() == Rational(nu.q));  // det(L*) = 1/det(L) = q
    // dual pairing is integral
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) CHECK(frac(dot(dual.vector(i), l.vector(j))) == 0);
    CHECK(same_lattice(dual_basis(dual), l));  // double dual
  }
}

TEST_CASE("covering radius brackets known values") {
  Rational tol(1, 64);
  CoveringRadiusBounds z2 = covering_radius_bounds(identity(2), tol);
  CHECK(z2.upper - z2.lower <= tol);
  CHECK(z2.lower * z2.lower <= q(1, 2));
  CHECK(z2.upper * z2.upper >= q(1, 2));

  CoveringRadiusBounds half = covering_radius_bounds(basis_from_nu(nu_of({1, 1}, 2)), tol);
  CHECK(half.lower <= q(1, 2));
  CHECK(half.upper >= q(1, 2));
  CHECK(half.upper - half.lower <= tol);

  CHECK_THROWS_AS(covering_radius_bounds(identity(5), tol), CapabilityError);
  // Z^d must be a sublattice
  LatticeBasis scaled(RatMat{{q(2), q(0)}, {q(0), q(1)}});
  CHECK_THROWS_AS(covering_radius_bounds(scaled, tol), std::invalid_argument);
}

TEST_CASE("covering radius certified properties on random lattices") {
  SplitMix64 rng(808);
  Rational tol(1, 32);
  for (int trial = 0; trial < 12; ++trial) {
    int d = static_cast<int>(rng.next_in(2, 3));
    NuForm nu = random_nu(rng, d, 32);
    LatticeBasis l = basis_from_nu(nu);
    CoveringRadiusBounds tau = covering_radius_bounds(l, tol);
    CHECK(tau.upper - tau.lower <= tol);
    CHECK(tau.lower >= 0);
    // tau(L_nu) <= tau(Z^d) = sqrt(d)/2 since Z^d is a sublattice, and the
    // certified upper end sits at most tol above tau.
    CHECK(tau.upper * tau.upper <= q(d, 4) + 2 * tol);
    // Jarnik: lambda_d <= 2 tau
    RatVec mins = successive_minima_sq(l);
    CHECK(mins.back() <= 4 * tau.upper * tau.upper);
    // Banaszczyk transference, rearranged: lambda_1(L*) <= d / (2 tau)
    if (tau.lower > 0) {
      Rational dual_l1 = shortest_vector(dual_basis(l)).second;
      CHECK(dual_l1 * (4 * tau.lower * tau.lower) <= Rational(d * d));
    }
    // determinism
    CoveringRadiusBounds again = covering_radius_bounds(l, tol);
    CHECK(again.lower == tau.lower);
    CHECK(again.upper == tau.upper);
  }
}

TEST_CASE("diagonal family has covering radius above 1/4") {
  Rational tol(1, 32);
  for (int d = 2; d <= 3; ++d)
    for (long qq = 2; qq <= 16; ++qq) {
      IntVec p(static_cast<size_t>(d), Integer(1));
      NuForm nu = NuForm::checked(std::move(p), Integer(qq));
      CoveringRadiusBounds tau = covering_radius_bounds(basis_from_nu(nu), tol);
      CHECK(tau.lower > q(1, 4));
    }
}

TEST_CASE("covering radius of a d=4 lattice") {
  Rational tol(1, 8);
  CoveringRadiusBounds z4 = covering_radius_bounds(identity(4), tol);
  // tau(Z^4) = 1 exactly
  CHECK(z4.lower <= 1);
  CHECK(z4.upper >= 1);
  CHECK(z4.upper - z4.lower <= tol);
}
