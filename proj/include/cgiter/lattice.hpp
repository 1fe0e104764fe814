#pragma once

#include <utility>

#include "cgiter/interval.hpp"
#include "cgiter/rational.hpp"

namespace cgiter {

// Full-rank lattice in Q^d given by d independent basis vectors, with exact
// Gram-Schmidt data computed eagerly.  Immutable after construction.
class LatticeBasis {
 public:
  // vectors[i] is the i-th basis vector, each of length d = vectors.size().
  // Throws std::invalid_argument when the vectors are dependent.
  explicit LatticeBasis(RatMat vectors);

  int dim() const { return d_; }
  const RatVec& vector(int i) const { return vectors_[static_cast<size_t>(i)]; }
  const RatMat& vectors() const { return vectors_; }
  const Rational& det_abs() const { return det_abs_; }

  const RatMat& gso_vectors() const { return gso_; }
  // mu[i][j] for j < i; entries at j >= i are zero.
  const RatMat& gso_mu() const { return mu_; }
  const RatVec& gso_norms_sq() const { return gso_norm_sq_; }

 private:
  int d_;
  RatMat vectors_;
  Rational det_abs_;
  RatMat gso_;
  RatMat mu_;
  RatVec gso_norm_sq_;
};

// Basis of L_nu = Z^d + Z nu: scale [I | nu] by q, take the column-style
// Hermite normal form of the resulting d x (d+1) integer matrix, divide by q.
LatticeBasis basis_from_nu(const NuForm& nu);

// Column-style Hermite normal form of an integer matrix given as a list of
// columns: returns the nonzero columns, lower triangular with positive
// diagonal and reduced off-diagonal entries.  Deterministic.
IntMat hnf_columns(IntMat columns, int rows);

inline Rational determinant(const LatticeBasis& basis) { return basis.det_abs(); }

// Exact LLL reduction with parameter delta in (1/4, 1); default 3/4 matches
// the 2^{d/2} nearest-plane guarantee.
LatticeBasis lll_reduce(const LatticeBasis& basis, const Rational& delta = Rational(3, 4));
bool is_lll_reduced(const LatticeBasis& basis, const Rational& delta = Rational(3, 4));

// Babai nearest-plane point for a (3/4)-LLL-reduced basis.  The result x
// satisfies ||x - c||^2 <= 2^d min_{y in L} ||y - c||^2.
RatVec babai_nearest_plane(const LatticeBasis& reduced, const RatVec& target);

struct CvpResult {
  RatVec point;
  Rational dist_sq;
};

// Exact closest vector by depth-first enumeration over the Gram-Schmidt
// triangularization.  Ground truth for the Babai and covering-radius code.
CvpResult closest_vector(const LatticeBasis& basis, const RatVec& target);

// Exact shortest nonzero vector (squared norm) via bounded enumeration.
// Guarded to dim <= 10.
std::pair<RatVec, Rational> shortest_vector(const LatticeBasis& basis);

// all successive minima, squared, ascending.  Guarded to dim <= 10.
RatVec successive_minima_sq(const LatticeBasis& basis);

// Basis of the dual lattice {y : y^T x in Z for all x in L}.
LatticeBasis dual_basis(const LatticeBasis& basis);

// Exact membership test.
bool lattice_contains(const LatticeBasis& basis, const RatVec& point);

struct CoveringRadiusBounds {
  Rational lower;
  Rational upper;
  Rational tol;
};

// Certified covering-radius interval with upper - lower <= tol, by
// branch-and-bound over the cell [0,1]^d: a cell's maximum distance is
// bounded by its center distance plus half its diagonal (the distance
// function is 1-Lipschitz), distances evaluated by exact enumeration.
// Requires Z^d to be a sublattice (true for every L_nu) and dim <= 4.
CoveringRadiusBounds covering_radius_bounds(const LatticeBasis& basis, const Rational& tol);

}  // namespace cgiter
