#pragma once

#include <optional>
#include <vector>

#include "cgiter/rational.hpp"

namespace cgiter {

enum class SolveStatus { Optimal, Infeasible, Unbounded };

// Integer data of max { c^T x : A x <= b, x >= 0 }.  Structural variables are
// indexed 0..n-1; the slack of row i is variable n+i.  This indexing is part
// of the cut-extraction contract.
struct IlpInstance {
  int n = 0;
  int m = 0;
  IntVec c;
  IntMat a;
  IntVec b;

  void validate() const;
};

// Row of the optimal tableau for basic variable `basic_index`:
//   x_k + sum_j coeffs[j] * x_j = rhs
// with coeffs dense over all n+m variables and zero at every basic position
// (including k itself).
struct TableauRow {
  int basic_index = -1;
  RatVec coeffs;
  Rational rhs;
};

struct LpSolution {
  SolveStatus status = SolveStatus::Optimal;
  RatVec x;                  // structural values, length n
  Rational objective;
  std::vector<int> basis;    // basis[i] = variable basic in row i
  Integer basis_det;         // |det B| over the basic columns of [A | I]
  RatMat tableau;            // m x (n+m), equals B^{-1} [A | I]
  RatVec rhs;                // length m, values of the basic variables

  bool is_basic(int var) const;
  int row_of(int var) const;  // -1 if nonbasic
};

// Exact optimum of the LP relaxation via two-phase primal simplex with
// Bland's rule (deterministic, cycle-free).
LpSolution solve_lp(const IlpInstance& inst);

// Throws std::invalid_argument if `var` is not basic in `sol`.
TableauRow tableau_row(const LpSolution& sol, int var);

struct IlpResult {
  SolveStatus status = SolveStatus::Optimal;
  Rational objective;
  IntVec x;
};

// Exact integer optimum by depth-first branch and bound: branch on the
// lowest-index fractional variable, floor branch first, prune against the
// incumbent.  The LP relaxation must be bounded.
IlpResult solve_ilp(const IlpInstance& inst);

// Instance with one extra row appended (used for branching and cuts).
IlpInstance with_extra_row(const IlpInstance& inst, const IntVec& row, const Integer& rhs);

// LP optimum after appending the cut pi^T x <= pi0.  Throws
// std::domain_error if the cut makes the LP infeasible (cuts generated by
// this library never cut off integer points, so that signals a bug upstream).
Rational resolve_with_cut(const IlpInstance& inst, const IntVec& pi, const Integer& pi0);

}  // namespace cgiter
