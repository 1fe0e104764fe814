#include "cgiter/lp.hpp"

#include <stdexcept>
#include <utility>

namespace cgiter {

void IlpInstance::validate() const {
  if (n <= 0 || m <= 0) throw std::invalid_argument("instance: n and m must be positive");
  if (static_cast<int>(c.size()) != n) throw std::invalid_argument("instance: c has wrong length");
  if (static_cast<int>(b.size()) != m) throw std::invalid_argument("instance: b has wrong length");
  if (static_cast<int>(a.size()) != m) throw std::invalid_argument("instance: A has wrong row count");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("instance: A has a row of wrong length");
}

bool LpSolution::is_basic(int var) const { return row_of(var) >= 0; }

int LpSolution::row_of(int var) const {
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == var) return static_cast<int>(i);
  return -1;
}

namespace {

// Fraction-free (Bareiss) determinant of an integer matrix.
Integer det_bareiss(IntMat m) {
  const int k = static_cast<int>(m.size());
  Integer prev = 1;
  int sign = 1;
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    for (int r = col; r < k; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      sign = -sign;
    }
    for (int r = col + 1; r < k; ++r) {
      for (int cc = col + 1; cc < k; ++cc) {
        m[r][cc] = m[r][cc] * m[col][col] - m[r][col] * m[col][cc];
        mpz_divexact(m[r][cc].get_mpz_t(), m[r][cc].get_mpz_t(), prev.get_mpz_t());
      }
      m[r][col] = 0;
    }
    prev = m[col][col];
  }
  return sign * m[k - 1][k - 1];
}

class SimplexTableau {
 public:
  explicit SimplexTableau(const IlpInstance& inst) : inst_(inst), m_(inst.m), real_cols_(inst.n + inst.m) {
    rows_.assign(m_, RatVec(real_cols_, Rational(0)));
    rhs_.assign(m_, Rational(0));
    basis_.assign(m_, -1);
    std::vector<int> art_rows;
    for (int i = 0; i < m_; ++i) {
      bool flip = inst.b[i] < 0;
      for (int j = 0; j < inst.n; ++j) rows_[i][j] = flip ? Rational(-inst.a[i][j]) : Rational(inst.a[i][j]);
      rows_[i][inst.n + i] = flip ? -1 : 1;
      rhs_[i] = flip ? Rational(-inst.b[i]) : Rational(inst.b[i]);
      if (flip)
        art_rows.push_back(i);
      else
        basis_[i] = inst.n + i;
    }
    if (!art_rows.empty()) {
      // Phase 1: artificial columns appended after the real ones.
      int cols = real_cols_ + static_cast<int>(art_rows.size());
      for (auto& row : rows_) row.resize(cols, Rational(0));
      for (size_t k = 0; k < art_rows.size(); ++k) {
        rows_[art_rows[k]][real_cols_ + static_cast<int>(k)] = 1;
        basis_[art_rows[k]] = real_cols_ + static_cast<int>(k);
      }
      RatVec cost(cols, Rational(0));
      for (size_t k = 0; k < art_rows.size(); ++k) cost[real_cols_ + static_cast<int>(k)] = -1;
      bool bounded = run(cost);
      if (!bounded) throw std::logic_error("simplex: phase 1 unbounded");
      if (objective_ != 0) {
        feasible_ = false;
        return;
      }
      drive_out_artificials();
      for (auto& row : rows_) row.resize(real_cols_);
    }
    RatVec cost(real_cols_, Rational(0));
    for (int j = 0; j < inst.n; ++j) cost[j] = Rational(inst.c[j]);
    bounded_ = run(cost);
  }

  LpSolution result() const {
    LpSolution sol;
    if (!feasible_) {
      sol.status = SolveStatus::Infeasible;
      return sol;
    }
    if (!bounded_) {
      sol.status = SolveStatus::Unbounded;
      return sol;
    }
    sol.status = SolveStatus::Optimal;
    sol.x.assign(inst_.n, Rational(0));
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < inst_.n) sol.x[basis_[i]] = rhs_[i];
    sol.objective = 0;
    for (int j = 0; j < inst_.n; ++j) sol.objective += Rational(inst_.c[j]) * sol.x[j];
    sol.basis = basis_;
    sol.tableau = rows_;
    sol.rhs = rhs_;
    IntMat bmat(m_, IntVec(m_, Integer(0)));
    for (int i = 0; i < m_; ++i)
      for (int col = 0; col < m_; ++col) {
        int var = basis_[col];
        bmat[i][col] = var < inst_.n ? inst_.a[i][var] : Integer(var - inst_.n == i ? 1 : 0);
      }
    sol.basis_det = abs(det_bareiss(std::move(bmat)));
    return sol;
  }

 private:
  // Primal simplex for max cost^T x from the current basic feasible point.
  // Bland's rule: entering = lowest improving column, leaving = lowest basic
  // variable index among the ratio-test ties.  Returns false on unbounded.
  bool run(const RatVec& cost) {
    int cols = static_cast<int>(rows_[0].size());
    RatVec objrow(cols, Rational(0));
    objective_ = 0;
    for (int j = 0; j < cols; ++j) objrow[j] = -cost[j];
    for (int i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j < cols; ++j) objrow[j] += cb * rows_[i][j];
      objective_ += cb * rhs_[i];
    }
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (objrow[j] < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (int i = 0; i < m_; ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rhs_[i] / rows_[i][enter];
        if (leave < 0 || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter, objrow);
    }
  }

  void pivot(int row, int col, RatVec& objrow) {
    int cols = static_cast<int>(rows_[0].size());
    Rational inv = 1 / rows_[row][col];
    for (int j = 0; j < cols; ++j) rows_[row][j] *= inv;
    rhs_[row] *= inv;
    rows_[row][col] = 1;  // avoid residual non-canonical forms
    for (int i = 0; i < m_; ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      Rational f = rows_[i][col];
      for (int j = 0; j < cols; ++j) rows_[i][j] -= f * rows_[row][j];
      rhs_[i] -= f * rhs_[row];
      rows_[i][col] = 0;
    }
    if (objrow[col] != 0) {
      Rational f = objrow[col];
      for (int j = 0; j < cols; ++j) objrow[j] -= f * rows_[row][j];
      objective_ -= f * rhs_[row];
      objrow[col] = 0;
    }
    basis_[row] = col;
  }

  // At a zero phase-1 optimum every basic artificial sits at level zero and
  // can be pivoted out on any nonzero real column of its row; [A | I] has
  // full row rank, so such a column always exists.
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < real_cols_) continue;
      int col = -1;
      for (int j = 0; j < real_cols_; ++j)
        if (rows_[i][j] != 0) {
          col = j;
          break;
        }
      if (col < 0) throw std::logic_error("simplex: redundant row, [A|I] rank defect");
      RatVec dummy(rows_[0].size(), Rational(0));
      pivot(i, col, dummy);
    }
  }

  const IlpInstance& inst_;
  int m_;
  int real_cols_;
  RatMat rows_;
  RatVec rhs_;
  std::vector<int> basis_;
  Rational objective_;
  bool feasible_ = true;
  bool bounded_ = true;
};

}  // namespace

LpSolution solve_lp(const IlpInstance& inst) {
  inst.validate();
  SimplexTableau t(inst);
  return t.result();
}

TableauRow tableau_row(const LpSolution& sol, int var) {
  if (sol.status != SolveStatus::Optimal) throw std::invalid_argument("tableau_row: solution not optimal");
  int row = sol.row_of(var);
  if (row < 0) throw std::invalid_argument("tableau_row: variable is not basic");
  TableauRow out;
  out.basic_index = var;
  out.coeffs = sol.tableau[row];
  for (int b : sol.basis) out.coeffs[b] = 0;
  out.rhs = sol.rhs[row];
  return out;
}

IlpInstance with_extra_row(const IlpInstance& inst, const IntVec& row, const Integer& rhs) {
  if (static_cast<int>(row.size()) != inst.n) throw std::invalid_argument("with_extra_row: wrong row length");
  IlpInstance out = inst;
  out.m += 1;
  out.a.push_back(row);
  out.b.push_back(rhs);
  return out;
}

namespace {

struct BranchAndBound {
  std::optional<Rational> best_obj;
  IntVec best_x;

  void search(const IlpInstance& node) {
    LpSolution sol = solve_lp(node);
    if (sol.status == SolveStatus::Infeasible) return;
    if (sol.status == SolveStatus::Unbounded)
      throw std::domain_error("solve_ilp: LP relaxation unbounded");
    // c and x are integral at any leaf, so floor(z_LP) bounds the subtree.
    if (best_obj && Rational(floor_int(sol.objective)) <= *best_obj) return;
    int branch_var = -1;
    for (int j = 0; j < node.n; ++j)
      if (frac(sol.x[j]) != 0) {
        branch_var = j;
        break;
      }
    if (branch_var < 0) {
      if (!best_obj || sol.objective > *best_obj) {
        best_obj = sol.objective;
        best_x.assign(node.n, Integer(0));
        for (int j = 0; j < node.n; ++j) best_x[j] = sol.x[j].get_num();
      }
      return;
    }
    Integer f = floor_int(sol.x[branch_var]);
    IntVec row(node.n, Integer(0));
    row[branch_var] = 1;
    search(with_extra_row(node, row, f));
    row[branch_var] = -1;
    search(with_extra_row(node, row, -(f + 1)));
  }
};

}  // namespace

IlpResult solve_ilp(const IlpInstance& inst) {
  inst.validate();
  BranchAndBound bnb;
  bnb.search(inst);
  IlpResult out;
  if (!bnb.best_obj) {
    out.status = SolveStatus::Infeasible;
    return out;
  }
  out.status = SolveStatus::Optimal;
  out.objective = *bnb.best_obj;
  out.x = std::move(bnb.best_x);
  return out;
}

Rational resolve_with_cut(const IlpInstance& inst, const IntVec& pi, const Integer& pi0) {
  LpSolution sol = solve_lp(with_extra_row(inst, pi, pi0));
  if (sol.status == SolveStatus::Infeasible)
    throw std::domain_error("resolve_with_cut: cut makes the relaxation infeasible");
  if (sol.status == SolveStatus::Unbounded)
    throw std::domain_error("resolve_with_cut: relaxation unbounded");
  return sol.objective;
}

}  // namespace cgiter
