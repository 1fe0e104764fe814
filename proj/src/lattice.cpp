#include "cgiter/lattice.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>

#include "cgiter/errors.hpp"

namespace cgiter {

namespace {

// Gram-Schmidt over the rationals.  Returns false when the input is rank
// deficient.
bool compute_gso(const RatMat& vectors, RatMat* gso, RatMat* mu, RatVec* norms) {
  const size_t d = vectors.size();
  gso->assign(d, RatVec());
  mu->assign(d, RatVec(d, Rational(0)));
  norms->assign(d, Rational(0));
  for (size_t i = 0; i < d; ++i) {
    RatVec star = vectors[i];
    for (size_t j = 0; j < i; ++j) {
      Rational m = dot(vectors[i], (*gso)[j]) / (*norms)[j];
      (*mu)[i][j] = m;
      star = sub(star, scale(m, (*gso)[j]));
    }
    Rational ns = norm_sq(star);
    if (ns == 0) return false;
    (*gso)[i] = std::move(star);
    (*norms)[i] = std::move(ns);
  }
  return true;
}

Rational det_abs_of(RatMat m) {
  const size_t d = m.size();
  Rational det = 1;
  for (size_t col = 0; col < d; ++col) {
    size_t pivot = col;
    while (pivot < d && m[pivot][col] == 0) ++pivot;
    if (pivot == d) return 0;
    if (pivot != col) std::swap(m[pivot], m[col]);
    det *= m[col][col];
    Rational inv = 1 / m[col][col];
    for (size_t r = col + 1; r < d; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] * inv;
      for (size_t cc = col; cc < d; ++cc) m[r][cc] -= f * m[col][cc];
    }
  }
  return abs(det);
}

// Solves B^T y = v, i.e. expresses v in the basis whose vectors are the rows
// of `basis`.  Returns false when singular (callers guarantee full rank).
bool solve_in_basis(const RatMat& basis, const RatVec& v, RatVec* coords) {
  const size_t d = basis.size();
  RatMat m(d, RatVec(d + 1, Rational(0)));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) m[i][j] = basis[j][i];
    m[i][d] = v[i];
  }
  for (size_t col = 0; col < d; ++col) {
    size_t pivot = col;
    while (pivot < d && m[pivot][col] == 0) ++pivot;
    if (pivot == d) return false;
    if (pivot != col) std::swap(m[pivot], m[col]);
    Rational inv = 1 / m[col][col];
    for (size_t cc = col; cc <= d; ++cc) m[col][cc] *= inv;
    for (size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (size_t cc = col; cc <= d; ++cc) m[r][cc] -= f * m[col][cc];
    }
  }
  coords->assign(d, Rational(0));
  for (size_t i = 0; i < d; ++i) (*coords)[i] = m[i][d];
  return true;
}

}  // namespace

LatticeBasis::LatticeBasis(RatMat vectors) : d_(static_cast<int>(vectors.size())), vectors_(std::move(vectors)) {
  if (d_ == 0) throw std::invalid_argument("LatticeBasis: empty basis");
  for (const RatVec& v : vectors_)
    if (static_cast<int>(v.size()) != d_)
      throw std::invalid_argument("LatticeBasis: only full-rank square bases are supported");
  if (!compute_gso(vectors_, &gso_, &mu_, &gso_norm_sq_))
    throw std::invalid_argument("LatticeBasis: vectors are linearly dependent");
  det_abs_ = det_abs_of(vectors_);
}

IntMat hnf_columns(IntMat columns, int rows) {
  const int ncols = static_cast<int>(columns.size());
  for (const IntVec& c : columns)
    if (static_cast<int>(c.size()) != rows) throw std::invalid_argument("hnf_columns: ragged input");
  int rank = 0;
  for (int r = 0; r < rows && rank < ncols; ++r) {
    // Euclidean reduction across columns rank..ncols-1 on row r.
    for (;;) {
      int best = -1;
      for (int j = rank; j < ncols; ++j) {
        if (columns[j][r] == 0) continue;
        if (best < 0 || abs(columns[j][r]) < abs(columns[best][r])) best = j;
      }
      if (best < 0) break;
      std::swap(columns[rank], columns[best]);
      if (columns[rank][r] < 0)
        for (Integer& x : columns[rank]) x = -x;
      bool clean = true;
      for (int j = rank + 1; j < ncols; ++j) {
        if (columns[j][r] == 0) continue;
        Integer f;
        mpz_fdiv_q(f.get_mpz_t(), columns[j][r].get_mpz_t(), columns[rank][r].get_mpz_t());
        if (f != 0)
          for (int i = 0; i < rows; ++i) columns[j][i] -= f * columns[rank][i];
        if (columns[j][r] != 0) clean = false;
      }
      if (clean) break;
    }
    if (columns[rank][r] == 0) continue;
    // Reduce the columns left of the pivot so the result is canonical.
    for (int j = 0; j < rank; ++j) {
      Integer f;
      mpz_fdiv_q(f.get_mpz_t(), columns[j][r].get_mpz_t(), columns[rank][r].get_mpz_t());
      if (f != 0)
        for (int i = 0; i < rows; ++i) columns[j][i] -= f * columns[rank][i];
    }
    ++rank;
  }
  columns.resize(static_cast<size_t>(rank));
  return columns;
}

LatticeBasis basis_from_nu(const NuForm& nu) {
  const int d = nu.dim();
  if (d < 1) throw std::invalid_argument("basis_from_nu: empty vector");
  IntMat cols(static_cast<size_t>(d) + 1, IntVec(static_cast<size_t>(d), Integer(0)));
  for (int i = 0; i < d; ++i) cols[static_cast<size_t>(i)][static_cast<size_t>(i)] = nu.q;
  for (int i = 0; i < d; ++i) cols[static_cast<size_t>(d)][static_cast<size_t>(i)] = nu.p[static_cast<size_t>(i)];
  IntMat h = hnf_columns(std::move(cols), d);
  if (static_cast<int>(h.size()) != d) throw std::logic_error("basis_from_nu: unexpected rank");
  RatMat basis(static_cast<size_t>(d), RatVec(static_cast<size_t>(d)));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      Rational x(h[static_cast<size_t>(j)][static_cast<size_t>(i)], nu.q);
      x.canonicalize();
      basis[static_cast<size_t>(j)][static_cast<size_t>(i)] = x;
    }
  return LatticeBasis(std::move(basis));
}

LatticeBasis lll_reduce(const LatticeBasis& basis, const Rational& delta) {
  if (delta <= Rational(1, 4) || delta >= 1) throw std::invalid_argument("lll_reduce: delta must lie in (1/4, 1)");
  RatMat b = basis.vectors();
  const int d = static_cast<int>(b.size());
  RatMat gso, mu;
  RatVec norms;
  compute_gso(b, &gso, &mu, &norms);
  const Rational half(1, 2);
  int k = 1;
  while (k < d) {
    for (int j = k - 1; j >= 0; --j) {
      if (abs(mu[k][j]) <= half) continue;
      Integer r = round_int(mu[k][j]);
      Rational rq(r);
      b[k] = sub(b[k], scale(rq, b[j]));
      for (int l = 0; l < j; ++l) mu[k][l] -= rq * mu[j][l];
      mu[k][j] -= rq;
    }
    if (norms[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      compute_gso(b, &gso, &mu, &norms);
      k = std::max(k - 1, 1);
    }
  }
  return LatticeBasis(std::move(b));
}

bool is_lll_reduced(const LatticeBasis& basis, const Rational& delta) {
  const int d = basis.dim();
  const RatMat& mu = basis.gso_mu();
  const RatVec& norms = basis.gso_norms_sq();
  const Rational half(1, 2);
  for (int i = 1; i < d; ++i) {
    for (int j = 0; j < i; ++j)
      if (abs(mu[i][j]) > half) return false;
    if (norms[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norms[i - 1]) return false;
  }
  return true;
}

RatVec babai_nearest_plane(const LatticeBasis& reduced, const RatVec& target) {
  if (static_cast<int>(target.size()) != reduced.dim())
    throw std::invalid_argument("babai_nearest_plane: dimension mismatch");
  if (!is_lll_reduced(reduced, Rational(3, 4)))
    throw std::invalid_argument("babai_nearest_plane: basis is not (3/4)-LLL-reduced");
  RatVec b = target;
  for (int i = reduced.dim() - 1; i >= 0; --i) {
    Rational m = dot(b, reduced.gso_vectors()[static_cast<size_t>(i)]) / reduced.gso_norms_sq()[static_cast<size_t>(i)];
    Integer r = round_int(m);
    if (r != 0) b = sub(b, scale(Rational(r), reduced.vector(i)));
  }
  return sub(target, b);
}

namespace {

// Depth-first enumeration over the GSO triangularization.  At level i the
// squared cost contribution is (y_i - gamma_i)^2 * ||b*_i||^2 with gamma_i
// determined by the target and the levels above.  Candidates are visited in
// order of increasing distance from gamma_i, which makes results (and
// tie-breaks) deterministic.
class Enumerator {
 public:
  Enumerator(const LatticeBasis& basis, const RatVec& target_coords)
      : basis_(basis), d_(basis.dim()), z_(target_coords), y_(static_cast<size_t>(d_), Integer(0)) {}

  // Visit(vec_coords y, cost) for every point with cost <= budget; visitor
  // returns the (possibly shrunk) budget.
  template <typename Visitor>
  void run(Rational budget, Visitor&& visit) {
    budget_ = std::move(budget);
    visit_ = std::forward<Visitor>(visit);
    descend(d_ - 1, Rational(0));
  }

 private:
  void descend(int level, const Rational& partial) {
    if (level < 0) {
      Rational shrunk = visit_(y_, partial);
      if (shrunk < budget_) budget_ = shrunk;
      return;
    }
    const size_t li = static_cast<size_t>(level);
    Rational gamma = z_[li];
    for (int j = level + 1; j < d_; ++j)
      gamma -= basis_.gso_mu()[static_cast<size_t>(j)][li] * Rational(y_[static_cast<size_t>(j)]);
    const Rational& w = basis_.gso_norms_sq()[li];
    Integer mid = round_int(gamma);
    // Zig-zag outward from the rounded center; each direction is abandoned
    // once its next candidate exceeds the budget.
    Integer up = mid, down = mid - 1;
    bool up_live = true, down_live = true, first = true;
    while (up_live || down_live) {
      Integer pick;
      if (first) {
        pick = mid;
        first = false;
        up = mid + 1;
      } else {
        bool take_up;
        if (up_live && down_live) {
          Rational du = Rational(up) - gamma;
          Rational dd = gamma - Rational(down);
          take_up = du <= dd;
        } else {
          take_up = up_live;
        }
        if (take_up) {
          pick = up;
          up += 1;
        } else {
          pick = down;
          down -= 1;
        }
      }
      Rational diff = Rational(pick) - gamma;
      Rational cost = partial + diff * diff * w;
      if (cost > budget_) {
        if (pick >= mid)
          up_live = false;
        else
          down_live = false;
        continue;
      }
      y_[li] = pick;
      descend(level - 1, cost);
    }
  }

  const LatticeBasis& basis_;
  int d_;
  RatVec z_;
  IntVec y_;
  Rational budget_;
  std::function<Rational(const IntVec&, const Rational&)> visit_;
};

RatVec from_coords(const LatticeBasis& basis, const IntVec& y) {
  RatVec v(static_cast<size_t>(basis.dim()), Rational(0));
  for (int i = 0; i < basis.dim(); ++i)
    if (y[static_cast<size_t>(i)] != 0) v = add(v, scale(Rational(y[static_cast<size_t>(i)]), basis.vector(i)));
  return v;
}

// Coordinates of `target` along the GSO vectors.
RatVec gso_coords(const LatticeBasis& basis, const RatVec& target) {
  RatVec z(static_cast<size_t>(basis.dim()), Rational(0));
  for (int i = 0; i < basis.dim(); ++i)
    z[static_cast<size_t>(i)] =
        dot(target, basis.gso_vectors()[static_cast<size_t>(i)]) / basis.gso_norms_sq()[static_cast<size_t>(i)];
  return z;
}

}  // namespace

CvpResult closest_vector(const LatticeBasis& basis, const RatVec& target) {
  if (static_cast<int>(target.size()) != basis.dim())
    throw std::invalid_argument("closest_vector: dimension mismatch");
  // Reduce first so the enumeration tree stays narrow; Babai seeds the budget.
  LatticeBasis red = is_lll_reduced(basis) ? basis : lll_reduce(basis);
  RatVec babai = babai_nearest_plane(red, target);
  Rational best = norm_sq(sub(babai, target));
  IntVec best_y;
  Enumerator enumerator(red, gso_coords(red, target));
  enumerator.run(best, [&](const IntVec& y, const Rational& cost) {
    if (cost < best || best_y.empty()) {
      best = cost;
      best_y = y;
    }
    return best;
  });
  CvpResult out;
  out.point = best_y.empty() ? babai : from_coords(red, best_y);
  out.dist_sq = best;
  return out;
}

std::pair<RatVec, Rational> shortest_vector(const LatticeBasis& basis) {
  if (basis.dim() > 10) throw CapabilityError("shortest_vector: dimension guard (d <= 10) exceeded");
  LatticeBasis red = is_lll_reduced(basis) ? basis : lll_reduce(basis);
  Rational best = red.gso_norms_sq()[0];
  for (int i = 0; i < red.dim(); ++i) best = std::min(best, norm_sq(red.vector(i)));
  IntVec best_y;
  RatVec zero(static_cast<size_t>(red.dim()), Rational(0));
  Enumerator enumerator(red, zero);
  enumerator.run(best, [&](const IntVec& y, const Rational& cost) {
    bool nonzero = false;
    for (const Integer& c : y) nonzero |= (c != 0);
    if (nonzero && (best_y.empty() || cost < best)) {
      best = cost;
      best_y = y;
    }
    return best_y.empty() ? Rational(best) : best;
  });
  if (best_y.empty()) throw std::logic_error("shortest_vector: enumeration found nothing");
  return {from_coords(red, best_y), best};
}

RatVec successive_minima_sq(const LatticeBasis& basis) {
  if (basis.dim() > 10) throw CapabilityError("successive_minima_sq: dimension guard (d <= 10) exceeded");
  const int d = basis.dim();
  LatticeBasis red = is_lll_reduced(basis) ? basis : lll_reduce(basis);
  Rational budget = 0;
  for (int i = 0; i < d; ++i) budget = std::max(budget, norm_sq(red.vector(i)));
  std::vector<std::pair<Rational, IntVec>> found;
  RatVec zero(static_cast<size_t>(d), Rational(0));
  Enumerator enumerator(red, zero);
  enumerator.run(budget, [&](const IntVec& y, const Rational& cost) {
    bool nonzero = false;
    for (const Integer& c : y) nonzero |= (c != 0);
    if (nonzero) found.emplace_back(cost, y);
    return budget;
  });
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  // Greedy independent selection in order of norm gives the minima exactly.
  RatVec minima;
  RatMat echelon;
  for (const auto& [cost, y] : found) {
    if (static_cast<int>(minima.size()) == d) break;
    RatVec v = from_coords(red, y);
    RatVec w = v;
    for (const RatVec& e : echelon) {
      size_t lead = 0;
      while (lead < e.size() && e[lead] == 0) ++lead;
      if (lead < e.size() && w[lead] != 0) w = sub(w, scale(w[lead] / e[lead], e));
    }
    if (norm_sq(w) == 0) continue;
    echelon.push_back(std::move(w));
    minima.push_back(cost);
  }
  if (static_cast<int>(minima.size()) != d) throw std::logic_error("successive_minima_sq: rank shortfall");
  return minima;
}

LatticeBasis dual_basis(const LatticeBasis& basis) {
  const int d = basis.dim();
  // Rows of (B^T)^{-1} where B's rows are the primal vectors: solve B^T X = I.
  RatMat dual(static_cast<size_t>(d), RatVec(static_cast<size_t>(d), Rational(0)));
  for (int i = 0; i < d; ++i) {
    RatVec e(static_cast<size_t>(d), Rational(0));
    e[static_cast<size_t>(i)] = 1;
    RatVec coords;
    if (!solve_in_basis(basis.vectors(), e, &coords)) throw std::logic_error("dual_basis: singular basis");
    // coords expresses e_i in the primal basis; dual vector i has
    // <dual_i, b_j> = delta_ij, i.e. dual rows are columns of B^{-1}.
    for (int j = 0; j < d; ++j) dual[static_cast<size_t>(j)][static_cast<size_t>(i)] = coords[static_cast<size_t>(j)];
  }
  return LatticeBasis(std::move(dual));
}

bool lattice_contains(const LatticeBasis& basis, const RatVec& point) {
  if (static_cast<int>(point.size()) != basis.dim())
    throw std::invalid_argument("lattice_contains: dimension mismatch");
  RatVec coords;
  if (!solve_in_basis(basis.vectors(), point, &coords)) return false;
  for (const Rational& c : coords)
    if (c.get_den() != 1) return false;
  return true;
}

namespace {

struct Cell {
  Rational upper;
  RatVec center;
  Rational halfwidth;
  uint64_t serial;
};

struct CellOrder {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.upper != b.upper) return a.upper < b.upper;  // max-heap on upper
    return a.serial > b.serial;                        // older cells first
  }
};

}  // namespace

CoveringRadiusBounds covering_radius_bounds(const LatticeBasis& basis, const Rational& tol) {
  const int d = basis.dim();
  if (d > 4) throw CapabilityError("covering_radius_bounds: dimension guard (d <= 4) exceeded");
  if (tol <= 0) throw std::invalid_argument("covering_radius_bounds: tol must be positive");
  for (int i = 0; i < d; ++i) {
    RatVec e(static_cast<size_t>(d), Rational(0));
    e[static_cast<size_t>(i)] = 1;
    if (!lattice_contains(basis, e))
      throw std::invalid_argument("covering_radius_bounds: Z^d is not a sublattice");
  }
  LatticeBasis red = is_lll_reduced(basis) ? basis : lll_reduce(basis);
  constexpr unsigned kBits = 64;
  const Rational sqrt_d_hi = sqrt_upper(Rational(d), kBits);

  uint64_t serial = 0;
  Rational lower(0);
  std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
  auto push_cell = [&](RatVec center, const Rational& hw) {
    Rational dist_sq = closest_vector(red, center).dist_sq;
    Rational lo = sqrt_lower(dist_sq, kBits);
    if (lo > lower) lower = lo;
    Rational up = sqrt_upper(dist_sq, kBits) + hw * sqrt_d_hi;
    if (up <= lower) return;  // cannot contain a deeper hole than already seen
    heap.push(Cell{std::move(up), std::move(center), hw, serial++});
  };

  push_cell(RatVec(static_cast<size_t>(d), Rational(1, 2)), Rational(1, 2));
  Rational upper;
  for (;;) {
    if (heap.empty()) {
      upper = lower;  // every cell was pruned at push time
      break;
    }
    Cell top = heap.top();
    if (top.upper - lower <= tol) {
      upper = top.upper;
      break;
    }
    heap.pop();
    if (top.upper <= lower) continue;
    Rational hw = top.halfwidth / 2;
    const int children = 1 << d;
    for (int mask = 0; mask < children; ++mask) {
      RatVec center = top.center;
      for (int i = 0; i < d; ++i) center[static_cast<size_t>(i)] += ((mask >> i) & 1) ? hw : -hw;
      push_cell(std::move(center), hw);
    }
  }
  return CoveringRadiusBounds{lower, upper, tol};
}

}  // namespace cgiter
