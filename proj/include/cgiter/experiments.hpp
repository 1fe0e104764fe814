#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cgiter/cuts.hpp"
#include "cgiter/lp.hpp"
#include "cgiter/rational.hpp"
#include "cgiter/rng.hpp"
#include "cgiter/strategies.hpp"

namespace cgiter {

struct ExperimentConfig {
  std::vector<int> m_values{5, 10, 15};
  std::vector<int> n_values{10, 20, 30};
  int instances_per_cell = 5;
  int coeff_max = 5;
  Rational zero_prob{1, 2};
  Integer det_cap{2000000};
  uint64_t seed = 1;

  static ExperimentConfig from_json_text(const std::string& text);
};

// Random instance following the generation protocol: objective entries
// uniform in 1..coeff_max; matrix entries zero with probability zero_prob,
// otherwise uniform in 1..coeff_max; columns redrawn until they hold at
// least two nonzeros; b_i = ceil(half the i-th row sum).
IlpInstance gen_instance(int m, int n, const ExperimentConfig& cfg, uint64_t seed);

// 100 (z_lp - z_cut) / (z_lp - z_ilp).  Throws std::domain_error when there
// is no gap, std::logic_error when the value falls outside [0, 100] (which
// would mean an invalid cut upstream).
Rational gap_closed(const Rational& z_lp, const Rational& z_ilp, const Rational& z_cut);

// One cut evaluated under one strategy.
struct CutEvaluation {
  int basic_index = -1;
  bool slack_variable = false;
  StrategyId strategy = StrategyId::S0;
  StrategyChoice choice;
  std::optional<IteratedCut> cut;
  Rational gap_pct;
};

// Full per-instance pipeline: fractional basic rows -> GF -> CG -> one
// evaluation per requested strategy.
struct InstanceEvaluation {
  LpSolution lp;
  Rational z_ilp;
  bool no_gap = false;
  std::vector<CutEvaluation> evals;
};

InstanceEvaluation evaluate_instance(const IlpInstance& inst, const std::vector<StrategyId>& strategies,
                                     const StrategyParams& params = {});

struct Table1Result {
  struct InstanceRow {
    int m = 0, n = 0, k = 0;
    bool discarded = false;  // basis determinant above the cap
    bool no_gap = false;     // integral LP optimum or zero gap: skipped
    bool approx_used = false;
    int cuts = 0;
    Integer basis_det;
    std::array<Rational, 6> avg_gap{};  // A_s(m,n,k)
  };

  ExperimentConfig cfg;
  std::vector<InstanceRow> instances;  // sorted by (m, n, k)

  bool cell_average(int m, int n, int s, Rational* out) const;  // A_s(m,n)
  bool overall_average(int s, Rational* out) const;             // A_s
  std::string to_csv() const;
};

// Generates, solves and scores every instance of the grid under strategies
// 0..5 (4 and 5 fall back to the approximation algorithms, flagged, when q
// exceeds the enumeration guard).
Table1Result run_table1(const ExperimentConfig& cfg);

// All iterate points t nu mod 1, t = 1..q-1, as CSV (exact + decimal).
std::string iterates_csv(const NuForm& nu);

// Uniform sample from the primitive vectors (p_1,...,p_d,q) with
// 0 < p_i < q <= T and gcd(p_1,...,p_d,q) = 1, by rejection from the box.
// Throws std::domain_error when T < 2 (the set is empty).
IntVec sample_primitive(int d, const Integer& T, SplitMix64& rng);

struct TailEstimate {
  int d = 0;
  Integer T;
  int samples = 0;
  Rational tol;
  RatVec r_grid;
  std::vector<long> exceed;    // certified tau q^{1/d} > R
  std::vector<long> straddle;  // certified interval contains R
  double slope = 0.0;
  double slope_stderr = 0.0;
  int fit_points = 0;          // grid points with exceed count >= kFitMinCount
  static constexpr long kFitMinCount = 50;

  std::string to_csv() const;
};

// Monte-Carlo study of the covering-radius tail: for each sample computes
// certified bounds on tau(L_a) q^{1/d} and classifies them against the grid;
// fits the log-log slope over the well-populated tail region.
TailEstimate mc_theorem1(int d, const Integer& T, int samples, const RatVec& r_grid, const Rational& tol,
                         uint64_t seed);

}  // namespace cgiter
