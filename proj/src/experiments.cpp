#include "cgiter/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cgiter/errors.hpp"
#include "cgiter/interval.hpp"
#include "cgiter/lattice.hpp"
#include "cgiter/parallel.hpp"

#include "json.hpp"

namespace cgiter {

namespace {

Rational json_rational(const nlohmann::json& v, const std::string& key) {
  if (v.is_number_integer()) return Rational(Integer(static_cast<long>(v.get<long long>())));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InputError("config field '" + key + "' must be an integer or a \"p/q\" string");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  ExperimentConfig cfg;
  if (j.contains("m_values")) cfg.m_values = j["m_values"].get<std::vector<int>>();
  if (j.contains("n_values")) cfg.n_values = j["n_values"].get<std::vector<int>>();
  if (j.contains("instances_per_cell")) cfg.instances_per_cell = j["instances_per_cell"].get<int>();
  if (j.contains("coeff_max")) cfg.coeff_max = j["coeff_max"].get<int>();
  if (j.contains("zero_prob")) cfg.zero_prob = json_rational(j["zero_prob"], "zero_prob");
  if (j.contains("det_cap")) cfg.det_cap = Integer(static_cast<long>(j["det_cap"].get<long long>()));
  if (j.contains("seed")) cfg.seed = j["seed"].get<uint64_t>();
  if (cfg.instances_per_cell <= 0 || cfg.coeff_max <= 0) throw InputError("config: counts must be positive");
  if (cfg.zero_prob < 0 || cfg.zero_prob > 1) throw InputError("config: zero_prob must lie in [0,1]");
  for (int m : cfg.m_values)
    if (m < 2) throw InputError("config: m_values entries must be at least 2");
  for (int n : cfg.n_values)
    if (n < 1) throw InputError("config: n_values entries must be positive");
  return cfg;
}

IlpInstance gen_instance(int m, int n, const ExperimentConfig& cfg, uint64_t seed) {
  if (m < 2 || n < 1) throw std::invalid_argument("gen_instance: need m >= 2 and n >= 1");
  SplitMix64 rng(seed);
  IlpInstance inst;
  inst.m = m;
  inst.n = n;
  inst.c.reserve(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    inst.c.push_back(Integer(1 + static_cast<long>(rng.next_below(static_cast<uint64_t>(cfg.coeff_max)))));
  inst.a.assign(static_cast<size_t>(m), IntVec(static_cast<size_t>(n), Integer(0)));
  for (int j = 0; j < n; ++j) {
    for (;;) {  // redraw the column until it has at least two nonzeros
      int nonzeros = 0;
      for (int i = 0; i < m; ++i) {
        Integer v(0);
        if (!rng.bernoulli(cfg.zero_prob)) {
          v = 1 + static_cast<long>(rng.next_below(static_cast<uint64_t>(cfg.coeff_max)));
          ++nonzeros;
        }
        inst.a[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
      }
      if (nonzeros >= 2) break;
    }
  }
  inst.b.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    Integer sum(0);
    for (int j = 0; j < n; ++j) sum += inst.a[static_cast<size_t>(i)][static_cast<size_t>(j)];
    Integer bi;
    mpz_cdiv_q_ui(bi.get_mpz_t(), sum.get_mpz_t(), 2);
    inst.b.push_back(bi);
  }
  return inst;
}

Rational gap_closed(const Rational& z_lp, const Rational& z_ilp, const Rational& z_cut) {
  if (z_lp == z_ilp) throw std::domain_error("gap_closed: no integrality gap");
  Rational g = 100 * (z_lp - z_cut) / (z_lp - z_ilp);
  if (g < 0 || g > 100)
    throw std::logic_error("gap_closed: value " + to_string(g) + " outside [0,100]; invalid cut upstream");
  return g;
}

InstanceEvaluation evaluate_instance(const IlpInstance& inst, const std::vector<StrategyId>& strategies,
                                     const StrategyParams& params) {
  InstanceEvaluation out;
  out.lp = solve_lp(inst);
  if (out.lp.status != SolveStatus::Optimal)
    throw std::domain_error("evaluate_instance: LP relaxation is not optimal-feasible");
  IlpResult ilp = solve_ilp(inst);
  if (ilp.status != SolveStatus::Optimal) throw std::domain_error("evaluate_instance: ILP infeasible");
  out.z_ilp = ilp.objective;
  if (out.lp.objective == out.z_ilp) {
    out.no_gap = true;
    return out;
  }
  for (int row = 0; row < inst.m; ++row) {
    int var = out.lp.basis[static_cast<size_t>(row)];
    if (frac(out.lp.rhs[static_cast<size_t>(row)]) == 0) continue;
    TableauRow trow = tableau_row(out.lp, var);
    GfCut gf = gf_from_row(trow, inst.n, inst.m);
    CgCut cg = cg_from_gf(gf, out.lp, inst);
    for (StrategyId sid : strategies) {
      CutEvaluation ev;
      ev.basic_index = var;
      ev.slack_variable = var >= inst.n;
      StrategyId effective = sid;
      if (sid == StrategyId::S4 && cg.q > params.guard) effective = StrategyId::ApproxMult;
      if (sid == StrategyId::S5 && cg.q > params.guard) effective = StrategyId::ApproxAdd;
      ev.strategy = sid;
      StrategyParams local = params;
      if (effective != sid) local.eps = local.delta = Rational(Integer(1), cg.q);
      StrategyResult res = apply_strategy(inst, cg, effective, local);
      ev.choice = std::move(res.choice);
      ev.cut = std::move(res.cut);
      if (ev.cut) {
        Rational z_cut = resolve_with_cut(inst, ev.cut->pi, ev.cut->pi0);
        ev.gap_pct = gap_closed(out.lp.objective, out.z_ilp, z_cut);
      } else {
        ev.gap_pct = 0;  // trivial outcome closes nothing
      }
      out.evals.push_back(std::move(ev));
    }
  }
  return out;
}

bool Table1Result::cell_average(int m, int n, int s, Rational* out) const {
  Rational sum = 0;
  int count = 0;
  for (const InstanceRow& row : instances) {
    if (row.m != m || row.n != n || row.discarded || row.no_gap) continue;
    sum += row.avg_gap[static_cast<size_t>(s)];
    ++count;
  }
  if (count == 0) return false;
  *out = sum / count;
  return true;
}

bool Table1Result::overall_average(int s, Rational* out) const {
  Rational sum = 0;
  int cells = 0;
  for (int m : cfg.m_values)
    for (int n : cfg.n_values) {
      Rational cell;
      if (cell_average(m, n, s, &cell)) {
        sum += cell;
        ++cells;
      }
    }
  if (cells == 0) return false;
  *out = sum / cells;
  return true;
}

std::string Table1Result::to_csv() const {
  std::ostringstream out;
  out << "level,m,n,k,strategy,cuts,discarded,no_gap,approx,gap_pct,gap_pct_dec\n";
  for (const InstanceRow& row : instances)
    for (int s = 0; s < 6; ++s) {
      out << "instance," << row.m << "," << row.n << "," << row.k << "," << s << "," << row.cuts << ","
          << (row.discarded ? 1 : 0) << "," << (row.no_gap ? 1 : 0) << "," << (row.approx_used ? 1 : 0) << ",";
      if (row.discarded || row.no_gap)
        out << ",\n";
      else
        out << to_string(row.avg_gap[static_cast<size_t>(s)]) << ","
            << to_decimal(row.avg_gap[static_cast<size_t>(s)], 6) << "\n";
    }
  for (int m : cfg.m_values)
    for (int n : cfg.n_values)
      for (int s = 0; s < 6; ++s) {
        Rational cell;
        out << "cell," << m << "," << n << ",," << s << ",,,,,";
        if (cell_average(m, n, s, &cell))
          out << to_string(cell) << "," << to_decimal(cell, 6) << "\n";
        else
          out << ",\n";
      }
  for (int s = 0; s < 6; ++s) {
    Rational a;
    out << "overall,,,," << s << ",,,,,";
    if (overall_average(s, &a))
      out << to_string(a) << "," << to_decimal(a, 6) << "\n";
    else
      out << ",\n";
  }
  return out.str();
}

Table1Result run_table1(const ExperimentConfig& cfg) {
  Table1Result result;
  result.cfg = cfg;
  struct Task {
    int m, n, k;
  };
  std::vector<Task> tasks;
  for (int m : cfg.m_values)
    for (int n : cfg.n_values)
      for (int k = 1; k <= cfg.instances_per_cell; ++k) tasks.push_back({m, n, k});
  result.instances.assign(tasks.size(), Table1Result::InstanceRow{});
  const std::vector<StrategyId> strategies{StrategyId::S0, StrategyId::S1, StrategyId::S2,
                                           StrategyId::S3, StrategyId::S4, StrategyId::S5};
  parallel_for(tasks.size(), [&](size_t idx) {
    const Task& task = tasks[idx];
    Table1Result::InstanceRow row;
    row.m = task.m;
    row.n = task.n;
    row.k = task.k;
    uint64_t seed = mix_seed(cfg.seed, static_cast<uint64_t>(task.m), static_cast<uint64_t>(task.n),
                             static_cast<uint64_t>(task.k));
    IlpInstance inst = gen_instance(task.m, task.n, cfg, seed);
    LpSolution lp = solve_lp(inst);
    if (lp.status != SolveStatus::Optimal) throw std::logic_error("run_table1: generated LP not optimal");
    row.basis_det = lp.basis_det;
    if (lp.basis_det > cfg.det_cap) {
      row.discarded = true;
      result.instances[idx] = std::move(row);
      return;
    }
    InstanceEvaluation ev = evaluate_instance(inst, strategies, StrategyParams{});
    if (ev.no_gap || ev.evals.empty()) {
      row.no_gap = true;
      result.instances[idx] = std::move(row);
      return;
    }
    std::array<Rational, 6> sums{};
    std::array<int, 6> counts{};
    for (const CutEvaluation& ce : ev.evals) {
      int s = static_cast<int>(ce.strategy);
      sums[static_cast<size_t>(s)] += ce.gap_pct;
      counts[static_cast<size_t>(s)] += 1;
      row.approx_used |= ce.choice.approx;
    }
    row.cuts = counts[0];
    for (int s = 0; s < 6; ++s)
      row.avg_gap[static_cast<size_t>(s)] = counts[static_cast<size_t>(s)] > 0
                                                ? Rational(sums[static_cast<size_t>(s)] / counts[static_cast<size_t>(s)])
                                                : Rational(0);
    result.instances[idx] = std::move(row);
  });
  return result;
}

std::string iterates_csv(const NuForm& nu) {
  const int d = nu.dim();
  std::ostringstream out;
  out << "t";
  for (int i = 1; i <= d; ++i) out << ",x" << i;
  for (int i = 1; i <= d; ++i) out << ",x" << i << "_dec";
  out << "\n";
  IntVec cur(static_cast<size_t>(d), Integer(0));
  for (Integer t = 1; t < nu.q; ++t) {
    for (int i = 0; i < d; ++i) {
      cur[static_cast<size_t>(i)] += nu.p[static_cast<size_t>(i)];
      if (cur[static_cast<size_t>(i)] >= nu.q) cur[static_cast<size_t>(i)] -= nu.q;
    }
    out << t.get_str();
    RatVec xi(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      Rational x(cur[static_cast<size_t>(i)], nu.q);
      x.canonicalize();
      xi[static_cast<size_t>(i)] = x;
      out << "," << to_string(x);
    }
    for (int i = 0; i < d; ++i) out << "," << to_decimal(xi[static_cast<size_t>(i)], 6);
    out << "\n";
  }
  return out.str();
}

IntVec sample_primitive(int d, const Integer& T, SplitMix64& rng) {
  if (d < 1) throw std::invalid_argument("sample_primitive: d must be positive");
  if (T < 2) throw std::domain_error("sample_primitive: the set is empty for T < 2");
  if (!T.fits_ulong_p()) throw CapabilityError("sample_primitive: T too large");
  const uint64_t box = static_cast<uint64_t>(T.get_ui());
  for (;;) {
    // Uniform over the box {1..T}^{d+1}; acceptance keeps exactly the
    // primitive vectors with max_i p_i < q, hence uniform over the set.
    uint64_t q = 1 + rng.next_below(box);
    IntVec a(static_cast<size_t>(d) + 1, Integer(0));
    bool inside = true;
    for (int i = 0; i < d; ++i) {
      uint64_t p = 1 + rng.next_below(box);
      if (p >= q) inside = false;
      a[static_cast<size_t>(i)] = Integer(static_cast<unsigned long>(p));
    }
    if (!inside) continue;
    a[static_cast<size_t>(d)] = Integer(static_cast<unsigned long>(q));
    Integer g = a[static_cast<size_t>(d)];
    for (int i = 0; i < d; ++i) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a[static_cast<size_t>(i)].get_mpz_t());
    if (g == 1) return a;
  }
}

std::string TailEstimate::to_csv() const {
  std::ostringstream out;
  out << "R,R_dec,samples,exceed,straddle,p_hat_dec,in_fit_region\n";
  for (size_t i = 0; i < r_grid.size(); ++i) {
    Rational p_hat = samples > 0 ? Rational(exceed[i], samples) : Rational(0);
    p_hat.canonicalize();
    out << to_string(r_grid[i]) << "," << to_decimal(r_grid[i], 6) << "," << samples << "," << exceed[i] << ","
        << straddle[i] << "," << to_decimal(p_hat, 6) << "," << (exceed[i] >= kFitMinCount ? 1 : 0) << "\n";
  }
  return out.str();
}

TailEstimate mc_theorem1(int d, const Integer& T, int samples, const RatVec& r_grid, const Rational& tol,
                         uint64_t seed) {
  if (d != 2 && d != 3) throw CapabilityError("mc_theorem1: d must be 2 or 3 (covering-radius guard)");
  if (samples < 1) throw std::invalid_argument("mc_theorem1: need at least one sample");
  for (size_t i = 1; i < r_grid.size(); ++i)
    if (r_grid[i] <= r_grid[i - 1]) throw std::invalid_argument("mc_theorem1: R grid must be increasing");
  TailEstimate est;
  est.d = d;
  est.T = T;
  est.samples = samples;
  est.tol = tol;
  est.r_grid = r_grid;
  est.exceed.assign(r_grid.size(), 0);
  est.straddle.assign(r_grid.size(), 0);

  struct SampleStat {
    Rational lo, hi;
  };
  std::vector<SampleStat> stats(static_cast<size_t>(samples));
  parallel_for(static_cast<size_t>(samples), [&](size_t i) {
    SplitMix64 rng(mix_seed(seed, static_cast<uint64_t>(i)));
    IntVec a = sample_primitive(d, T, rng);
    Integer q = a.back();
    IntVec p(a.begin(), a.end() - 1);
    NuForm nu = NuForm::checked(std::move(p), q);
    CoveringRadiusBounds tau = covering_radius_bounds(basis_from_nu(nu), tol);
    Interval root = kth_root_iv(q, static_cast<unsigned>(d));
    Interval stat = Interval{tau.lower, tau.upper} * root;
    stats[i] = SampleStat{stat.lo, stat.hi};
  });
  for (const SampleStat& s : stats)
    for (size_t j = 0; j < r_grid.size(); ++j) {
      if (s.lo > r_grid[j])
        est.exceed[j] += 1;
      else if (s.hi > r_grid[j])
        est.straddle[j] += 1;
    }

  // Log-log least squares over the well-populated tail.
  std::vector<double> xs, ys;
  for (size_t j = 0; j < r_grid.size(); ++j) {
    if (est.exceed[j] < TailEstimate::kFitMinCount) continue;
    xs.push_back(std::log(r_grid[j].get_d()));
    ys.push_back(std::log(static_cast<double>(est.exceed[j]) / samples));
  }
  est.fit_points = static_cast<int>(xs.size());
  if (est.fit_points >= 2) {
    double sx = 0, sy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
    }
    double mx = sx / est.fit_points, my = sy / est.fit_points;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    est.slope = sxy / sxx;
    if (est.fit_points > 2) {
      double ss = 0;
      for (size_t i = 0; i < xs.size(); ++i) {
        double resid = ys[i] - my - est.slope * (xs[i] - mx);
        ss += resid * resid;
      }
      est.slope_stderr = std::sqrt(ss / (est.fit_points - 2) / sxx);
    }
  }
  return est;
}

}  // namespace cgiter
