#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cgiter/errors.hpp"
#include "cgiter/experiments.hpp"
#include "cgiter/formats.hpp"
#include "cgiter/lattice.hpp"
#include "cgiter/lp.hpp"
#include "cgiter/strategies.hpp"

namespace {

using namespace cgiter;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCapability = 3;

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

std::string vec_to_string(const IntVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += v[i].get_str();
  }
  return s;
}

int cmd_solve(const std::string& path, bool with_ilp) {
  IlpInstance inst = load_instance(path);
  LpSolution sol = solve_lp(inst);
  if (sol.status == SolveStatus::Infeasible) {
    std::cout << "status: infeasible\n";
    return kExitOk;
  }
  if (sol.status == SolveStatus::Unbounded) {
    std::cout << "status: unbounded\n";
    return kExitOk;
  }
  std::cout << "status: optimal\n";
  std::cout << "lp_objective: " << to_string(sol.objective) << " (" << to_decimal(sol.objective, 12) << ")\n";
  std::cout << "x: " << to_string(sol.x) << "\n";
  std::cout << "basis:";
  for (int v : sol.basis) std::cout << " " << v;
  std::cout << "\n";
  std::cout << "basis_det: " << sol.basis_det.get_str() << "\n";
  if (with_ilp) {
    IlpResult ilp = solve_ilp(inst);
    if (ilp.status != SolveStatus::Optimal) {
      std::cout << "ilp_status: infeasible\n";
    } else {
      std::cout << "ilp_objective: " << to_string(ilp.objective) << "\n";
      std::cout << "ilp_x: " << vec_to_string(ilp.x) << "\n";
    }
  }
  return kExitOk;
}

std::vector<StrategyId> parse_strategies(const std::string& sel) {
  if (sel == "all")
    return {StrategyId::S0, StrategyId::S1, StrategyId::S2, StrategyId::S3, StrategyId::S4, StrategyId::S5};
  if (sel == "approx-mult") return {StrategyId::ApproxMult};
  if (sel == "approx-add") return {StrategyId::ApproxAdd};
  if (sel.size() == 1 && sel[0] >= '0' && sel[0] <= '5') return {static_cast<StrategyId>(sel[0] - '0')};
  throw InputError("cuts: unknown strategy '" + sel + "' (expected 0..5, approx-mult, approx-add, all)");
}

int cmd_cuts(const std::string& path, const std::string& strategy_sel, const std::string& eps_s,
             const std::string& delta_s, const std::string& out_path) {
  IlpInstance inst = load_instance(path);
  StrategyParams params;
  params.eps = parse_rational(eps_s);
  params.delta = parse_rational(delta_s);
  std::vector<StrategyId> strategies = parse_strategies(strategy_sel);
  InstanceEvaluation ev = evaluate_instance(inst, strategies, params);
  bool any_fractional = false;
  for (int row = 0; row < inst.m; ++row)
    any_fractional |= (frac(ev.lp.rhs[static_cast<size_t>(row)]) != 0);
  if (!any_fractional) {
    std::cout << "no fractional variables\n";
    return kExitOk;
  }
  std::ostringstream csv;
  csv << "basic_index,kind,strategy,t,rounding,rounding_dec,r_sq,r_dec,n_sq,n_dec,pi,pi0,gap_pct,"
         "gap_pct_dec,approx,trivial\n";
  for (const CutEvaluation& ce : ev.evals) {
    csv << ce.basic_index << "," << (ce.slack_variable ? "slack" : "structural") << ","
        << strategy_name(ce.strategy) << "," << ce.choice.t.get_str() << "," << to_string(ce.choice.rounding)
        << "," << to_decimal(ce.choice.rounding, 6) << ",";
    if (ce.choice.r_sq)
      csv << to_string(*ce.choice.r_sq) << "," << sqrt_decimal(*ce.choice.r_sq, 6);
    else
      csv << ",";
    csv << "," << to_string(ce.choice.n_sq) << "," << sqrt_decimal(ce.choice.n_sq, 6) << ",";
    if (ce.cut)
      csv << vec_to_string(ce.cut->pi) << "," << ce.cut->pi0.get_str();
    else
      csv << ",";
    csv << "," << to_string(ce.gap_pct) << "," << to_decimal(ce.gap_pct, 6) << ","
        << (ce.choice.approx ? 1 : 0) << "," << (ce.choice.trivial ? 1 : 0) << "\n";
  }
  emit(out_path, csv.str());
  return kExitOk;
}

void print_basis(const char* label, const LatticeBasis& basis) {
  for (int i = 0; i < basis.dim(); ++i) std::cout << label << ": " << to_string(basis.vector(i)) << "\n";
}

int cmd_lattice(const std::string& nuspec, const std::string& action, const std::string& target_s,
                const std::string& tol_s) {
  NuForm nu = parse_nuspec(nuspec);
  LatticeBasis basis = basis_from_nu(nu);
  std::cout << "d: " << nu.dim() << "\n";
  std::cout << "q: " << nu.q.get_str() << "\n";
  if (action == "basis") {
    print_basis("basis", basis);
    std::cout << "det: " << to_string(basis.det_abs()) << " (" << to_decimal(basis.det_abs(), 12) << ")\n";
  } else if (action == "lll") {
    LatticeBasis red = lll_reduce(basis);
    print_basis("basis", red);
    std::cout << "det: " << to_string(red.det_abs()) << "\n";
  } else if (action == "tau") {
    CoveringRadiusBounds tau = covering_radius_bounds(basis, parse_rational(tol_s));
    std::cout << "tau_lower: " << to_string(tau.lower) << " (" << to_decimal(tau.lower, 12) << ")\n";
    std::cout << "tau_upper: " << to_string(tau.upper) << " (" << to_decimal(tau.upper, 12) << ")\n";
    std::cout << "tol: " << to_string(tau.tol) << "\n";
  } else if (action == "sv") {
    auto [vec, nsq] = shortest_vector(basis);
    std::cout << "sv: " << to_string(vec) << "\n";
    std::cout << "norm_sq: " << to_string(nsq) << "\n";
    std::cout << "norm: " << sqrt_decimal(nsq, 12) << "\n";
  } else if (action == "dual") {
    print_basis("dual", dual_basis(basis));
    std::cout << "det: " << to_string(dual_basis(basis).det_abs()) << "\n";
  } else if (action == "babai") {
    if (target_s.empty()) throw InputError("lattice babai: --target is required");
    RatVec target = parse_rational_vector(target_s);
    if (static_cast<int>(target.size()) != nu.dim()) throw InputError("lattice babai: target has wrong dimension");
    RatVec point = babai_nearest_plane(lll_reduce(basis), target);
    std::cout << "babai: " << to_string(point) << "\n";
    std::cout << "dist_sq: " << to_string(norm_sq(sub(point, target))) << "\n";
  } else {
    throw InputError("lattice: unknown action '" + action + "'");
  }
  return kExitOk;
}

int cmd_table1(const std::string& config_path, uint64_t seed, bool seed_set, const std::string& out_path) {
  ExperimentConfig cfg;
  if (!config_path.empty()) cfg = load_config(config_path);
  if (seed_set) cfg.seed = seed;
  Table1Result result = run_table1(cfg);
  for (const auto& row : result.instances) {
    if (row.discarded)
      std::cerr << "discarded instance (" << row.m << "," << row.n << "," << row.k
                << "): basis_det = " << row.basis_det.get_str() << "\n";
    if (row.no_gap)
      std::cerr << "skipped instance (" << row.m << "," << row.n << "," << row.k << "): no integrality gap\n";
  }
  emit(out_path, result.to_csv());
  return kExitOk;
}

int cmd_mc(int d, long t_bound, int samples, const std::string& grid_s, const std::string& tol_s,
           uint64_t seed, const std::string& out_path) {
  RatVec grid = parse_rational_vector(grid_s);
  TailEstimate est = mc_theorem1(d, Integer(t_bound), samples, grid, parse_rational(tol_s), seed);
  emit(out_path, est.to_csv());
  std::cerr << "slope: " << est.slope << " stderr: " << est.slope_stderr << " fit_points: " << est.fit_points
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chvatal-Gomory cut iteration toolkit"};
  app.require_subcommand(1);

  std::string instance_path, out_path, nuspec, action = "basis", target_s, config_path;
  std::string strategy_sel = "all", eps_s = "1/64", delta_s = "1/64", tol_s = "1/64";
  std::string grid_s = "1 1.1 1.2 1.35 1.5 1.7 1.9 2.2 2.5 2.9 3.4 4 4.7 5.5 6.5 8 10.5";
  bool with_ilp = false, seed_set = false;
  uint64_t seed = 1;
  int mc_d = 2, mc_samples = 2000;
  long mc_t = 200;

  auto* solve = app.add_subcommand("solve", "solve the LP relaxation (and optionally the ILP) exactly");
  solve->add_option("instance", instance_path, "instance JSON file")->required();
  solve->add_flag("--ilp", with_ilp, "also solve the integer program");

  auto* cuts = app.add_subcommand("cuts", "generate CG cuts and score every strategy");
  cuts->add_option("instance", instance_path, "instance JSON file")->required();
  cuts->add_option("--strategy", strategy_sel, "0..5, approx-mult, approx-add or all");
  cuts->add_option("--eps", eps_s, "tolerance for approx-mult");
  cuts->add_option("--delta", delta_s, "tolerance for approx-add");
  cuts->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* lattice = app.add_subcommand("lattice", "lattice toolkit for L_nu");
  lattice->add_option("nu", nuspec, "nu spec: \"1/4 3/4\", JSON {p,q}, or a file")->required();
  lattice->add_option("--action", action, "basis | lll | tau | sv | dual | babai");
  lattice->add_option("--target", target_s, "target vector for babai");
  lattice->add_option("--tol", tol_s, "covering radius tolerance");

  auto* table1 = app.add_subcommand("table1", "run the strategy-comparison experiment grid");
  table1->add_option("config", config_path, "experiment config JSON (defaults if omitted)");
  table1->add_option("--seed", seed, "override the RNG seed")->each([&](const std::string&) { seed_set = true; });
  table1->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* mc = app.add_subcommand("mc", "Monte-Carlo covering-radius tail study");
  mc->add_option("--d", mc_d, "dimension (2 or 3)");
  mc->add_option("--T", mc_t, "denominator bound");
  mc->add_option("--samples", mc_samples, "sample count");
  mc->add_option("--R-grid", grid_s, "whitespace-separated R grid");
  mc->add_option("--tol", tol_s, "covering radius tolerance");
  mc->add_option("--seed", seed, "RNG seed");
  mc->add_option("--out", out_path, "write CSV here instead of stdout");

  auto* iterates = app.add_subcommand("iterates", "emit all points t nu mod 1");
  iterates->add_option("nu", nuspec, "nu spec")->required();
  iterates->add_option("--out", out_path, "write CSV here instead of stdout");

  try {
    app.parse(argc, argv);
    if (solve->parsed()) return cmd_solve(instance_path, with_ilp);
    if (cuts->parsed()) return cmd_cuts(instance_path, strategy_sel, eps_s, delta_s, out_path);
    if (lattice->parsed()) return cmd_lattice(nuspec, action, target_s, tol_s);
    if (table1->parsed()) return cmd_table1(config_path, seed, seed_set, out_path);
    if (mc->parsed()) return cmd_mc(mc_d, mc_t, mc_samples, grid_s, tol_s, seed, out_path);
    if (iterates->parsed()) {
      emit(out_path, iterates_csv(parse_nuspec(nuspec)));
      return kExitOk;
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitInput;
  } catch (const cgiter::CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const cgiter::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
