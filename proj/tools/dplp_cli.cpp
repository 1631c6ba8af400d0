// Copyright 2026 The dplp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Exit codes: 0 success, 1 usage or configuration
// error, 2 I/O error, 3 feasibility invariant falsified on a run that
// carries the guarantee.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dplp/accuracy.hpp"
#include "dplp/experiments.hpp"
#include "dplp/io.hpp"
#include "dplp/lp.hpp"
#include "dplp/mdp.hpp"
#include "dplp/privatizer.hpp"
#include "dplp/rng.hpp"
#include "dplp/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitInvariant = 3;

struct GlobalOpts {
  std::uint64_t seed = 1;
  bool seed_given = false;
  int samples = 0;  // 0 means "use the config value"
  std::string out;
  std::string config;
};

dplp::SweepConfig load_config(const GlobalOpts& g) {
  dplp::SweepConfig cfg;
  if (!g.config.empty()) cfg = dplp::read_sweep_config_file(g.config);
  if (g.seed_given) cfg.master_seed = g.seed;
  if (g.samples > 0) cfg.samples = g.samples;
  return cfg;
}

dplp::PrivacyBudget budget_from(const dplp::SweepConfig& cfg) {
  dplp::PrivacyBudget budget;
  budget.eps = cfg.eps;
  budget.delta = cfg.delta;
  budget.alpha_A = cfg.alpha_A;
  budget.alpha_b = cfg.alpha_b;
  budget.alpha_c = cfg.alpha_c;
  budget.validate();
  return budget;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    dplp::write_text_file(text, out_path);
  }
}

int run_solve(const std::string& instance_path, const GlobalOpts& g) {
  const dplp::InstanceFile inst = dplp::read_instance_file(instance_path);
  const dplp::SolveResult res = dplp::solve(inst.lp);
  emit(dplp::solve_result_to_json(res), g.out);
  return kExitOk;
}

int run_privatize(const std::string& instance_path, const GlobalOpts& g) {
  const dplp::InstanceFile inst = dplp::read_instance_file(instance_path);
  if (!inst.has_profile) {
    throw std::invalid_argument(
        "privatize: instance carries no sensitivity profile");
  }
  const dplp::SweepConfig cfg = load_config(g);
  const dplp::PrivacyBudget budget = budget_from(cfg);
  const dplp::ComponentSet comps{budget.alpha_A > 0.0, budget.alpha_b > 0.0,
                                 budget.alpha_c > 0.0};
  const dplp::PrivatizedProgram priv = dplp::privatize_partial(
      inst.lp, inst.profile, budget, comps,
      dplp::CounterRng::seeded(cfg.master_seed), cfg.variant);
  emit(dplp::privatized_to_json(priv), g.out);
  return kExitOk;
}

int run_validate(const std::string& instance_path) {
  const dplp::InstanceFile inst = dplp::read_instance_file(instance_path);
  std::cout << "instance ok: " << inst.lp.num_vars() << " vars, "
            << inst.lp.num_ineq() << " inequality rows, " << inst.lp.num_eq()
            << " equality rows, sensitivity profile "
            << (inst.has_profile ? "present" : "absent") << "\n";
  return kExitOk;
}

int run_sweep_cmd(const GlobalOpts& g, bool force_cmdp) {
  dplp::SweepConfig cfg = load_config(g);
  if (force_cmdp) {
    cfg.kind = dplp::SweepKind::kCmdp;
    if (g.config.empty()) {
      // Safety-constrained default split: nearly everything on the hazard
      // coefficients, a sliver on the budget, nothing on the public reward.
      cfg.alpha_A = 0.99;
      cfg.alpha_b = 0.01;
      cfg.alpha_c = 0.0;
    }
  }
  const std::vector<dplp::SweepRow> rows = dplp::run_sweep(cfg);
  const std::string out_path =
      g.out.empty() ? (force_cmdp ? "cmdp.csv" : "sweep.csv") : g.out;
  dplp::emit_csv(rows, out_path);

  long total_violations = 0;
  for (const auto& row : rows) total_violations += row.violations;
  std::cout << "wrote " << rows.size() << " rows to " << out_path
            << " (violations: " << total_violations << ")\n";
  if (total_violations > 0 && !cfg.debug_unclamped) {
    std::cerr << "feasibility guarantee falsified: " << total_violations
              << " violating trials\n";
    return kExitInvariant;
  }
  return kExitOk;
}

int run_accuracy(const std::string& instance_path, double t_conf,
                 const GlobalOpts& g) {
  const dplp::InstanceFile inst = dplp::read_instance_file(instance_path);
  if (!inst.has_profile) {
    throw std::invalid_argument(
        "accuracy: instance carries no sensitivity profile");
  }
  const dplp::SweepConfig cfg = load_config(g);
  const dplp::PrivacyBudget budget = budget_from(cfg);
  const dplp::ComponentSet comps{budget.alpha_A > 0.0, budget.alpha_b > 0.0,
                                 budget.alpha_c > 0.0};

  const dplp::SolveResult base = dplp::solve(inst.lp);
  if (base.status != dplp::SolveStatus::kOptimal) {
    throw std::invalid_argument("accuracy: reference program is " +
                                dplp::to_string(base.status));
  }
  const double chi = dplp::chi_from_solution(base.x);
  const dplp::SlaterPoint slater = dplp::slater_point(inst.lp);
  const double lam = dplp::lambda_bound(inst.lp, base.x, slater.omega);
  const dplp::AccuracyInputs inputs = dplp::make_accuracy_inputs(
      inst.lp, inst.profile, budget, chi, lam, cfg.variant);

  const dplp::CounterRng rng = dplp::CounterRng::seeded(cfg.master_seed);
  std::vector<double> subopts, displacements;
  long case1 = 0;
  double hoffman = 0.0;
  bool hoffman_usable = false;
  for (int k = 0; k < cfg.samples; ++k) {
    const dplp::PrivatizedProgram priv = dplp::privatize_partial(
        inst.lp, inst.profile, budget, comps, rng.split(k), cfg.variant);
    const dplp::SolveResult res = dplp::solve(priv.lp_tilde);
    if (res.status != dplp::SolveStatus::kOptimal) {
      throw dplp::InfeasibleEnvelope("accuracy: private program was " +
                                     dplp::to_string(res.status));
    }
    if (!dplp::check_feasible(res.x, inst.lp, 1e-7)) {
      throw dplp::FeasibilityViolation(
          "accuracy: private solution violates the original constraints");
    }
    subopts.push_back(dplp::sub_optimality(inst.lp.c, base.x, res.x));
    displacements.push_back((base.x - res.x).norm());
    if (priv.case_one) ++case1;
    // Same statistic as the library's empirical perturbation-constant
    // estimate, computed over these trials with the selected components.
    const double residual = dplp::robinson_residual(inst.lp, priv, res);
    if (residual >= 1e-12) {
      const double num = std::sqrt((base.x - res.x).squaredNorm() +
                                   (base.mu - res.mu).squaredNorm());
      hoffman = std::max(hoffman, num / residual);
      hoffman_usable = true;
    }
  }
  if (!hoffman_usable) {
    throw std::runtime_error(
        "accuracy: every trial was degenerate (zero perturbation residual)");
  }

  dplp::AccuracyCliReport report;
  double mean = 0.0;
  for (double v : subopts) mean += v;
  mean /= static_cast<double>(subopts.size());
  double var = 0.0;
  for (double v : subopts) var += (v - mean) * (v - mean);
  const double n = static_cast<double>(subopts.size());
  report.empirical_subopt_mean = mean;
  report.empirical_subopt_stderr =
      subopts.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
  report.case_one_fraction = static_cast<double>(case1) / n;
  report.rho = dplp::rho(inputs, inst.lp, report.case_one_fraction == 1.0);
  report.hoffman_lower_bound = hoffman;
  const double diam = dplp::diameter(inst.lp);
  const dplp::ConcentrationResult conc =
      dplp::concentration_check(displacements, diam, t_conf);
  report.t = t_conf;
  report.threshold = conc.threshold;
  report.exceedance = conc.exceedance;

  emit(dplp::accuracy_report_to_json(report), g.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Differentially private linear programming: privatize a program, "
      "solve it, and measure feasibility, accuracy, and concentration."};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--seed", g.seed, "Master seed for all randomness")
      ->each([&g](const std::string&) { g.seed_given = true; });
  app.add_option("--samples", g.samples,
                 "Monte-Carlo trials (overrides the config value)");
  app.add_option("--out", g.out, "Output path (default: stdout or <cmd>.csv)");
  app.add_option("--config", g.config,
                 "JSON sweep/budget configuration file")
      ->check(CLI::ExistingFile);

  std::string instance_path;
  double t_conf = 0.05;

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve an instance file exactly");
  solve_cmd->add_option("instance", instance_path, "Instance JSON")
      ->required();

  CLI::App* priv_cmd = app.add_subcommand(
      "privatize", "Privatize an instance and emit the program + provenance");
  priv_cmd->add_option("instance", instance_path, "Instance JSON")
      ->required();

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Run a Monte-Carlo sweep from a config and emit CSV");

  CLI::App* acc_cmd = app.add_subcommand(
      "accuracy", "Monte-Carlo accuracy, perturbation, and concentration "
                  "report for one instance");
  acc_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  acc_cmd->add_option("--t", t_conf,
                      "Concentration confidence parameter in (0, 1]");

  CLI::App* cmdp_cmd = app.add_subcommand(
      "cmdp", "Gridworld safety sweep: private hazard constraint, policy "
              "value cost");

  CLI::App* val_cmd = app.add_subcommand(
      "validate", "Check an instance file and its sensitivity profile");
  val_cmd->add_option("instance", instance_path, "Instance JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(instance_path, g);
    if (priv_cmd->parsed()) return run_privatize(instance_path, g);
    if (sweep_cmd->parsed()) return run_sweep_cmd(g, false);
    if (acc_cmd->parsed()) return run_accuracy(instance_path, t_conf, g);
    if (cmdp_cmd->parsed()) return run_sweep_cmd(g, true);
    if (val_cmd->parsed()) return run_validate(instance_path);
  } catch (const dplp::FeasibilityViolation& e) {
    std::cerr << "invariant falsified: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const dplp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
