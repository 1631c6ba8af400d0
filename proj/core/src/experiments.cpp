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

#include "dplp/experiments.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "dplp/accuracy.hpp"
#include "dplp/privatizer.hpp"
#include "dplp/solver.hpp"

namespace dplp {
namespace {

constexpr double kAdBound = 1e7;
// Substream tag for the fixed-instance draw; trial indices stay well below.
constexpr std::uint64_t kInstanceTag = ~0ull;
constexpr const char* kCsvHeader =
    "grid_param,value,mean_subopt_pct,std_subopt_pct,violations,"
    "case_one_frac,samples,seed";

struct AdInstance {
  LinearProgramInstance lp;
  SensitivityProfile prof;
  SolveResult base;
};

// Draws until the reference problem is solvable with a nonzero optimum
// (all-zero price draws are astronomically rare but would poison a ratio).
AdInstance draw_instance(int N, int M, const SweepConfig& cfg,
                         const CounterRng& rng) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    AdInstance inst;
    std::tie(inst.lp, inst.prof) = gen_ad_instance(N, M, rng.split(k));
    inst.prof.delta11_A = cfg.delta11_A;
    inst.prof.delta1_b = cfg.delta1_b;
    inst.prof.delta1_c = cfg.delta1_c;
    inst.base = solve(inst.lp);
    if (inst.base.status == SolveStatus::kOptimal &&
        inst.lp.c.dot(inst.base.x) != 0.0) {
      return inst;
    }
  }
  throw std::runtime_error("run_sweep: instance stream kept degenerating");
}

ComponentSet components_for(PrivacyMode mode) {
  switch (mode) {
    case PrivacyMode::kFull:
      return ComponentSet{true, true, true};
    case PrivacyMode::kPartialAc:
      return ComponentSet{true, false, true};
    case PrivacyMode::kPartialB:
      return ComponentSet{false, true, false};
  }
  return ComponentSet{true, true, true};
}

PrivacyBudget budget_for(const SweepConfig& cfg, double eps) {
  PrivacyBudget b;
  b.eps = eps;
  b.delta = cfg.delta;
  switch (cfg.mode) {
    case PrivacyMode::kFull:
      b.alpha_A = cfg.alpha_A;
      b.alpha_b = cfg.alpha_b;
      b.alpha_c = cfg.alpha_c;
      break;
    case PrivacyMode::kPartialAc:
      b.alpha_A = 0.5;
      b.alpha_b = 0.0;
      b.alpha_c = 0.5;
      break;
    case PrivacyMode::kPartialB:
      b.alpha_A = 0.0;
      b.alpha_b = 1.0;
      b.alpha_c = 0.0;
      break;
  }
  return b;
}

SweepRow finish_row(const SweepConfig& cfg, const char* param, double value,
                    const std::vector<double>& subopts, long violations,
                    long case1) {
  SweepRow row;
  row.grid_param = param;
  row.value = value;
  row.samples = static_cast<int>(subopts.size());
  row.seed = cfg.master_seed;
  row.violations = violations;
  row.case_one_frac =
      subopts.empty() ? 0.0
                      : static_cast<double>(case1) /
                            static_cast<double>(subopts.size());
  double mean = 0.0;
  for (double v : subopts) mean += v;
  if (!subopts.empty()) mean /= static_cast<double>(subopts.size());
  double var = 0.0;
  for (double v : subopts) var += (v - mean) * (v - mean);
  row.mean_subopt_pct = mean;
  row.std_subopt_pct =
      subopts.size() > 1
          ? std::sqrt(var / static_cast<double>(subopts.size() - 1))
          : 0.0;
  return row;
}

SweepRow run_ad_point(const SweepConfig& cfg, const char* param, double value,
                      int N, int M, double eps, const PrivacyBudget& budget,
                      const ComponentSet& comps, int grid_index) {
  const CounterRng grid_rng =
      CounterRng::seeded(cfg.master_seed).split(grid_index);
  std::optional<AdInstance> fixed;
  if (!cfg.fresh_instance) {
    fixed.emplace(draw_instance(N, M, cfg, grid_rng.split(kInstanceTag)));
  }

  std::vector<double> subopts;
  subopts.reserve(cfg.samples);
  long violations = 0;
  long case1 = 0;
  for (int t = 0; t < cfg.samples; ++t) {
    const CounterRng trial = grid_rng.split(static_cast<std::uint64_t>(t));
    std::optional<AdInstance> local;
    if (cfg.fresh_instance) {
      local.emplace(draw_instance(N, M, cfg, trial.split(0)));
    }
    const AdInstance& inst = cfg.fresh_instance ? *local : *fixed;

    SensitivityProfile prof = inst.prof;
    if (comps.b && budget.alpha_b > 0.0 && prof.delta1_b > 0.0) {
      const double s_b =
          support_b(prof.delta1_b, budget.alpha_b * eps,
                    budget.alpha_b * cfg.delta, inst.lp.num_ineq(),
                    cfg.variant);
      prof.b_inf =
          (inst.lp.b.array() - cfg.b_inf_drop * s_b).max(0.0).matrix();
    }

    const PrivatizedProgram priv = privatize_partial(
        inst.lp, prof, budget, comps, trial.split(1), cfg.variant);
    SolveResult res;
    if (cfg.debug_unclamped) {
      // Raw two-sided noise, no shift, no clamp: the guarantee is gone and
      // violations become observable.
      LinearProgramInstance dbg = inst.lp;
      dbg.A += priv.noise_A;
      dbg.b += priv.noise_b;
      dbg.c += priv.noise_c;
      res = solve(dbg);
    } else {
      res = solve(priv.lp_tilde);
    }
    if (res.status != SolveStatus::kOptimal) {
      throw InfeasibleEnvelope(
          "run_sweep: private program was not solvable; envelope too tight");
    }
    if (!check_feasible(res.x, inst.lp, 1e-7)) ++violations;
    if (priv.case_one) ++case1;
    subopts.push_back(100.0 *
                      sub_optimality(inst.lp.c, inst.base.x, res.x));
  }
  return finish_row(cfg, param, value, subopts, violations, case1);
}

SweepRow run_cmdp_point(const SweepConfig& cfg, double eps, int grid_index) {
  const CmdpSpec spec = build_gridworld(cfg.grid);
  const LinearProgramInstance lp = build_occupancy_lp(spec);
  const SensitivityProfile prof =
      build_cmdp_profile(spec, cfg.cmdp_delta11_A, cfg.cmdp_delta1_b);
  const int s0 = cfg.grid.start.y * cfg.grid.width + cfg.grid.start.x;

  const SolveResult base = solve(lp);
  if (base.status != SolveStatus::kOptimal) {
    throw std::runtime_error("run_sweep: reference policy program failed");
  }
  const Policy pi_star =
      policy_from_occupancy(base.x, spec.num_states, spec.num_actions);
  const double v_star = value_of_policy(spec, pi_star, s0);

  PrivacyBudget budget;
  budget.eps = eps;
  budget.delta = cfg.delta;
  budget.alpha_A = cfg.alpha_A;
  budget.alpha_b = cfg.alpha_b;
  budget.alpha_c = cfg.alpha_c;
  const ComponentSet comps{budget.alpha_A > 0.0, budget.alpha_b > 0.0,
                           budget.alpha_c > 0.0};

  const CounterRng grid_rng =
      CounterRng::seeded(cfg.master_seed).split(grid_index);
  std::vector<double> costs;
  costs.reserve(cfg.samples);
  long violations = 0;
  long case1 = 0;
  for (int t = 0; t < cfg.samples; ++t) {
    const CounterRng trial = grid_rng.split(static_cast<std::uint64_t>(t));
    const PrivatizedProgram priv =
        privatize_partial(lp, prof, budget, comps, trial.split(1), cfg.variant);
    const SolveResult res = solve(priv.lp_tilde);
    if (res.status != SolveStatus::kOptimal) {
      throw InfeasibleEnvelope(
          "run_sweep: private policy program was not solvable");
    }
    if (!check_feasible(res.x, lp, 1e-7)) ++violations;
    if (priv.case_one) ++case1;
    const Policy pol =
        policy_from_occupancy(res.x, spec.num_states, spec.num_actions);
    const double v = value_of_policy(spec, pol, s0);
    costs.push_back(100.0 * std::abs(cost_of_privacy(v, v_star)));
  }
  return finish_row(cfg, "eps", eps, costs, violations, case1);
}

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("parse_csv: bad numeric field '" + s + "'");
  }
  return v;
}

template <typename T>
T parse_int(const std::string& s) {
  T v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::runtime_error("parse_csv: bad integer field '" + s + "'");
  }
  return v;
}

}  // namespace

std::pair<LinearProgramInstance, SensitivityProfile> gen_ad_instance(
    int N, int M, const CounterRng& rng) {
  if (N < 1 || M < 1) {
    throw std::invalid_argument("gen_ad_instance: N and M must be >= 1");
  }
  const int n = N * M;
  const int m = N + M;
  CounterRng stream = rng;

  // Two draws per price regardless of the zero branch keeps the
  // entry-to-draw mapping fixed.
  Eigen::MatrixXd price(N, M);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < M; ++j) {
      const double gate = stream.next_open01();
      const double val = stream.next_open01();
      price(i, j) = gate < 0.2 ? 0.0 : val;
    }
  }

  LinearProgramInstance lp;
  lp.c = Eigen::VectorXd::Zero(n);
  lp.A = Eigen::MatrixXd::Zero(m, n);
  lp.b = Eigen::VectorXd::Constant(m, kAdBound);
  lp.A_eq = Eigen::MatrixXd::Zero(0, n);
  lp.b_eq = Eigen::VectorXd::Zero(0);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < M; ++j) {
      const int v = i * M + j;
      lp.c(v) = price(i, j);
      lp.A(i, v) = 1.0;              // capacity row, public
      lp.A(N + j, v) = price(i, j);  // budget row, sensitive where nonzero
    }
  }

  SensitivityProfile prof;
  prof.delta11_A = 1.0;
  prof.delta1_b = 1.0;
  prof.delta1_c = 1.0;
  prof.mask_A = Eigen::MatrixXi::Zero(m, n);
  prof.mask_c = Eigen::VectorXi::Zero(n);
  prof.A_sup = lp.A;
  prof.b_inf = lp.b;
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < M; ++j) {
      const int v = i * M + j;
      // Capacity coefficients are nonzero, so they take the noise-and-clamp
      // path; their envelope is their exact public value, which the clamp
      // restores bit-for-bit (the shift is nonnegative).
      prof.mask_A(i, v) = 1;
      if (price(i, j) == 0.0) continue;
      prof.mask_A(N + j, v) = 1;
      prof.mask_c(v) = 1;
      prof.A_sup(N + j, v) = 1.0;
    }
  }
  return {std::move(lp), std::move(prof)};
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.samples < 1) {
    throw std::invalid_argument("run_sweep: samples must be >= 1");
  }
  std::vector<SweepRow> rows;
  switch (cfg.kind) {
    case SweepKind::kAdEps: {
      const ComponentSet comps = components_for(cfg.mode);
      for (std::size_t gi = 0; gi < cfg.eps_grid.size(); ++gi) {
        const double eps = cfg.eps_grid[gi];
        if (!(eps > 0.0)) {
          throw std::invalid_argument("run_sweep: eps grid must be positive");
        }
        rows.push_back(run_ad_point(cfg, "eps", eps, cfg.N, cfg.M, eps,
                                    budget_for(cfg, eps), comps,
                                    static_cast<int>(gi)));
      }
      break;
    }
    case SweepKind::kAdSize: {
      const ComponentSet comps = components_for(cfg.mode);
      const PrivacyBudget budget = budget_for(cfg, cfg.eps);
      for (std::size_t gi = 0; gi < cfg.size_grid.size(); ++gi) {
        const int M = cfg.size_grid[gi];
        rows.push_back(run_ad_point(cfg, "M", static_cast<double>(M), cfg.N,
                                    M, cfg.eps, budget, comps,
                                    static_cast<int>(gi)));
      }
      break;
    }
    case SweepKind::kBudget: {
      for (std::size_t gi = 0; gi < cfg.alpha_c_grid.size(); ++gi) {
        const double ac = cfg.alpha_c_grid[gi];
        PrivacyBudget budget;
        budget.eps = cfg.eps;
        budget.delta = cfg.delta;
        budget.alpha_c = ac;
        budget.alpha_A = (1.0 - ac) / 2.0;
        budget.alpha_b = (1.0 - ac) / 2.0;
        rows.push_back(run_ad_point(cfg, "alpha_c", ac, cfg.N, cfg.M, cfg.eps,
                                    budget, ComponentSet{true, true, true},
                                    static_cast<int>(gi)));
      }
      break;
    }
    case SweepKind::kCmdp: {
      for (std::size_t gi = 0; gi < cfg.eps_grid.size(); ++gi) {
        rows.push_back(
            run_cmdp_point(cfg, cfg.eps_grid[gi], static_cast<int>(gi)));
      }
      break;
    }
  }
  return rows;
}

void emit_csv(const std::vector<SweepRow>& table, const std::string& path) {
  if (table.empty()) {
    throw std::invalid_argument("emit_csv: empty table");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("emit_csv: cannot open '" + path + "'");
  }
  out << kCsvHeader << "\n";
  for (const auto& row : table) {
    out << row.grid_param << ',' << fmt_double(row.value) << ','
        << fmt_double(row.mean_subopt_pct) << ','
        << fmt_double(row.std_subopt_pct) << ',' << row.violations << ','
        << fmt_double(row.case_one_frac) << ',' << row.samples << ','
        << row.seed << "\n";
  }
  out.flush();
  if (!out) {
    throw std::runtime_error("emit_csv: write failed for '" + path + "'");
  }
}

std::vector<SweepRow> parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("parse_csv: cannot open '" + path + "'");
  }
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::runtime_error("parse_csv: missing or mismatched header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_fields(line);
    if (f.size() != 8) {
      throw std::runtime_error("parse_csv: expected 8 fields per row");
    }
    SweepRow row;
    row.grid_param = f[0];
    row.value = parse_double(f[1]);
    row.mean_subopt_pct = parse_double(f[2]);
    row.std_subopt_pct = parse_double(f[3]);
    row.violations = parse_int<long>(f[4]);
    row.case_one_frac = parse_double(f[5]);
    row.samples = parse_int<int>(f[6]);
    row.seed = parse_int<std::uint64_t>(f[7]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dplp
