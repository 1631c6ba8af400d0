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

#include "dplp/privatizer.hpp"

#include <sstream>
#include <string>

namespace dplp {
namespace {

void require_share(bool selected, double sensitivity, double alpha,
                   const char* name) {
  if (selected && sensitivity > 0.0 && alpha <= 0.0) {
    throw std::invalid_argument(std::string("privatize: selected block ") +
                                name + " has positive sensitivity but a zero "
                                "budget share");
  }
  if (!selected && alpha != 0.0) {
    throw std::invalid_argument(std::string("privatize: omitted block ") +
                                name + " carries a nonzero budget share");
  }
}

}  // namespace

PrivatizedProgram privatize_partial(const LinearProgramInstance& lp,
                                    const SensitivityProfile& profile,
                                    const PrivacyBudget& budget,
                                    const ComponentSet& components,
                                    const CounterRng& rng,
                                    SupportVariant variant) {
  lp.validate();
  // An empty component set is the identity and consumes no budget, so the
  // shares-sum-to-one rule does not apply; require_share below still forces
  // every share to zero in that case.
  if (components.A || components.b || components.c) {
    budget.validate();
  }
  const std::vector<std::string> issues = validate_profile(lp, profile);
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << "privatize: invalid sensitivity profile:";
    for (const auto& s : issues) msg << "\n  " << s;
    throw std::invalid_argument(msg.str());
  }
  require_share(components.A, profile.delta11_A, budget.alpha_A, "A");
  require_share(components.b, profile.delta1_b, budget.alpha_b, "b");
  require_share(components.c, profile.delta1_c, budget.alpha_c, "c");

  const int m = lp.num_ineq();
  const int n = lp.num_vars();

  PrivatizedProgram out;
  out.lp_tilde = lp;
  out.noise_A = Eigen::MatrixXd::Zero(m, n);
  out.noise_b = Eigen::VectorXd::Zero(m);
  out.noise_c = Eigen::VectorXd::Zero(n);
  out.clamped_A = Eigen::MatrixXi::Zero(m, n);
  out.clamped_b = Eigen::VectorXi::Zero(m);
  out.variant = variant;
  out.components = components;

  const bool do_A = components.A && profile.delta11_A > 0.0;
  const bool do_b = components.b && profile.delta1_b > 0.0;
  const bool do_c = components.c && profile.delta1_c > 0.0;

  if (do_A) {
    const double eps_A = budget.alpha_A * budget.eps;
    const double delta_A = budget.alpha_A * budget.delta;
    out.sigma_A = profile.delta11_A / eps_A;
    out.s_A = support_A(profile.delta11_A, eps_A, delta_A, m, n, variant);
    const TruncatedLaplace dist{out.sigma_A, out.s_A};
    CounterRng stream = rng.split(0);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        if (profile.mask_A(i, j) == 0) continue;
        const double z = sample_trunc_laplace(dist, stream);
        out.noise_A(i, j) = z;
        // z >= -s_A exactly, so the shift is nonnegative and rounding keeps
        // the shifted entry at or above the original.
        const double shifted = lp.A(i, j) + (out.s_A + z);
        if (shifted > profile.A_sup(i, j)) {
          out.lp_tilde.A(i, j) = profile.A_sup(i, j);
          out.clamped_A(i, j) = 1;
        } else {
          out.lp_tilde.A(i, j) = shifted;
        }
      }
    }
  }

  if (do_b) {
    const double eps_b = budget.alpha_b * budget.eps;
    const double delta_b = budget.alpha_b * budget.delta;
    out.sigma_b = profile.delta1_b / eps_b;
    out.s_b = support_b(profile.delta1_b, eps_b, delta_b, m, variant);
    const TruncatedLaplace dist{out.sigma_b, out.s_b};
    CounterRng stream = rng.split(1);
    for (int i = 0; i < m; ++i) {
      const double z = sample_trunc_laplace(dist, stream);
      out.noise_b(i) = z;
      // z <= s_b exactly, so the drop is nonnegative and rounding keeps the
      // dropped entry at or below the original.
      const double dropped = lp.b(i) - (out.s_b - z);
      if (dropped < profile.b_inf(i)) {
        out.lp_tilde.b(i) = profile.b_inf(i);
        out.clamped_b(i) = 1;
      } else {
        out.lp_tilde.b(i) = dropped;
      }
    }
  }

  if (do_c) {
    const double eps_c = budget.alpha_c * budget.eps;
    out.sigma_c = profile.delta1_c / eps_c;
    const Laplace dist{out.sigma_c};
    CounterRng stream = rng.split(2);
    for (int j = 0; j < n; ++j) {
      if (profile.mask_c(j) == 0) continue;
      const double z = sample_laplace(dist, stream);
      out.noise_c(j) = z;
      out.lp_tilde.c(j) = lp.c(j) + z;
    }
  }

  out.case_one = (out.clamped_A.array() == 0).all() &&
                 (out.clamped_b.array() == 0).all();
  const double share = (components.A ? budget.alpha_A : 0.0) +
                       (components.b ? budget.alpha_b : 0.0) +
                       (components.c ? budget.alpha_c : 0.0);
  out.eps_spent = share * budget.eps;
  out.delta_spent = share * budget.delta;
  return out;
}

PrivatizedProgram privatize(const LinearProgramInstance& lp,
                            const SensitivityProfile& profile,
                            const PrivacyBudget& budget, const CounterRng& rng,
                            SupportVariant variant) {
  return privatize_partial(lp, profile, budget, ComponentSet{true, true, true},
                           rng, variant);
}

std::pair<PrivatizedProgram, SolveResult> solve_private(
    const LinearProgramInstance& lp, const SensitivityProfile& profile,
    const PrivacyBudget& budget, const CounterRng& rng,
    SupportVariant variant) {
  PrivatizedProgram priv = privatize(lp, profile, budget, rng, variant);
  SolveResult res = solve(priv.lp_tilde);
  if (res.status == SolveStatus::kInfeasible) {
    throw InfeasibleEnvelope(
        "solve_private: private program infeasible; the A_sup/b_inf envelope "
        "is too tight to guarantee perturbed feasibility");
  }
  if (res.status == SolveStatus::kOptimal &&
      !check_feasible(res.x, lp, 1e-7)) {
    throw FeasibilityViolation(
        "solve_private: private solution violates the original constraints "
        "beyond tolerance 1e-7");
  }
  return {std::move(priv), std::move(res)};
}

}  // namespace dplp
