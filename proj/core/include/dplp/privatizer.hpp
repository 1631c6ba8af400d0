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

#ifndef DPLP_PRIVATIZER_HPP_
#define DPLP_PRIVATIZER_HPP_

#include <stdexcept>
#include <utility>

#include "dplp/lp.hpp"
#include "dplp/privacy.hpp"
#include "dplp/rng.hpp"
#include "dplp/solver.hpp"

namespace dplp {

// Which blocks of the program receive a mechanism pass. Omitted blocks pass
// through unchanged and must carry a zero budget share.
struct ComponentSet {
  bool A = true;
  bool b = true;
  bool c = true;
};

// A privatized program plus full provenance of how it was produced.
//
// Invariants (exact, no tolerance):
//   lp_tilde.A == A wherever mask_A is 0; lp_tilde.A >= A on masked entries
//   and <= A_sup there; lp_tilde.b <= b and >= b_inf everywhere;
//   lp_tilde.c == c wherever mask_c is 0; case_one is true iff no clamp
//   fired anywhere.
struct PrivatizedProgram {
  LinearProgramInstance lp_tilde;
  Eigen::MatrixXd noise_A;    // raw truncated draws, zero off-mask
  Eigen::VectorXd noise_b;    // raw truncated draws, every entry
  Eigen::VectorXd noise_c;    // raw Laplace draws, zero off-mask
  Eigen::MatrixXi clamped_A;  // 1 where the upper clamp replaced the shift
  Eigen::VectorXi clamped_b;  // 1 where the lower clamp replaced the drop
  bool case_one = true;

  // Realized mechanism parameters; zero when the component took no noise.
  double s_A = 0.0;
  double s_b = 0.0;
  double sigma_A = 0.0;
  double sigma_b = 0.0;
  double sigma_c = 0.0;
  double eps_spent = 0.0;
  double delta_spent = 0.0;
  SupportVariant variant = SupportVariant::kLemma;
  ComponentSet components;
};

// Raised when the solution of the private program falsifies the
// original-constraint feasibility guarantee. This signals a defect, not an
// input error; the CLI maps it to its own exit code.
class FeasibilityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when the private program is infeasible, meaning the supplied
// A_sup / b_inf envelope is too tight to guarantee perturbed feasibility.
class InfeasibleEnvelope : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Runs the selected mechanism steps with budget shares (alpha_A, alpha_b,
// alpha_c): scales sigma = Delta / (alpha * eps) at equality, supports from
// the closed forms at (alpha*eps, alpha*delta), constraint noise shifted to
// be one-sided (A up by s_A + Z on masked entries, b down by s_b - z_b
// everywhere), then clamped into the [A, A_sup] / [b_inf, b] envelope.
// Monotone tightening is exact in floating point. Noise is drawn row-major
// per component from rng.split(0|1|2) for A|b|c, so a block's draws do not
// depend on which other blocks are selected. The caller's stream is never
// advanced. A block with zero sensitivity takes no noise.
//
// Throws std::invalid_argument when the profile or budget is invalid, when
// a selected block with positive sensitivity has a zero budget share, or
// when an omitted block carries a nonzero share.
PrivatizedProgram privatize_partial(const LinearProgramInstance& lp,
                                    const SensitivityProfile& profile,
                                    const PrivacyBudget& budget,
                                    const ComponentSet& components,
                                    const CounterRng& rng,
                                    SupportVariant variant = SupportVariant::kLemma);

// privatize_partial with all three blocks selected.
PrivatizedProgram privatize(const LinearProgramInstance& lp,
                            const SensitivityProfile& profile,
                            const PrivacyBudget& budget, const CounterRng& rng,
                            SupportVariant variant = SupportVariant::kLemma);

// Privatize, then solve the private program. On an Optimal status the
// solution is checked against the ORIGINAL constraints at tolerance 1e-7;
// a failure throws FeasibilityViolation. An Infeasible status throws
// InfeasibleEnvelope. Unbounded passes through for the caller to handle.
std::pair<PrivatizedProgram, SolveResult> solve_private(
    const LinearProgramInstance& lp, const SensitivityProfile& profile,
    const PrivacyBudget& budget, const CounterRng& rng,
    SupportVariant variant = SupportVariant::kLemma);

}  // namespace dplp

#endif  // DPLP_PRIVATIZER_HPP_
