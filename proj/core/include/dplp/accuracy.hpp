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

#ifndef DPLP_ACCURACY_HPP_
#define DPLP_ACCURACY_HPP_

#include <vector>

#include "dplp/lp.hpp"
#include "dplp/privatizer.hpp"
#include "dplp/rng.hpp"
#include "dplp/solver.hpp"

namespace dplp {

// Everything the closed-form error radius needs besides the instance itself.
// row_nnz / col_nnz count masked constraint entries per row / per column;
// n0c counts sensitive objective entries.
struct AccuracyInputs {
  double chi = 0.0;         // bound on the largest primal coordinate
  double lambda_cap = 0.0;  // bound on the largest dual coordinate
  Eigen::VectorXi row_nnz;
  Eigen::VectorXi col_nnz;
  int n0c = 0;
  double s_A = 0.0;
  double s_b = 0.0;
  double sigma_A = 0.0;
  double sigma_b = 0.0;
  double sigma_c = 0.0;
  Eigen::MatrixXd A_sup;
  Eigen::VectorXd b_inf;
};

struct AccuracyReport {
  double rho = 0.0;
  bool case_one = true;
  double bound = 0.0;  // ||c||_2 * H * rho for the supplied H
  double empirical_subopt = 0.0;
  double residual_norm = 0.0;
};

struct ConcentrationResult {
  double threshold = 0.0;   // nu = diam * sqrt(ln(1/t) / 2)
  double exceedance = 0.0;  // fraction of samples with R - mean(R) >= nu
};

// Largest coordinate of an optimal solution, floored at zero. Callers that
// bound over a database family take the max of this over sampled solutions
// or supply a domain-knowledge override.
double chi_from_solution(const Eigen::VectorXd& x_star);

// Dual-norm cap (c'eta - c'omega) / min_i (b - A omega)_i, floored at zero.
// omega must be strictly interior; a nonpositive margin throws.
double lambda_bound(const LinearProgramInstance& lp, const Eigen::VectorXd& eta,
                    const Eigen::VectorXd& omega);

// Fills the count/scale/support fields from the profile and budget exactly
// as the privatizer realizes them; chi and lambda_cap are supplied by the
// caller. Component scales are zero when that block takes no noise.
AccuracyInputs make_accuracy_inputs(const LinearProgramInstance& lp,
                                    const SensitivityProfile& profile,
                                    const PrivacyBudget& budget, double chi,
                                    double lambda_cap,
                                    SupportVariant variant = SupportVariant::kLemma);

// Closed-form radius of the expected perturbation. Case one applies when no
// clamp fired (pure shifted-noise form); case two bounds through the
// envelope extremes: the clamp ceilings A_sup for A and the floor b_inf for
// b, with differences taken on masked entries for A and everywhere for b.
double rho(const AccuracyInputs& inputs, const LinearProgramInstance& lp,
           bool case_one);

// Euclidean norm of the stacked optimality-system violation of the private
// primal-dual pair under the original data: negative part of the primal
// slack shift, positive part of the dual slack shift, and the duality-gap
// shift. Zero when the privatization is the identity.
double robinson_residual(const LinearProgramInstance& lp,
                         const PrivatizedProgram& priv,
                         const SolveResult& tilde_result);

// Max over trials of ||(x*, mu*) - (x~*, mu~*)||_2 / robinson_residual,
// skipping trials with residual below 1e-12. A lower bound on the true
// perturbation constant. Throws when no trial produces a usable residual.
double hoffman_empirical(const LinearProgramInstance& lp,
                         const SensitivityProfile& profile,
                         const PrivacyBudget& budget, int trials,
                         const CounterRng& rng);

// (c'x* - c'x_tilde) / c'x*; throws on a zero optimal value.
double sub_optimality(const Eigen::VectorXd& c, const Eigen::VectorXd& x_star,
                      const Eigen::VectorXd& x_tilde);

// One-sided concentration tally: threshold nu = diam * sqrt(ln(1/t)/2) and
// the fraction of samples at or above mean + nu. The standard bounded-range
// bound predicts exceedance <= t.
ConcentrationResult concentration_check(const std::vector<double>& r_samples,
                                        double diam, double t);

}  // namespace dplp

#endif  // DPLP_ACCURACY_HPP_
