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

#ifndef DPLP_LP_HPP_
#define DPLP_LP_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dplp {

// Maximization program over the nonnegative orthant:
//
//   max c'x   s.t.   A x <= b,   A_eq x = b_eq,   x >= 0.
//
// The equality block may be empty (0 rows). Equality rows are structural
// (flow conservation and the like) and are never privatized; all sensitivity
// metadata refers to the inequality block and the objective.
struct LinearProgramInstance {
  Eigen::VectorXd c;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::MatrixXd A_eq;  // 0 x n when absent
  Eigen::VectorXd b_eq;  // size 0 when absent

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_ineq() const { return static_cast<int>(A.rows()); }
  int num_eq() const { return static_cast<int>(A_eq.rows()); }

  // Throws std::invalid_argument on dimension mismatch or non-finite data.
  void validate() const;
};

// Which coordinates of a program depend on the protected data, how far each
// can move between adjacent databases, and the public worst-case envelope
// that the clamp step is allowed to rely on.
struct SensitivityProfile {
  double delta11_A = 0.0;  // max entrywise change of A across adjacent databases
  double delta1_b = 0.0;   // max l1 change of b
  double delta1_c = 0.0;   // max l1 change of c
  Eigen::MatrixXi mask_A;  // 1 where an entry of A may be nonzero for some database
  Eigen::VectorXi mask_c;  // 1 where an entry of c is data-dependent
  Eigen::MatrixXd A_sup;   // elementwise upper envelope of A over all databases
  Eigen::VectorXd b_inf;   // elementwise lower envelope of b over all databases
};

// Total privacy budget and its allocation across the three mechanisms.
// A component whose alpha is zero must be excluded from privatization
// (partial mode); mechanisms never run with zero budget.
struct PrivacyBudget {
  double eps = 0.0;
  double delta = 0.0;
  double alpha_A = 0.0;
  double alpha_b = 0.0;
  double alpha_c = 0.0;

  // Throws std::invalid_argument unless eps > 0, delta in (0, 1/2], all
  // alphas nonnegative, and alpha_A + alpha_b + alpha_c = 1 within 1e-12.
  void validate() const;
};

inline constexpr double kDefaultFeasTol = 1e-9;

// Componentwise feasibility at absolute tolerance tol:
//   A x <= b + tol,  |A_eq x - b_eq| <= tol,  x >= -tol.
bool check_feasible(const Eigen::VectorXd& x, const LinearProgramInstance& lp,
                    double tol = kDefaultFeasTol);

// The canonical dual of a pure-inequality instance, expressed in the same
// maximize-over-the-nonnegative-orthant form:
//
//   min b'mu  s.t.  A'mu >= c, mu >= 0
//   ==  max (-b)'mu  s.t.  (-A')mu <= -c, mu >= 0.
//
// Applying dual_of twice returns the original data exactly. Throws
// std::invalid_argument if lp carries equality rows (their duals are free
// variables, which this primal form cannot encode).
LinearProgramInstance dual_of(const LinearProgramInstance& lp);

// Structural consistency of a profile against an instance. Returns
// human-readable violations; empty means consistent.
std::vector<std::string> validate_profile(const LinearProgramInstance& lp,
                                          const SensitivityProfile& profile);

}  // namespace dplp

#endif  // DPLP_LP_HPP_
