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

#include "dplp/lp.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dplp {

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }
bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

void LinearProgramInstance::validate() const {
  const auto n = c.size();
  if (A.cols() != n || A.rows() != b.size()) {
    throw std::invalid_argument("inconsistent dimensions among c, A, b");
  }
  if (A_eq.rows() != b_eq.size() || (A_eq.rows() > 0 && A_eq.cols() != n)) {
    throw std::invalid_argument("inconsistent equality block dimensions");
  }
  if (!all_finite(c) || !all_finite(A) || !all_finite(b) ||
      !all_finite(Eigen::MatrixXd(A_eq)) || !all_finite(b_eq)) {
    throw std::invalid_argument("non-finite entry in program data");
  }
}

void PrivacyBudget::validate() const {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (!(delta > 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("delta must lie in (0, 1/2]");
  }
  if (alpha_A < 0.0 || alpha_b < 0.0 || alpha_c < 0.0) {
    throw std::invalid_argument("budget shares must be nonnegative");
  }
  if (std::abs(alpha_A + alpha_b + alpha_c - 1.0) > 1e-12) {
    throw std::invalid_argument("budget shares must sum to 1");
  }
}

bool check_feasible(const Eigen::VectorXd& x, const LinearProgramInstance& lp,
                    double tol) {
  if (x.size() != lp.num_vars()) {
    throw std::invalid_argument("solution dimension does not match program");
  }
  if ((x.array() < -tol).any()) return false;
  if (lp.num_ineq() > 0 && ((lp.A * x - lp.b).array() > tol).any()) {
    return false;
  }
  if (lp.num_eq() > 0 &&
      ((lp.A_eq * x - lp.b_eq).array().abs() > tol).any()) {
    return false;
  }
  return true;
}

LinearProgramInstance dual_of(const LinearProgramInstance& lp) {
  lp.validate();
  if (lp.num_eq() > 0) {
    throw std::invalid_argument(
        "dual_of is defined for pure-inequality programs");
  }
  LinearProgramInstance dual;
  dual.c = -lp.b;
  dual.A = -lp.A.transpose();
  dual.b = -lp.c;
  dual.A_eq.resize(0, lp.num_ineq());
  dual.b_eq.resize(0);
  return dual;
}

std::vector<std::string> validate_profile(const LinearProgramInstance& lp,
                                          const SensitivityProfile& profile) {
  std::vector<std::string> violations;
  auto report = [&violations](const std::string& msg) {
    violations.push_back(msg);
  };

  const int m = lp.num_ineq();
  const int n = lp.num_vars();
  if (profile.mask_A.rows() != m || profile.mask_A.cols() != n) {
    report("mask_A dimensions do not match A");
    return violations;  // remaining checks index by these dimensions
  }
  if (profile.A_sup.rows() != m || profile.A_sup.cols() != n) {
    report("A_sup dimensions do not match A");
    return violations;
  }
  if (profile.mask_c.size() != n) {
    report("mask_c length does not match c");
    return violations;
  }
  if (profile.b_inf.size() != m) {
    report("b_inf length does not match b");
    return violations;
  }

  if (profile.delta11_A < 0 || profile.delta1_b < 0 || profile.delta1_c < 0) {
    report("sensitivities must be nonnegative");
  }

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int mij = profile.mask_A(i, j);
      if (mij != 0 && mij != 1) {
        std::ostringstream os;
        os << "mask_A(" << i << "," << j << ") is not binary";
        report(os.str());
      }
      if (mij == 0 && lp.A(i, j) != 0.0) {
        std::ostringstream os;
        os << "A(" << i << "," << j << ") nonzero but mask_A(" << i << ","
           << j << ") = 0";
        report(os.str());
      }
      if (mij == 1 && profile.A_sup(i, j) < lp.A(i, j)) {
        std::ostringstream os;
        os << "A_sup(" << i << "," << j << ") below A(" << i << "," << j
           << ")";
        report(os.str());
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    const int mj = profile.mask_c(j);
    if (mj != 0 && mj != 1) {
      std::ostringstream os;
      os << "mask_c(" << j << ") is not binary";
      report(os.str());
    }
  }
  for (int i = 0; i < m; ++i) {
    if (profile.b_inf(i) > lp.b(i)) {
      std::ostringstream os;
      os << "b_inf(" << i << ") exceeds b(" << i << ")";
      report(os.str());
    }
  }
  return violations;
}

}  // namespace dplp
