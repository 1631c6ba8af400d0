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

#ifndef DPLP_SOLVER_HPP_
#define DPLP_SOLVER_HPP_

#include <string>
#include <vector>

#include "dplp/lp.hpp"

namespace dplp {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
};

std::string to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  // Primal solution; size n iff Optimal, otherwise empty.
  Eigen::VectorXd x;
  // Dual multipliers of the inequality block; nonnegative up to 1e-9.
  Eigen::VectorXd mu;
  // Dual multipliers of the equality block; sign-unrestricted.
  Eigen::VectorXd nu;
  // c'x when Optimal, +inf when Unbounded, NaN when Infeasible.
  double objective = 0.0;
};

// Two-phase dense primal simplex. Dantzig pricing with a switch to Bland's
// rule after 5*(rows + vars) pivots without objective progress; pivot
// tolerance 1e-10; ratio-test ties broken by smallest row index (smallest
// basic index under Bland). Deterministic: identical input, identical
// result, bit for bit.
SolveResult solve(const LinearProgramInstance& lp);

// All basic feasible solutions of {Ax <= b, A_eq x = b_eq, x >= 0},
// deduplicated, in lexicographic order. Guarded: the number of active-set
// combinations must not exceed 10^6, otherwise throws std::invalid_argument.
std::vector<Eigen::VectorXd> enumerate_vertices(const LinearProgramInstance& lp);

// Max pairwise Euclidean distance between vertices of the feasible region.
// Throws std::invalid_argument on unbounded or empty regions.
double diameter(const LinearProgramInstance& lp);

struct SlaterPoint {
  Eigen::VectorXd omega;
  double margin;  // min_i (b - A omega)_i; > 0 certifies a strict interior
};

// Maximizes the uniform inequality slack: max t s.t. Ax + t*1 <= b, x >= 0
// (t capped above so the auxiliary program stays bounded; the returned
// margin is recomputed from the returned point). A nonpositive margin means
// the region has empty interior; throws std::invalid_argument when the
// region is empty outright.
SlaterPoint slater_point(const LinearProgramInstance& lp);

}  // namespace dplp

#endif  // DPLP_SOLVER_HPP_
