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

#include "dplp/mdp.hpp"

#include <cmath>
#include <stdexcept>

#include "dplp/solver.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace dplp {
namespace {

using dplp_test::vec;

GridworldConfig single_cell(double gamma, double goal_reward = 1.0) {
  GridworldConfig cfg;
  cfg.width = 1;
  cfg.height = 1;
  cfg.start = {0, 0};
  cfg.goal = {0, 0};
  cfg.hazards.clear();
  cfg.gamma = gamma;
  cfg.goal_reward = goal_reward;
  return cfg;
}

// Independent oracle: plain value iteration on the unconstrained MDP.
Eigen::VectorXd value_iteration(const CmdpSpec& spec, int iters) {
  const int p = spec.num_states;
  const int q = spec.num_actions;
  Eigen::VectorXd v = Eigen::VectorXd::Zero(p);
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXd next(p);
    for (int s = 0; s < p; ++s) {
      double best = -1e300;
      for (int a = 0; a < q; ++a) {
        const double val =
            spec.reward(s, a) + spec.discount * spec.transition[a].row(s).dot(v);
        best = std::max(best, val);
      }
      next(s) = best;
    }
    v = next;
  }
  return v;
}

TEST(BuildGridworld, DefaultBoardShape) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  EXPECT_EQ(spec.num_states, 50);
  EXPECT_EQ(spec.num_actions, 4);
  EXPECT_NO_THROW(spec.validate());
  for (const auto& t : spec.transition) {
    for (int s = 0; s < spec.num_states; ++s) {
      ASSERT_NEAR(t.row(s).sum(), 1.0, 1e-12);
    }
  }
  EXPECT_EQ(spec.initial_dist(0), 1.0);
  EXPECT_NEAR(spec.initial_dist.sum(), 1.0, 1e-15);
  EXPECT_EQ(spec.hazard_set.size(), 12u);
  EXPECT_EQ(spec.sensitive_states, spec.hazard_set);
}

TEST(BuildGridworld, GoalAbsorbsAndCollectsReward) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  const int goal = 3 * 10 + 4;
  for (int a = 0; a < 4; ++a) {
    EXPECT_EQ(spec.transition[a](goal, goal), 1.0);
    EXPECT_EQ(spec.transition[a].row(goal).sum(), 1.0);
    EXPECT_EQ(spec.reward(goal, a), 1.0);
  }
  EXPECT_EQ(spec.reward(0, 0), 0.0);
}

TEST(BuildGridworld, WallsBlockAndMovesLand) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  // From the bottom-left corner: down and left are blocked, up lands one row
  // higher, right lands one column over.
  EXPECT_EQ(spec.transition[1](0, 0), 1.0);
  EXPECT_EQ(spec.transition[2](0, 0), 1.0);
  EXPECT_EQ(spec.transition[0](0, 10), 1.0);
  EXPECT_EQ(spec.transition[3](0, 1), 1.0);
}

TEST(BuildGridworld, RejectsOutOfBoundsCells) {
  GridworldConfig cfg;
  cfg.goal = {99, 0};
  EXPECT_THROW(build_gridworld(cfg), std::invalid_argument);
}

TEST(HazardRow, CoefficientsCarryOneDiscountFactor) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  const HazardRow row = build_hazard_row(spec);
  ASSERT_EQ(row.coeffs.size(), 200);
  const int hazard = spec.hazard_set.front();
  for (int a = 0; a < 4; ++a) {
    EXPECT_NEAR(row.coeffs(hazard * 4 + a), 0.6 * 0.95, 1e-15);
    EXPECT_EQ(row.mask(hazard * 4 + a), 1);
  }
  // The goal is never hazardous.
  const int goal = 3 * 10 + 4;
  EXPECT_EQ(row.coeffs(goal * 4), 0.0);
  EXPECT_EQ(row.mask(goal * 4), 0);
  EXPECT_EQ(row.bound, 0.6);
  EXPECT_EQ(row.coeff_sup, 0.9);
  EXPECT_EQ(row.bound_inf, 0.3);
}

TEST(HazardRow, DiscountedVariantDropsTheFactor) {
  GridworldConfig cfg;
  cfg.discounted_hazard = true;
  const CmdpSpec spec = build_gridworld(cfg);
  const HazardRow row = build_hazard_row(spec);
  EXPECT_NEAR(row.coeffs(spec.hazard_set.front() * 4), 0.6, 1e-15);
}

TEST(HazardRow, EmptyHazardSetGivesZeroRow) {
  const CmdpSpec spec = build_gridworld(single_cell(0.9));
  const HazardRow row = build_hazard_row(spec);
  EXPECT_EQ(row.coeffs.cwiseAbs().sum(), 0.0);
  EXPECT_EQ(row.mask.sum(), 0);
}

TEST(HazardRow, AllNonGoalModeWidensTheMask) {
  GridworldConfig cfg;
  cfg.mask_mode = HazardMaskMode::kAllNonGoal;
  const CmdpSpec spec = build_gridworld(cfg);
  const HazardRow row = build_hazard_row(spec);
  // 49 of 50 states sensitive, 4 actions each.
  EXPECT_EQ(row.mask.sum(), 49 * 4);
}

TEST(OccupancyLp, SingleStateTotalsTheDiscountHorizon) {
  const CmdpSpec spec = build_gridworld(single_cell(0.9));
  const LinearProgramInstance lp = build_occupancy_lp(spec);
  const SolveResult r = solve(lp);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.x.sum(), 10.0, 1e-6);
  EXPECT_NEAR(r.objective, 10.0, 1e-6);
}

TEST(OccupancyLp, TotalMassIsTheDiscountHorizon) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  const LinearProgramInstance lp = build_occupancy_lp(spec);
  const SolveResult r = solve(lp);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  EXPECT_NEAR(r.x.sum(), 1.0 / (1.0 - 0.95), 1e-6);
}

TEST(OccupancyLp, UnconstrainedOptimumMatchesValueIteration) {
  CmdpSpec spec = build_gridworld(GridworldConfig{});
  spec.f0 = 1e6;  // hazard budget slack enough to never bind
  const LinearProgramInstance lp = build_occupancy_lp(spec);
  const SolveResult r = solve(lp);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  const Eigen::VectorXd v = value_iteration(spec, 1500);
  EXPECT_NEAR(r.objective, v(0), 1e-6);
  const Policy pol = policy_from_occupancy(r.x, 50, 4);
  EXPECT_NEAR(value_of_policy(spec, pol, 0), v(0), 1e-6);
}

TEST(OccupancyLp, ConstrainedPolicyResimulatesToTheLpValue) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  const LinearProgramInstance lp = build_occupancy_lp(spec);
  const SolveResult r = solve(lp);
  ASSERT_EQ(r.status, SolveStatus::kOptimal);
  const Policy pol = policy_from_occupancy(r.x, 50, 4);
  EXPECT_NEAR(value_of_policy(spec, pol, 0), r.objective, 1e-6);
  // The occupancy respects the hazard budget.
  const Eigen::VectorXd usage = lp.A * r.x;
  EXPECT_LE(usage(0), 0.6 + 1e-9);
}

TEST(PolicyFromOccupancy, NormalizesRowsAndFillsEmptyStatesUniformly) {
  Eigen::VectorXd x(8);
  x << 0.2, 0.2, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0;
  const Policy pol = policy_from_occupancy(x, 2, 4);
  EXPECT_NEAR(pol.probs(0, 0), 0.2, 1e-15);
  EXPECT_NEAR(pol.probs(0, 2), 0.6, 1e-15);
  EXPECT_NEAR(pol.probs(1, 0), 0.25, 1e-15);
  EXPECT_NEAR(pol.probs.row(0).sum(), 1.0, 1e-12);
}

TEST(PolicyFromOccupancy, ClampsTinyNegativesButRejectsRealOnes) {
  Eigen::VectorXd x(4);
  x << -1e-10, 1.0, 0.0, 0.0;
  const Policy pol = policy_from_occupancy(x, 1, 4);
  EXPECT_EQ(pol.probs(0, 0), 0.0);
  x(0) = -1e-6;
  EXPECT_THROW(policy_from_occupancy(x, 1, 4), std::invalid_argument);
  EXPECT_THROW(policy_from_occupancy(x, 2, 4), std::invalid_argument);
}

TEST(ValueOfPolicy, AbsorbingRewardIsTheGeometricSum) {
  const CmdpSpec spec = build_gridworld(single_cell(0.9));
  Policy pol;
  pol.probs = Eigen::MatrixXd::Constant(1, 4, 0.25);
  EXPECT_NEAR(value_of_policy(spec, pol, 0), 10.0, 1e-9);
}

TEST(ValueOfPolicy, ZeroRewardGivesZeroValue) {
  const CmdpSpec spec = build_gridworld(single_cell(0.9, 0.0));
  Policy pol;
  pol.probs = Eigen::MatrixXd::Constant(1, 4, 0.25);
  EXPECT_EQ(value_of_policy(spec, pol, 0), 0.0);
}

TEST(ValueOfPolicy, RejectsNonStochasticPolicyAndBadStart) {
  const CmdpSpec spec = build_gridworld(single_cell(0.9));
  Policy pol;
  pol.probs = Eigen::MatrixXd::Constant(1, 4, 0.3);
  EXPECT_THROW(value_of_policy(spec, pol, 0), std::invalid_argument);
  pol.probs = Eigen::MatrixXd::Constant(1, 4, 0.25);
  EXPECT_THROW(value_of_policy(spec, pol, 5), std::invalid_argument);
}

TEST(CmdpValidate, RejectsBrokenSpecs) {
  CmdpSpec spec = build_gridworld(GridworldConfig{});
  spec.transition[0](0, 0) += 0.1;
  EXPECT_THROW(spec.validate(), std::invalid_argument);

  spec = build_gridworld(GridworldConfig{});
  spec.transition[0](0, 0) = -1.0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);

  spec = build_gridworld(GridworldConfig{});
  spec.initial_dist *= 2.0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);

  spec = build_gridworld(GridworldConfig{});
  spec.discount = 1.0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);

  spec = build_gridworld(GridworldConfig{});
  spec.reward = Eigen::MatrixXd::Zero(2, 2);
  EXPECT_THROW(spec.validate(), std::invalid_argument);

  spec = build_gridworld(GridworldConfig{});
  spec.hazard_set.push_back(99);
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(BuildCmdpProfile, DefaultSensitivities) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  const SensitivityProfile prof = build_cmdp_profile(spec);
  // One state toggling hazard membership moves all four of its coefficients
  // by beta * gamma.
  EXPECT_NEAR(prof.delta11_A, 4 * 0.6 * 0.95, 1e-12);
  EXPECT_NEAR(prof.delta1_b, 0.6 - 0.3, 1e-15);
  EXPECT_EQ(prof.delta1_c, 0.0);
  const HazardRow row = build_hazard_row(spec);
  for (int j = 0; j < row.coeffs.size(); ++j) {
    EXPECT_EQ(prof.mask_A(0, j), row.mask(j));
    if (row.mask(j) != 0) {
      EXPECT_EQ(prof.A_sup(0, j), 0.9);
    } else {
      EXPECT_EQ(prof.A_sup(0, j), row.coeffs(j));
    }
  }
  EXPECT_EQ(prof.b_inf(0), 0.3);
  EXPECT_EQ(prof.mask_c.sum(), 0);
}

TEST(BuildCmdpProfile, OverridesWin) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  const SensitivityProfile prof = build_cmdp_profile(spec, 1.5, 0.2);
  EXPECT_EQ(prof.delta11_A, 1.5);
  EXPECT_EQ(prof.delta1_b, 0.2);
}

TEST(BuildCmdpProfile, ConsistentWithOccupancyProgram) {
  const CmdpSpec spec = build_gridworld(GridworldConfig{});
  const LinearProgramInstance lp = build_occupancy_lp(spec);
  const SensitivityProfile prof = build_cmdp_profile(spec);
  EXPECT_TRUE(validate_profile(lp, prof).empty());
}

TEST(CostOfPrivacy, Examples) {
  EXPECT_NEAR(cost_of_privacy(8.0, 10.0), -0.2, 1e-15);
  EXPECT_EQ(cost_of_privacy(10.0, 10.0), 0.0);
  EXPECT_THROW(cost_of_privacy(1.0, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace dplp
