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

#ifndef DPLP_MDP_HPP_
#define DPLP_MDP_HPP_

#include <vector>

#include "dplp/lp.hpp"

namespace dplp {

// Which constraint coefficients count as database-dependent: only the
// states hazardous in the realized database, or every non-goal state. The
// second choice makes the clamped constraint so tight that no policy from
// the start state can satisfy it (total non-goal occupancy is bounded below
// by the path to the goal), so the first is the default.
enum class HazardMaskMode {
  kHazardOnly,
  kAllNonGoal,
};

struct GridCell {
  int x = 0;
  int y = 0;
};

// Grid layout used by the safety experiment: a 10x5 board, start in the
// bottom-left corner, goal mid-board, and a hazard band across rows 1-2
// with a single safe column at x = 3.
struct GridworldConfig {
  int width = 10;
  int height = 5;
  GridCell start{0, 0};
  GridCell goal{4, 3};
  std::vector<GridCell> hazards = {
      {0, 1}, {1, 1}, {2, 1}, {4, 1}, {5, 1}, {6, 1},
      {0, 2}, {1, 2}, {2, 2}, {4, 2}, {5, 2}, {6, 2},
  };
  double beta = 0.6;        // per-state hazard penalty coefficient
  double gamma = 0.95;      // discount
  double f0 = 0.6;          // hazard budget
  double hazard_sup = 0.9;  // coefficient ceiling across databases
  double bound_inf = 0.3;   // hazard-budget floor across databases
  double goal_reward = 1.0;
  double slip = 0.0;  // probability the chosen action is replaced uniformly
  HazardMaskMode mask_mode = HazardMaskMode::kHazardOnly;
  // The printed constraint multiplies beta by a single discount factor;
  // setting this drops that factor, reading the row as a discounted sum the
  // occupancy variables already carry.
  bool discounted_hazard = false;
};

// Finite constrained MDP with one hazard-budget constraint.
struct CmdpSpec {
  int num_states = 0;
  int num_actions = 0;
  Eigen::MatrixXd reward;                   // states x actions
  std::vector<Eigen::MatrixXd> transition;  // per action: states x states
  Eigen::VectorXd initial_dist;
  double discount = 0.95;
  std::vector<int> hazard_set;
  Eigen::VectorXd beta;  // per-state penalty
  double f0 = 0.6;
  std::vector<int> sensitive_states;  // states whose hazard status may vary
  double hazard_sup = 0.9;
  double bound_inf = 0.3;
  bool discounted_hazard = false;

  // Throws std::invalid_argument when shapes, stochasticity (rows sum to 1
  // within 1e-12, nonnegative), the initial distribution, or the discount
  // are off.
  void validate() const;
};

struct Policy {
  Eigen::MatrixXd probs;  // states x actions, rows sum to 1
};

struct HazardRow {
  Eigen::RowVectorXd coeffs;  // over occupancy variables, state-major
  double bound = 0.0;         // f0
  Eigen::RowVectorXi mask;    // 1 on entries of states that may be hazardous
  double coeff_sup = 0.9;
  double bound_inf = 0.3;
};

// Deterministic-move gridworld: actions 0=up 1=down 2=left 3=right, walls
// block (self-transition), the goal absorbs, reward goal_reward per step
// spent in the goal and 0 elsewhere, initial distribution concentrated on
// the start cell. State index is y*width + x.
CmdpSpec build_gridworld(const GridworldConfig& config);

// The single private constraint: coefficient beta_s * gamma (or beta_s when
// discounted_hazard) on every action of each hazardous state, 0 elsewhere,
// bounded by f0. The mask marks all actions of every sensitive state.
HazardRow build_hazard_row(const CmdpSpec& spec);

// Occupancy-measure program: maximize sum r(s,a) x(s,a) subject to the
// hazard row (the only inequality) and one flow-balance equality per state;
// the equality block is public and never privatized. Variable index is
// s*num_actions + a.
LinearProgramInstance build_occupancy_lp(const CmdpSpec& spec);

// Sensitivity profile for the occupancy program. Negative sensitivity
// arguments select the defaults: delta11_A = num_actions * max beta *
// discount-factor (one state toggling hazard membership moves that many
// coefficients by that much) and delta1_b = f0 - bound_inf.
SensitivityProfile build_cmdp_profile(const CmdpSpec& spec,
                                      double delta11_A = -1.0,
                                      double delta1_b = -1.0);

// Rowwise normalization x(s,.) / sum_a x(s,a); states with total occupancy
// below 1e-10 get the uniform row. Entries must be >= -1e-9.
Policy policy_from_occupancy(const Eigen::VectorXd& x, int num_states,
                             int num_actions);

// Expected discounted return of the policy from state s0, via the linear
// system (I - gamma P_pi) v = r_pi.
double value_of_policy(const CmdpSpec& spec, const Policy& policy, int s0);

// (v_tilde - v_opt) / v_opt; throws on zero v_opt. Typically nonpositive
// when privacy can only shrink the feasible set.
double cost_of_privacy(double v_tilde, double v_opt);

}  // namespace dplp

#endif  // DPLP_MDP_HPP_
