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

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace dplp {
namespace {

void check_cell(const GridCell& cell, int width, int height,
                const char* what) {
  if (cell.x < 0 || cell.x >= width || cell.y < 0 || cell.y >= height) {
    throw std::invalid_argument(std::string("build_gridworld: ") + what +
                                " cell out of bounds");
  }
}

}  // namespace

void CmdpSpec::validate() const {
  const int p = num_states;
  const int q = num_actions;
  if (p < 1 || q < 1) {
    throw std::invalid_argument("CmdpSpec: empty state or action set");
  }
  if (reward.rows() != p || reward.cols() != q) {
    throw std::invalid_argument("CmdpSpec: reward shape mismatch");
  }
  if (static_cast<int>(transition.size()) != q) {
    throw std::invalid_argument("CmdpSpec: one transition matrix per action");
  }
  for (const auto& t : transition) {
    if (t.rows() != p || t.cols() != p) {
      throw std::invalid_argument("CmdpSpec: transition shape mismatch");
    }
    if ((t.array() < 0.0).any()) {
      throw std::invalid_argument("CmdpSpec: negative transition probability");
    }
    for (int s = 0; s < p; ++s) {
      if (std::abs(t.row(s).sum() - 1.0) > 1e-12) {
        throw std::invalid_argument("CmdpSpec: transition row does not sum to 1");
      }
    }
  }
  if (initial_dist.size() != p || (initial_dist.array() < 0.0).any() ||
      std::abs(initial_dist.sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("CmdpSpec: invalid initial distribution");
  }
  if (!(discount > 0.0 && discount < 1.0)) {
    throw std::invalid_argument("CmdpSpec: discount must lie in (0, 1)");
  }
  if (beta.size() != p) {
    throw std::invalid_argument("CmdpSpec: beta must have one entry per state");
  }
  for (int s : hazard_set) {
    if (s < 0 || s >= p) {
      throw std::invalid_argument("CmdpSpec: hazard state out of range");
    }
  }
  for (int s : sensitive_states) {
    if (s < 0 || s >= p) {
      throw std::invalid_argument("CmdpSpec: sensitive state out of range");
    }
  }
  if (!std::isfinite(f0)) {
    throw std::invalid_argument("CmdpSpec: non-finite hazard budget");
  }
}

CmdpSpec build_gridworld(const GridworldConfig& config) {
  if (config.width < 1 || config.height < 1) {
    throw std::invalid_argument("build_gridworld: empty grid");
  }
  check_cell(config.start, config.width, config.height, "start");
  check_cell(config.goal, config.width, config.height, "goal");
  for (const auto& h : config.hazards) {
    check_cell(h, config.width, config.height, "hazard");
  }
  if (!(config.slip >= 0.0 && config.slip < 1.0)) {
    throw std::invalid_argument("build_gridworld: slip must lie in [0, 1)");
  }

  const int w = config.width;
  const int p = w * config.height;
  const int q = 4;
  const int goal = config.goal.y * w + config.goal.x;

  CmdpSpec spec;
  spec.num_states = p;
  spec.num_actions = q;
  spec.discount = config.gamma;
  spec.f0 = config.f0;
  spec.hazard_sup = config.hazard_sup;
  spec.bound_inf = config.bound_inf;
  spec.discounted_hazard = config.discounted_hazard;

  // Deterministic intent per action; walls block, goal absorbs.
  const int dx[q] = {0, 0, -1, 1};
  const int dy[q] = {1, -1, 0, 0};
  std::vector<Eigen::MatrixXd> intent(
      q, Eigen::MatrixXd::Zero(p, p));
  for (int y = 0; y < config.height; ++y) {
    for (int x = 0; x < w; ++x) {
      const int s = y * w + x;
      for (int a = 0; a < q; ++a) {
        int tx = x + dx[a];
        int ty = y + dy[a];
        if (s == goal || tx < 0 || tx >= w || ty < 0 || ty >= config.height) {
          tx = x;
          ty = y;
        }
        const int dest = s == goal ? goal : ty * w + tx;
        intent[a](s, dest) += 1.0;
      }
    }
  }
  spec.transition.assign(q, Eigen::MatrixXd::Zero(p, p));
  if (config.slip == 0.0) {
    spec.transition = intent;
  } else {
    Eigen::MatrixXd uniform = Eigen::MatrixXd::Zero(p, p);
    for (int a = 0; a < q; ++a) uniform += intent[a];
    uniform /= static_cast<double>(q);
    for (int a = 0; a < q; ++a) {
      spec.transition[a] =
          (1.0 - config.slip) * intent[a] + config.slip * uniform;
    }
  }

  spec.reward = Eigen::MatrixXd::Zero(p, q);
  spec.reward.row(goal).setConstant(config.goal_reward);

  spec.initial_dist = Eigen::VectorXd::Zero(p);
  spec.initial_dist(config.start.y * w + config.start.x) = 1.0;

  spec.beta = Eigen::VectorXd::Constant(p, config.beta);
  for (const auto& h : config.hazards) {
    spec.hazard_set.push_back(h.y * w + h.x);
  }
  if (config.mask_mode == HazardMaskMode::kHazardOnly) {
    spec.sensitive_states = spec.hazard_set;
  } else {
    for (int s = 0; s < p; ++s) {
      if (s != goal) spec.sensitive_states.push_back(s);
    }
  }
  spec.validate();
  return spec;
}

HazardRow build_hazard_row(const CmdpSpec& spec) {
  spec.validate();
  const int p = spec.num_states;
  const int q = spec.num_actions;
  HazardRow row;
  row.coeffs = Eigen::RowVectorXd::Zero(p * q);
  row.mask = Eigen::RowVectorXi::Zero(p * q);
  row.bound = spec.f0;
  row.coeff_sup = spec.hazard_sup;
  row.bound_inf = spec.bound_inf;
  const double factor = spec.discounted_hazard ? 1.0 : spec.discount;
  for (int s : spec.hazard_set) {
    for (int a = 0; a < q; ++a) {
      row.coeffs(s * q + a) = spec.beta(s) * factor;
    }
  }
  for (int s : spec.sensitive_states) {
    for (int a = 0; a < q; ++a) {
      row.mask(s * q + a) = 1;
    }
  }
  return row;
}

LinearProgramInstance build_occupancy_lp(const CmdpSpec& spec) {
  spec.validate();
  const int p = spec.num_states;
  const int q = spec.num_actions;
  const int n = p * q;
  const HazardRow hazard = build_hazard_row(spec);

  LinearProgramInstance lp;
  lp.c = Eigen::VectorXd::Zero(n);
  for (int s = 0; s < p; ++s) {
    for (int a = 0; a < q; ++a) {
      lp.c(s * q + a) = spec.reward(s, a);
    }
  }
  lp.A = hazard.coeffs;
  lp.b = Eigen::VectorXd::Constant(1, hazard.bound);

  // Flow balance: out-occupancy of s' minus discounted in-flow equals the
  // initial mass, for every state.
  lp.A_eq = Eigen::MatrixXd::Zero(p, n);
  lp.b_eq = spec.initial_dist;
  for (int sp = 0; sp < p; ++sp) {
    for (int a = 0; a < q; ++a) {
      lp.A_eq(sp, sp * q + a) += 1.0;
      for (int s = 0; s < p; ++s) {
        const double t = spec.transition[a](s, sp);
        if (t != 0.0) {
          lp.A_eq(sp, s * q + a) -= spec.discount * t;
        }
      }
    }
  }
  lp.validate();
  return lp;
}

SensitivityProfile build_cmdp_profile(const CmdpSpec& spec, double delta11_A,
                                      double delta1_b) {
  const HazardRow hazard = build_hazard_row(spec);
  const int n = hazard.coeffs.size();
  SensitivityProfile prof;
  const double factor = spec.discounted_hazard ? 1.0 : spec.discount;
  prof.delta11_A =
      delta11_A >= 0.0
          ? delta11_A
          : spec.num_actions * spec.beta.maxCoeff() * factor;
  prof.delta1_b = delta1_b >= 0.0 ? delta1_b : spec.f0 - spec.bound_inf;
  prof.delta1_c = 0.0;
  prof.mask_A = Eigen::MatrixXi::Zero(1, n);
  for (int j = 0; j < n; ++j) prof.mask_A(0, j) = hazard.mask(j);
  prof.mask_c = Eigen::VectorXi::Zero(n);
  prof.A_sup = Eigen::MatrixXd::Zero(1, n);
  for (int j = 0; j < n; ++j) {
    prof.A_sup(0, j) =
        hazard.mask(j) != 0 ? hazard.coeff_sup : hazard.coeffs(j);
  }
  prof.b_inf = Eigen::VectorXd::Constant(1, hazard.bound_inf);
  return prof;
}

Policy policy_from_occupancy(const Eigen::VectorXd& x, int num_states,
                             int num_actions) {
  if (x.size() != static_cast<Eigen::Index>(num_states) * num_actions) {
    throw std::invalid_argument("policy_from_occupancy: size mismatch");
  }
  if ((x.array() < -1e-9).any()) {
    throw std::invalid_argument(
        "policy_from_occupancy: negative occupancy beyond tolerance");
  }
  Policy pol;
  pol.probs = Eigen::MatrixXd::Zero(num_states, num_actions);
  for (int s = 0; s < num_states; ++s) {
    double total = 0.0;
    for (int a = 0; a < num_actions; ++a) {
      total += std::max(x(s * num_actions + a), 0.0);
    }
    if (total < 1e-10) {
      pol.probs.row(s).setConstant(1.0 / num_actions);
    } else {
      for (int a = 0; a < num_actions; ++a) {
        pol.probs(s, a) = std::max(x(s * num_actions + a), 0.0) / total;
      }
    }
  }
  return pol;
}

double value_of_policy(const CmdpSpec& spec, const Policy& policy, int s0) {
  spec.validate();
  const int p = spec.num_states;
  const int q = spec.num_actions;
  if (policy.probs.rows() != p || policy.probs.cols() != q) {
    throw std::invalid_argument("value_of_policy: policy shape mismatch");
  }
  if (s0 < 0 || s0 >= p) {
    throw std::invalid_argument("value_of_policy: start state out of range");
  }
  for (int s = 0; s < p; ++s) {
    if (std::abs(policy.probs.row(s).sum() - 1.0) > 1e-9 ||
        (policy.probs.row(s).array() < 0.0).any()) {
      throw std::invalid_argument("value_of_policy: policy row not stochastic");
    }
  }
  Eigen::MatrixXd p_pi = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd r_pi = Eigen::VectorXd::Zero(p);
  for (int a = 0; a < q; ++a) {
    p_pi += policy.probs.col(a).asDiagonal() * spec.transition[a];
    r_pi += policy.probs.col(a).cwiseProduct(spec.reward.col(a));
  }
  const Eigen::MatrixXd sys =
      Eigen::MatrixXd::Identity(p, p) - spec.discount * p_pi;
  const Eigen::VectorXd v = Eigen::PartialPivLU<Eigen::MatrixXd>(sys).solve(r_pi);
  return v(s0);
}

double cost_of_privacy(double v_tilde, double v_opt) {
  if (v_opt == 0.0) {
    throw std::invalid_argument("cost_of_privacy: zero reference value");
  }
  return (v_tilde - v_opt) / v_opt;
}

}  // namespace dplp
