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

#ifndef DPLP_IO_HPP_
#define DPLP_IO_HPP_

#include <stdexcept>
#include <string>

#include "dplp/experiments.hpp"
#include "dplp/lp.hpp"
#include "dplp/mdp.hpp"
#include "dplp/privatizer.hpp"
#include "dplp/solver.hpp"

// JSON front end for the command-line tool. Schema errors (wrong key, wrong
// type, wrong shape, bad value) throw std::invalid_argument; everything
// that went wrong at the file or parser level throws IoError. The split
// matches the tool's exit codes: config error vs I/O error.
//
// All serializers pretty-print with two-space indentation and emit doubles
// at round-trip precision. Non-finite doubles have no JSON literal and
// appear as null (the solve-result objective of an infeasible or unbounded
// program).

namespace dplp {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A problem instance with optional sensitivity metadata:
//   {"c": [...], "A": [[...]...], "b": [...],
//    "A_eq": [[...]...], "b_eq": [...],          // optional, together
//    "sensitivity": {"delta11_A", "delta1_b", "delta1_c",
//                    "mask_A", "mask_c", "A_sup", "b_inf"}}  // optional
// Unknown keys are rejected. All numbers must be finite; masks are 0/1.
struct InstanceFile {
  LinearProgramInstance lp;
  bool has_profile = false;
  SensitivityProfile profile;
};

InstanceFile read_instance_file(const std::string& path);
void write_instance_file(const InstanceFile& inst, const std::string& path);

// {"status": "Optimal"|"Infeasible"|"Unbounded",
//  "x": [...], "mu": [...], "nu": [...], "objective": number|null}
std::string solve_result_to_json(const SolveResult& result);

// The privatized program (c, A, b, A_eq, b_eq) plus full provenance:
// noise_A, noise_b, noise_c, clamped_A, clamped_b, case_one, s_A, s_b,
// sigma_A, sigma_b, sigma_c, eps_spent, delta_spent, variant, components.
std::string privatized_to_json(const PrivatizedProgram& priv);

// Aggregate emitted by the accuracy subcommand.
struct AccuracyCliReport {
  double rho = 0.0;
  double case_one_fraction = 0.0;
  double empirical_subopt_mean = 0.0;
  double empirical_subopt_stderr = 0.0;
  double hoffman_lower_bound = 0.0;
  double t = 0.0;  // concentration confidence parameter
  double threshold = 0.0;
  double exceedance = 0.0;
};

// {"rho", "case_one_fraction", "empirical_subopt_mean",
//  "empirical_subopt_stderr", "hoffman_lower_bound",
//  "concentration": {"t", "threshold", "exceedance"}}
std::string accuracy_report_to_json(const AccuracyCliReport& report);

// Sweep configuration file, keys mirroring SweepConfig member names:
//   kind: "ad_eps"|"ad_size"|"budget"|"cmdp"; mode: "full"|"partial_ac"|
//   "partial_b"; variant: "lemma"|"algorithm1"; grid: a gridworld object
//   {width, height, start: [x, y], goal: [x, y], hazards: [[x, y]...],
//    beta, gamma, f0, A_sup, b_inf, reward_model, plus optional
//    goal_reward, slip, mask_mode: "hazard_only"|"all_non_goal",
//    discounted_hazard}; every key optional, defaults from the structs;
//   unknown keys rejected. reward_model accepts only "goal" (unit reward
//   for occupying the absorbing goal state), the one model implemented.
SweepConfig read_sweep_config_file(const std::string& path);

// Reads a whole file; IoError when it cannot be opened or read.
std::string read_text_file(const std::string& path);

// Writes text atomically enough for our purposes; IoError on failure.
void write_text_file(const std::string& text, const std::string& path);

}  // namespace dplp

#endif  // DPLP_IO_HPP_
