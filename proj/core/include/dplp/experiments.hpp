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

#ifndef DPLP_EXPERIMENTS_HPP_
#define DPLP_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dplp/lp.hpp"
#include "dplp/mdp.hpp"
#include "dplp/privacy.hpp"
#include "dplp/rng.hpp"

namespace dplp {

enum class SweepKind {
  kAdEps,   // sub-optimality vs privacy level on the ad-allocation instance
  kAdSize,  // sub-optimality vs advertiser count
  kBudget,  // sub-optimality vs cost-share of the budget split
  kCmdp,    // cost of privacy vs privacy level on the gridworld
};

enum class PrivacyMode {
  kFull,       // all three blocks, shares from the config
  kPartialAc,  // constraint matrix and objective only, equal shares
  kPartialB,   // bound vector only, full share
};

struct SweepConfig {
  SweepKind kind = SweepKind::kAdEps;
  PrivacyMode mode = PrivacyMode::kFull;
  int N = 10;  // impression types (capacity rows)
  int M = 5;   // advertisers (budget rows)
  double eps = 1.0;
  double delta = 0.1;
  double alpha_A = 1.0 / 3.0;
  double alpha_b = 1.0 / 3.0;
  double alpha_c = 1.0 / 3.0;
  std::vector<double> eps_grid = {0.25, 0.5, 1.0, 2.0};
  std::vector<int> size_grid = {5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<double> alpha_c_grid = {1.0 / 3.0, 0.5, 0.75, 0.99};
  int samples = 100;
  std::uint64_t master_seed = 1;
  // Adjacency moves one datum; prices and budgets normalized to unit scale.
  double delta11_A = 1.0;
  double delta1_b = 1.0;
  double delta1_c = 1.0;
  // Budget-row floor: b_inf = max(0, b - b_inf_drop * s_b).
  double b_inf_drop = 10.0;
  bool fresh_instance = true;   // redraw the instance every trial
  bool debug_unclamped = false; // bypass shift and clamp (violations expected)
  SupportVariant variant = SupportVariant::kLemma;
  GridworldConfig grid;         // kCmdp only
  double cmdp_delta11_A = -1.0; // negative selects the profile default
  double cmdp_delta1_b = -1.0;
};

struct SweepRow {
  std::string grid_param;
  double value = 0.0;
  double mean_subopt_pct = 0.0;
  double std_subopt_pct = 0.0;  // sample standard deviation
  long violations = 0;
  double case_one_frac = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

// Ad-allocation instance: N*M variables x(i,j) = i*M + j, N capacity rows
// (unit coefficients) then M budget rows (price coefficients, masked where
// nonzero, ceiling 1). Capacity coefficients are publicly known, which the
// profile expresses as an envelope equal to their exact value: the clamp
// undoes the shift bit-for-bit, so privatization leaves them unchanged.
// Prices are 0 with probability 0.2 and uniform on (0,1) otherwise; every
// capacity and budget bound is 1e7. The profile's b_inf is a placeholder
// (= b); sweeps recompute it from the realized s_b before privatizing.
std::pair<LinearProgramInstance, SensitivityProfile> gen_ad_instance(
    int N, int M, const CounterRng& rng);

// Runs the configured sweep. Deterministic: the trial stream is
// seeded(master_seed).split(grid_index).split(trial_index), instances come
// from its substream 0 and noise from substream 1. Any original-constraint
// violation is counted; on guaranteed-feasible modes the count doubles as a
// falsification signal for the caller to turn into a nonzero exit.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

// Writes rows as CSV with the fixed header
// grid_param,value,mean_subopt_pct,std_subopt_pct,violations,case_one_frac,samples,seed
// using locale-independent shortest round-trip formatting.
void emit_csv(const std::vector<SweepRow>& table, const std::string& path);

// Reads back a file produced by emit_csv.
std::vector<SweepRow> parse_csv(const std::string& path);

}  // namespace dplp

#endif  // DPLP_EXPERIMENTS_HPP_
