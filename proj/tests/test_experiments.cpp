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

#include "dplp/experiments.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dplp/privatizer.hpp"
#include "dplp/rng.hpp"
#include "gtest/gtest.h"

namespace dplp {
namespace {

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + name;
}

void expect_rows_identical(const std::vector<SweepRow>& a,
                           const std::vector<SweepRow>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].grid_param, b[i].grid_param);
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].mean_subopt_pct, b[i].mean_subopt_pct);
    EXPECT_EQ(a[i].std_subopt_pct, b[i].std_subopt_pct);
    EXPECT_EQ(a[i].violations, b[i].violations);
    EXPECT_EQ(a[i].case_one_frac, b[i].case_one_frac);
    EXPECT_EQ(a[i].samples, b[i].samples);
    EXPECT_EQ(a[i].seed, b[i].seed);
  }
}

TEST(GenAdInstance, ShapeAndStructure) {
  const CounterRng rng = CounterRng::seeded(1);
  const auto [lp, prof] = gen_ad_instance(10, 5, rng);
  EXPECT_EQ(lp.num_vars(), 50);
  EXPECT_EQ(lp.num_ineq(), 15);
  EXPECT_EQ(lp.num_eq(), 0);
  for (int i = 0; i < 15; ++i) EXPECT_EQ(lp.b(i), 1e7);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 5; ++j) {
      const int v = i * 5 + j;
      EXPECT_EQ(lp.A(i, v), 1.0);
      EXPECT_EQ(lp.A(10 + j, v), lp.c(v));
      EXPECT_GE(lp.c(v), 0.0);
      EXPECT_LT(lp.c(v), 1.0);
    }
  }
  EXPECT_TRUE(validate_profile(lp, prof).empty());
}

TEST(GenAdInstance, DeterministicForAGivenStream) {
  const CounterRng rng = CounterRng::seeded(42);
  const auto [lp1, prof1] = gen_ad_instance(6, 4, rng);
  const auto [lp2, prof2] = gen_ad_instance(6, 4, rng);
  EXPECT_EQ(lp1.A, lp2.A);
  EXPECT_EQ(lp1.c, lp2.c);
  EXPECT_EQ(prof1.mask_A, prof2.mask_A);
}

TEST(GenAdInstance, ZeroPriceFractionNearOneFifth) {
  const CounterRng rng = CounterRng::seeded(7);
  const auto [lp, prof] = gen_ad_instance(50, 20, rng);
  (void)prof;
  int zeros = 0;
  for (int v = 0; v < lp.num_vars(); ++v) {
    if (lp.c(v) == 0.0) ++zeros;
  }
  const double frac = static_cast<double>(zeros) / lp.num_vars();
  EXPECT_NEAR(frac, 0.2, 0.04);
}

TEST(GenAdInstance, PublicCapacityRowsSurvivePrivatizationExactly) {
  const CounterRng rng = CounterRng::seeded(3);
  const auto [lp, prof] = gen_ad_instance(8, 4, rng);
  const PrivacyBudget budget{1.0, 0.1, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  const auto p = privatize(lp, prof, budget, CounterRng::seeded(11));
  for (int i = 0; i < 8; ++i) {
    for (int v = 0; v < lp.num_vars(); ++v) {
      if (lp.A(i, v) != 0.0) {
        // The envelope equals the public value, so the clamp undoes the
        // shift bit for bit.
        EXPECT_EQ(p.lp_tilde.A(i, v), lp.A(i, v));
      }
    }
  }
  // Budget-row coefficients stay inside [price, ceiling].
  for (int j = 0; j < 4; ++j) {
    for (int v = 0; v < lp.num_vars(); ++v) {
      if (prof.mask_A(8 + j, v) != 0) {
        EXPECT_GE(p.lp_tilde.A(8 + j, v), lp.A(8 + j, v));
        EXPECT_LE(p.lp_tilde.A(8 + j, v), 1.0);
      }
    }
  }
  // The placeholder bound floor equals b, so b comes back unchanged too.
  EXPECT_EQ(p.lp_tilde.b, lp.b);
  EXPECT_FALSE(p.case_one);
}

TEST(GenAdInstance, RejectsEmptySides) {
  const CounterRng rng = CounterRng::seeded(1);
  EXPECT_THROW(gen_ad_instance(0, 5, rng), std::invalid_argument);
  EXPECT_THROW(gen_ad_instance(5, 0, rng), std::invalid_argument);
}

TEST(RunSweep, AdEpsGridShape) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kAdEps;
  cfg.N = 4;
  cfg.M = 3;
  cfg.eps_grid = {0.5, 1.0};
  cfg.samples = 3;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    EXPECT_EQ(row.grid_param, "eps");
    EXPECT_EQ(row.samples, 3);
    EXPECT_EQ(row.violations, 0);
    EXPECT_GE(row.case_one_frac, 0.0);
    EXPECT_LE(row.case_one_frac, 1.0);
    EXPECT_GE(row.mean_subopt_pct, -1e-6);
    EXPECT_EQ(row.seed, 1u);
  }
  EXPECT_EQ(rows[0].value, 0.5);
  EXPECT_EQ(rows[1].value, 1.0);
}

TEST(RunSweep, AdSizeGridUsesAdvertiserCount) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kAdSize;
  cfg.N = 3;
  cfg.size_grid = {2, 3};
  cfg.samples = 2;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].grid_param, "M");
  EXPECT_EQ(rows[0].value, 2.0);
  EXPECT_EQ(rows[1].value, 3.0);
  EXPECT_EQ(rows[0].violations, 0);
}

TEST(RunSweep, BudgetGridSplitsRemainderEvenly) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kBudget;
  cfg.N = 4;
  cfg.M = 3;
  cfg.alpha_c_grid = {0.5, 0.99};
  cfg.samples = 2;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].grid_param, "alpha_c");
  EXPECT_EQ(rows[0].value, 0.5);
  EXPECT_EQ(rows[1].value, 0.99);
  EXPECT_EQ(rows[0].violations + rows[1].violations, 0);
}

TEST(RunSweep, CmdpGridReportsPolicyCost) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kCmdp;
  cfg.eps_grid = {1.0};
  cfg.samples = 2;
  cfg.alpha_A = 0.99;
  cfg.alpha_b = 0.01;
  cfg.alpha_c = 0.0;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].grid_param, "eps");
  EXPECT_EQ(rows[0].value, 1.0);
  EXPECT_EQ(rows[0].violations, 0);
  EXPECT_GE(rows[0].mean_subopt_pct, 0.0);
  EXPECT_EQ(rows[0].samples, 2);
}

TEST(RunSweep, DeterministicAcrossCalls) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kAdEps;
  cfg.N = 4;
  cfg.M = 3;
  cfg.eps_grid = {1.0};
  cfg.samples = 4;
  expect_rows_identical(run_sweep(cfg), run_sweep(cfg));
}

TEST(RunSweep, FixedInstanceModeIsDeterministicToo) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kAdEps;
  cfg.N = 3;
  cfg.M = 3;
  cfg.eps_grid = {1.0};
  cfg.samples = 3;
  cfg.fresh_instance = false;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].violations, 0);
  expect_rows_identical(rows, run_sweep(cfg));
}

TEST(RunSweep, PartialModesKeepTheGuarantee) {
  for (PrivacyMode mode : {PrivacyMode::kPartialAc, PrivacyMode::kPartialB}) {
    SweepConfig cfg;
    cfg.kind = SweepKind::kAdEps;
    cfg.N = 4;
    cfg.M = 3;
    cfg.eps_grid = {1.0};
    cfg.samples = 5;
    cfg.mode = mode;
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].violations, 0);
  }
}

TEST(RunSweep, DebugUnclampedBreaksTheGuarantee) {
  SweepConfig cfg;
  cfg.kind = SweepKind::kAdEps;
  cfg.N = 6;
  cfg.M = 4;
  cfg.eps_grid = {1.0};
  cfg.samples = 40;
  cfg.mode = PrivacyMode::kPartialB;
  cfg.debug_unclamped = true;
  cfg.master_seed = 3;
  const auto rows = run_sweep(cfg);
  ASSERT_EQ(rows.size(), 1u);
  // Raw two-sided bound noise grows the region about half the time, so the
  // solution lands outside the original program in many trials.
  EXPECT_GT(rows[0].violations, 0);
}

TEST(RunSweep, RejectsBadConfigs) {
  SweepConfig cfg;
  cfg.samples = 0;
  EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
  cfg.samples = 1;
  cfg.eps_grid = {0.0};
  EXPECT_THROW(run_sweep(cfg), std::invalid_argument);
}

TEST(EmitCsv, RoundTripsEveryFieldExactly) {
  std::vector<SweepRow> rows(2);
  rows[0].grid_param = "eps";
  rows[0].value = 0.1;
  rows[0].mean_subopt_pct = 1.0 / 3.0;
  rows[0].std_subopt_pct = 1e-17;
  rows[0].violations = 12345678901L;
  rows[0].case_one_frac = 0.9999999999999999;
  rows[0].samples = 100;
  rows[0].seed = 18446744073709551615ull;
  rows[1].grid_param = "M";
  rows[1].value = 100.0;
  rows[1].mean_subopt_pct = 25.5;
  rows[1].std_subopt_pct = 0.0;
  rows[1].violations = 0;
  rows[1].case_one_frac = 0.0;
  rows[1].samples = 1;
  rows[1].seed = 0;

  const std::string path = temp_path("dplp_roundtrip.csv");
  emit_csv(rows, path);
  const auto back = parse_csv(path);
  expect_rows_identical(rows, back);
  std::remove(path.c_str());
}

TEST(EmitCsv, OneRowMakesATwoLineFile) {
  std::vector<SweepRow> rows(1);
  rows[0].grid_param = "eps";
  rows[0].value = 2.0;
  const std::string path = temp_path("dplp_twoline.csv");
  emit_csv(rows, path);
  std::ifstream in(path);
  std::string line;
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line,
            "grid_param,value,mean_subopt_pct,std_subopt_pct,violations,"
            "case_one_frac,samples,seed");
  ASSERT_TRUE(std::getline(in, line));
  EXPECT_EQ(line.substr(0, 6), "eps,2,");
  EXPECT_FALSE(std::getline(in, line));
  std::remove(path.c_str());
}

TEST(EmitCsv, RejectsEmptyTableAndBadPath) {
  EXPECT_THROW(emit_csv({}, temp_path("dplp_empty.csv")),
               std::invalid_argument);
  std::vector<SweepRow> rows(1);
  EXPECT_THROW(emit_csv(rows, "/nonexistent-dir/x.csv"), std::runtime_error);
}

TEST(ParseCsv, RejectsMissingFileAndCorruptContent) {
  EXPECT_THROW(parse_csv(temp_path("dplp_does_not_exist.csv")),
               std::runtime_error);

  const std::string bad_header = temp_path("dplp_badheader.csv");
  {
    std::ofstream out(bad_header);
    out << "not,the,header\n";
  }
  EXPECT_THROW(parse_csv(bad_header), std::runtime_error);
  std::remove(bad_header.c_str());

  const std::string bad_field = temp_path("dplp_badfield.csv");
  {
    std::ofstream out(bad_field);
    out << "grid_param,value,mean_subopt_pct,std_subopt_pct,violations,"
           "case_one_frac,samples,seed\n";
    out << "eps,abc,0,0,0,0,1,1\n";
  }
  EXPECT_THROW(parse_csv(bad_field), std::runtime_error);
  std::remove(bad_field.c_str());

  const std::string short_row = temp_path("dplp_shortrow.csv");
  {
    std::ofstream out(short_row);
    out << "grid_param,value,mean_subopt_pct,std_subopt_pct,violations,"
           "case_one_frac,samples,seed\n";
    out << "eps,1,0\n";
  }
  EXPECT_THROW(parse_csv(short_row), std::runtime_error);
  std::remove(short_row.c_str());
}

}  // namespace
}  // namespace dplp
