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

#include "dplp/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace dplp {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kEnterTol = 1e-9;

// Dense tableau over columns [structural | slack | artificial | rhs-free].
// Rows are sign-normalized so every right-hand side starts nonnegative;
// row_sign remembers the flip for dual recovery.
struct Tableau {
  Eigen::MatrixXd t;        // rows x cols coefficient block
  Eigen::VectorXd rhs;      // invariant: rhs >= 0 up to roundoff
  Eigen::RowVectorXd rc;    // reduced profits of the active objective
  double z = 0.0;           // active objective value
  std::vector<int> basis;   // basis[i] = column basic in row i
  std::vector<char> alive;  // rows disabled when found redundant in phase 1
  std::vector<int> row_sign;
  std::vector<int> art_col;  // per-row artificial column or -1
  int n = 0;                 // structural columns
  int m = 0;                 // inequality rows (each owns slack n + i)
  int p = 0;                 // equality rows
  int cols = 0;              // total columns excluding rhs
  int art_start = 0;

  int rows() const { return m + p; }

  void pivot(int r, int j) {
    const double piv = t(r, j);
    t.row(r) /= piv;
    rhs(r) /= piv;
    t(r, j) = 1.0;
    for (int i = 0; i < rows(); ++i) {
      if (i == r || !alive[i]) continue;
      const double f = t(i, j);
      if (f == 0.0) continue;
      t.row(i) -= f * t.row(r);
      rhs(i) -= f * rhs(r);
      t(i, j) = 0.0;
    }
    const double fz = rc(j);
    if (fz != 0.0) {
      rc -= fz * t.row(r);
      z += fz * rhs(r);
      rc(j) = 0.0;
    }
    basis[r] = j;
  }
};

Tableau build_tableau(const LinearProgramInstance& lp) {
  Tableau tb;
  tb.n = lp.num_vars();
  tb.m = lp.num_ineq();
  tb.p = lp.num_eq();
  const int rows = tb.m + tb.p;

  int num_art = 0;
  tb.row_sign.assign(rows, 1);
  for (int i = 0; i < tb.m; ++i) {
    if (lp.b(i) < 0.0) {
      tb.row_sign[i] = -1;
      ++num_art;
    }
  }
  for (int k = 0; k < tb.p; ++k) {
    if (lp.b_eq(k) < 0.0) tb.row_sign[tb.m + k] = -1;
    ++num_art;  // every equality row gets one
  }

  tb.art_start = tb.n + tb.m;
  tb.cols = tb.art_start + num_art;
  tb.t = Eigen::MatrixXd::Zero(rows, tb.cols);
  tb.rhs = Eigen::VectorXd::Zero(rows);
  tb.rc = Eigen::RowVectorXd::Zero(tb.cols);
  tb.basis.assign(rows, -1);
  tb.alive.assign(rows, 1);
  tb.art_col.assign(rows, -1);

  int next_art = tb.art_start;
  for (int i = 0; i < tb.m; ++i) {
    const double s = tb.row_sign[i];
    tb.t.row(i).head(tb.n) = s * lp.A.row(i);
    tb.t(i, tb.n + i) = s;
    tb.rhs(i) = s * lp.b(i);
    if (tb.row_sign[i] > 0) {
      tb.basis[i] = tb.n + i;
    } else {
      tb.art_col[i] = next_art;
      tb.t(i, next_art) = 1.0;
      tb.basis[i] = next_art++;
    }
  }
  for (int k = 0; k < tb.p; ++k) {
    const int r = tb.m + k;
    const double s = tb.row_sign[r];
    tb.t.row(r).head(tb.n) = s * lp.A_eq.row(k);
    tb.rhs(r) = s * lp.b_eq(k);
    tb.art_col[r] = next_art;
    tb.t(r, next_art) = 1.0;
    tb.basis[r] = next_art++;
  }
  return tb;
}

enum class LoopExit { kOptimal, kUnbounded };

// Runs the pricing loop to completion over columns [0, enter_limit).
// Artificial columns sit past enter_limit and can only leave the basis.
LoopExit run_simplex(Tableau& tb, int enter_limit, std::int64_t* iter_budget) {
  const int bland_after = 5 * (tb.rows() + tb.n);
  int stalled = 0;
  bool bland = false;
  double best_z = tb.z;
  while (true) {
    if (--(*iter_budget) < 0) {
      throw std::runtime_error("simplex iteration limit exceeded");
    }
    int enter = -1;
    if (bland) {
      for (int j = 0; j < enter_limit; ++j) {
        if (tb.rc(j) > kEnterTol) {
          enter = j;
          break;
        }
      }
    } else {
      double best = kEnterTol;
      for (int j = 0; j < enter_limit; ++j) {
        if (tb.rc(j) > best) {
          best = tb.rc(j);
          enter = j;
        }
      }
    }
    if (enter < 0) return LoopExit::kOptimal;

    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < tb.rows(); ++i) {
      if (!tb.alive[i]) continue;
      const double a = tb.t(i, enter);
      if (a <= kPivotTol) continue;
      const double ratio = std::max(tb.rhs(i), 0.0) / a;
      if (ratio < best_ratio) {
        best_ratio = ratio;
        leave = i;
      } else if (bland && ratio == best_ratio && leave >= 0 &&
                 tb.basis[i] < tb.basis[leave]) {
        leave = i;
      }
    }
    if (leave < 0) return LoopExit::kUnbounded;

    tb.pivot(leave, enter);
    if (tb.z > best_z + 1e-12 * (1.0 + std::abs(best_z))) {
      best_z = tb.z;
      stalled = 0;
      bland = false;
    } else if (++stalled >= bland_after) {
      bland = true;
    }
  }
}

// Pivots artificial variables out of the basis; rows admitting no pivot are
// redundant and retired.
void drive_out_artificials(Tableau& tb) {
  for (int r = 0; r < tb.rows(); ++r) {
    if (!tb.alive[r] || tb.basis[r] < tb.art_start) continue;
    int best_j = -1;
    double best_mag = kPivotTol;
    for (int j = 0; j < tb.art_start; ++j) {
      const double mag = std::abs(tb.t(r, j));
      if (mag > best_mag) {
        best_mag = mag;
        best_j = j;
      }
    }
    if (best_j >= 0) {
      tb.pivot(r, best_j);
    } else {
      tb.alive[r] = 0;
    }
  }
}

void load_phase2_objective(const LinearProgramInstance& lp, Tableau& tb) {
  tb.rc.setZero();
  tb.rc.head(tb.n) = lp.c.transpose();
  tb.z = 0.0;
  for (int i = 0; i < tb.rows(); ++i) {
    if (!tb.alive[i]) continue;
    const int bj = tb.basis[i];
    const double cb = bj < tb.n ? lp.c(bj) : 0.0;
    if (cb == 0.0) continue;
    tb.rc -= cb * tb.t.row(i);
    tb.z += cb * tb.rhs(i);
  }
  for (int i = 0; i < tb.rows(); ++i) {
    if (tb.alive[i]) tb.rc(tb.basis[i]) = 0.0;
  }
}

// Binomial count capped at slightly past the guard threshold.
double capped_binomial(int total, int pick) {
  if (pick < 0 || pick > total) return 0.0;
  pick = std::min(pick, total - pick);
  double v = 1.0;
  for (int i = 1; i <= pick; ++i) {
    v *= static_cast<double>(total - pick + i) / static_cast<double>(i);
    if (v > 4e6) return v;
  }
  return v;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kInfeasible:
      return "Infeasible";
    case SolveStatus::kUnbounded:
      return "Unbounded";
  }
  return "Unknown";
}

SolveResult solve(const LinearProgramInstance& lp) {
  lp.validate();
  Tableau tb = build_tableau(lp);
  std::int64_t iter_budget =
      100000 + 200ll * static_cast<std::int64_t>(tb.rows() + tb.n);

  double rhs_scale = 0.0;
  if (tb.m > 0) rhs_scale = lp.b.cwiseAbs().maxCoeff();
  if (tb.p > 0) rhs_scale = std::max(rhs_scale, lp.b_eq.cwiseAbs().maxCoeff());

  if (tb.cols > tb.art_start) {
    // Phase 1: maximize -(sum of artificials), reduced costs folded in.
    for (int i = 0; i < tb.rows(); ++i) {
      if (tb.basis[i] >= tb.art_start) {
        tb.rc.head(tb.art_start) += tb.t.row(i).head(tb.art_start);
        tb.z -= tb.rhs(i);
      }
    }
    const LoopExit exit1 = run_simplex(tb, tb.art_start, &iter_budget);
    if (exit1 == LoopExit::kUnbounded) {
      throw std::runtime_error("phase-1 objective diverged");
    }
    if (tb.z < -1e-9 * (1.0 + rhs_scale)) {
      SolveResult res;
      res.status = SolveStatus::kInfeasible;
      res.objective = std::numeric_limits<double>::quiet_NaN();
      return res;
    }
    drive_out_artificials(tb);
  }

  load_phase2_objective(lp, tb);
  const LoopExit exit2 = run_simplex(tb, tb.art_start, &iter_budget);
  if (exit2 == LoopExit::kUnbounded) {
    SolveResult res;
    res.status = SolveStatus::kUnbounded;
    res.objective = std::numeric_limits<double>::infinity();
    return res;
  }

  SolveResult res;
  res.status = SolveStatus::kOptimal;
  res.x = Eigen::VectorXd::Zero(tb.n);
  for (int i = 0; i < tb.rows(); ++i) {
    // Elimination roundoff can leave a degenerate basic value a hair below
    // zero; the invariant is rhs >= 0, so restore it.
    if (tb.alive[i] && tb.basis[i] < tb.n) {
      res.x(tb.basis[i]) = std::max(tb.rhs(i), 0.0);
    }
  }
  res.objective = lp.c.dot(res.x);

  // Dual recovery from reduced costs. For an inequality row the slack column
  // carries row_sign, which cancels against the rhs flip: mu_i = -rc(slack_i)
  // either way. Equality duals come off the artificial column, which was
  // installed after the flip: nu_k = -sign_k * rc(art_k). Retired rows were
  // redundant, their multiplier is 0.
  res.mu = Eigen::VectorXd::Zero(tb.m);
  for (int i = 0; i < tb.m; ++i) {
    res.mu(i) = tb.alive[i] ? -tb.rc(tb.n + i) : 0.0;
  }
  res.nu = Eigen::VectorXd::Zero(tb.p);
  for (int k = 0; k < tb.p; ++k) {
    const int r = tb.m + k;
    if (tb.alive[r] && tb.art_col[r] >= 0) {
      res.nu(k) = -tb.row_sign[r] * tb.rc(tb.art_col[r]);
    }
  }
  return res;
}

std::vector<Eigen::VectorXd> enumerate_vertices(const LinearProgramInstance& lp) {
  lp.validate();
  const int n = lp.num_vars();
  const int m = lp.num_ineq();
  const int p = lp.num_eq();
  const int pick = n - p;
  if (pick < 0) {
    throw std::invalid_argument(
        "vertex enumeration: more equality rows than variables");
  }
  const double combos = capped_binomial(m + n, pick);
  if (combos > 1e6) {
    throw std::invalid_argument(
        "vertex enumeration: active-set count exceeds 10^6");
  }

  // Candidate active rows: the m inequalities, then the n bounds x_j >= 0
  // written as -x_j <= 0.
  Eigen::MatrixXd cand(m + n, n);
  Eigen::VectorXd cand_rhs(m + n);
  if (m > 0) {
    cand.topRows(m) = lp.A;
    cand_rhs.head(m) = lp.b;
  }
  cand.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
  cand_rhs.tail(n).setZero();

  const double b_scale =
      1.0 + (m > 0 ? lp.b.cwiseAbs().maxCoeff() : 0.0) +
      (p > 0 ? lp.b_eq.cwiseAbs().maxCoeff() : 0.0);
  const double feas_tol = 1e-9 * b_scale;

  std::vector<Eigen::VectorXd> verts;
  Eigen::MatrixXd sys(n, n);
  Eigen::VectorXd sys_rhs(n);
  if (p > 0) {
    sys.topRows(p) = lp.A_eq;
    sys_rhs.head(p) = lp.b_eq;
  }

  std::vector<int> combo(pick);
  for (int i = 0; i < pick; ++i) combo[i] = i;
  const bool any = pick <= m + n;
  while (any) {
    for (int i = 0; i < pick; ++i) {
      sys.row(p + i) = cand.row(combo[i]);
      sys_rhs(p + i) = cand_rhs(combo[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
    if (lu.rank() == n) {
      Eigen::VectorXd v = lu.solve(sys_rhs);
      bool ok = v.allFinite() && (v.array() >= -feas_tol).all();
      if (ok && m > 0) {
        ok = ((lp.A * v - lp.b).array() <= feas_tol).all();
      }
      if (ok && p > 0) {
        ok = ((lp.A_eq * v - lp.b_eq).cwiseAbs().array() <= feas_tol).all();
      }
      if (ok) {
        const double dup_tol = 1e-9 * (1.0 + v.cwiseAbs().maxCoeff());
        bool dup = false;
        for (const auto& w : verts) {
          if ((w - v).cwiseAbs().maxCoeff() <= dup_tol) {
            dup = true;
            break;
          }
        }
        if (!dup) verts.push_back(std::move(v));
      }
    }
    // Next lexicographic combination.
    int i = pick - 1;
    while (i >= 0 && combo[i] == m + n - pick + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < pick; ++j) combo[j] = combo[j - 1] + 1;
  }

  std::sort(verts.begin(), verts.end(),
            [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
              for (int i = 0; i < a.size(); ++i) {
                if (a(i) != b(i)) return a(i) < b(i);
              }
              return false;
            });
  return verts;
}

double diameter(const LinearProgramInstance& lp) {
  lp.validate();
  const int n = lp.num_vars();

  // Boundedness test on the recession cone: max 1'd subject to A d <= 0,
  // A_eq d = 0, d <= 1, d >= 0. Any positive optimum exposes a ray.
  LinearProgramInstance cone;
  cone.c = Eigen::VectorXd::Ones(n);
  cone.A = Eigen::MatrixXd::Zero(lp.num_ineq() + n, n);
  cone.b = Eigen::VectorXd::Zero(lp.num_ineq() + n);
  if (lp.num_ineq() > 0) cone.A.topRows(lp.num_ineq()) = lp.A;
  cone.A.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
  cone.b.tail(n).setOnes();
  cone.A_eq = lp.A_eq;
  cone.b_eq = Eigen::VectorXd::Zero(lp.num_eq());
  const SolveResult ray = solve(cone);
  if (ray.status != SolveStatus::kOptimal) {
    throw std::runtime_error("diameter: boundedness check did not solve");
  }
  if (ray.objective > 1e-7) {
    throw std::invalid_argument("diameter: feasible region is unbounded");
  }

  const std::vector<Eigen::VectorXd> verts = enumerate_vertices(lp);
  if (verts.empty()) {
    throw std::invalid_argument("diameter: feasible region is empty");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      best = std::max(best, (verts[i] - verts[j]).norm());
    }
  }
  return best;
}

SlaterPoint slater_point(const LinearProgramInstance& lp) {
  lp.validate();
  const int n = lp.num_vars();
  const int m = lp.num_ineq();
  const int p = lp.num_eq();

  // Variables (x, t) with t >= 0, maximizing t. Infeasibility of this
  // program is exactly emptiness of the region. The cap t <= t_cap keeps it
  // bounded when the slack can grow without limit; the returned margin is
  // recomputed from the returned point, so the cap never distorts it.
  const double t_cap = 1.0 + (m > 0 ? lp.b.cwiseAbs().maxCoeff() : 0.0);
  LinearProgramInstance aux;
  aux.c = Eigen::VectorXd::Zero(n + 1);
  aux.c(n) = 1.0;
  aux.A = Eigen::MatrixXd::Zero(m + 1, n + 1);
  aux.b = Eigen::VectorXd::Zero(m + 1);
  if (m > 0) {
    aux.A.topLeftCorner(m, n) = lp.A;
    aux.A.col(n).head(m).setOnes();
    aux.b.head(m) = lp.b;
  }
  aux.A(m, n) = 1.0;
  aux.b(m) = t_cap;
  if (p > 0) {
    aux.A_eq = Eigen::MatrixXd::Zero(p, n + 1);
    aux.A_eq.leftCols(n) = lp.A_eq;
    aux.b_eq = lp.b_eq;
  }

  const SolveResult res = solve(aux);
  if (res.status != SolveStatus::kOptimal) {
    throw std::invalid_argument("slater_point: feasible region is empty");
  }
  SlaterPoint out;
  out.omega = res.x.head(n);
  out.margin = m > 0 ? (lp.b - lp.A * out.omega).minCoeff()
                     : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace dplp
