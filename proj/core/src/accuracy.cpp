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

#include "dplp/accuracy.hpp"

#include <cmath>
#include <stdexcept>

#include "dplp/privacy.hpp"

namespace dplp {

double chi_from_solution(const Eigen::VectorXd& x_star) {
  if (x_star.size() == 0) return 0.0;
  return std::max(0.0, x_star.maxCoeff());
}

double lambda_bound(const LinearProgramInstance& lp, const Eigen::VectorXd& eta,
                    const Eigen::VectorXd& omega) {
  if (lp.num_ineq() == 0) {
    throw std::invalid_argument("lambda_bound: no inequality rows");
  }
  const double margin = (lp.b - lp.A * omega).minCoeff();
  if (!(margin > 0.0)) {
    throw std::invalid_argument(
        "lambda_bound: point is not strictly interior (margin <= 0)");
  }
  const double gap = lp.c.dot(eta) - lp.c.dot(omega);
  return std::max(0.0, gap / margin);
}

AccuracyInputs make_accuracy_inputs(const LinearProgramInstance& lp,
                                    const SensitivityProfile& profile,
                                    const PrivacyBudget& budget, double chi,
                                    double lambda_cap, SupportVariant variant) {
  const int m = lp.num_ineq();
  const int n = lp.num_vars();
  AccuracyInputs in;
  in.chi = chi;
  in.lambda_cap = lambda_cap;
  in.row_nnz = Eigen::VectorXi::Zero(m);
  in.col_nnz = Eigen::VectorXi::Zero(n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (profile.mask_A(i, j) != 0) {
        ++in.row_nnz(i);
        ++in.col_nnz(j);
      }
    }
  }
  in.n0c = (profile.mask_c.array() != 0).count();
  if (profile.delta11_A > 0.0 && budget.alpha_A > 0.0) {
    const double eps_A = budget.alpha_A * budget.eps;
    in.sigma_A = profile.delta11_A / eps_A;
    in.s_A = support_A(profile.delta11_A, eps_A, budget.alpha_A * budget.delta,
                       m, n, variant);
  }
  if (profile.delta1_b > 0.0 && budget.alpha_b > 0.0) {
    const double eps_b = budget.alpha_b * budget.eps;
    in.sigma_b = profile.delta1_b / eps_b;
    in.s_b = support_b(profile.delta1_b, eps_b, budget.alpha_b * budget.delta,
                       m, variant);
  }
  if (profile.delta1_c > 0.0 && budget.alpha_c > 0.0) {
    in.sigma_c = profile.delta1_c / (budget.alpha_c * budget.eps);
  }
  // Off-mask entries never vary with the database, so their envelope
  // coincides with the data itself regardless of what the profile stores.
  in.A_sup = lp.A;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (profile.mask_A(i, j) != 0) in.A_sup(i, j) = profile.A_sup(i, j);
    }
  }
  in.b_inf = profile.b_inf;
  return in;
}

double rho(const AccuracyInputs& in, const LinearProgramInstance& lp,
           bool case_one) {
  const int m = lp.num_ineq();
  const int n = lp.num_vars();
  const double sA2 = in.sigma_A * in.sigma_A;
  const double sb2 = in.sigma_b * in.sigma_b;
  const double sc2 = in.sigma_c * in.sigma_c;
  const double chi = in.chi;
  const double lam = in.lambda_cap;

  if (case_one) {
    double acc = 2.0 * m * sb2 + m * in.s_b * in.s_b;
    double row_lin = 0.0;   // sum_i n_i^0 s_A
    double row_quad = 0.0;  // sum_i (2 n_i^0 sigma_A^2 + (n_i^0 s_A)^2)
    for (int i = 0; i < m; ++i) {
      const double nnz = in.row_nnz(i);
      row_lin += nnz * in.s_A;
      row_quad += 2.0 * nnz * sA2 + (nnz * in.s_A) * (nnz * in.s_A);
    }
    acc += 2.0 * in.s_b * chi * row_lin;
    acc += lam * lam * (2.0 * sb2 + in.s_b * in.s_b);
    acc += chi * chi * row_quad;
    acc += 2.0 * in.n0c * sc2;
    double col_quad = 0.0;  // sum_j (2 m_j^0 sigma_A^2 + (m_j^0 s_A)^2)
    for (int j = 0; j < n; ++j) {
      const double nnz = in.col_nnz(j);
      col_quad += 2.0 * nnz * sA2 + (nnz * in.s_A) * (nnz * in.s_A);
    }
    acc += m * lam * lam * col_quad;
    acc += 2.0 * chi * chi * in.n0c * sc2;
    return std::sqrt(acc);
  }

  // Envelope form: the constraint data is bounded by the clamp extremes, so
  // differences are taken against A_sup (equal to A off-mask) and b_inf.
  double fro2 = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = in.A_sup(i, j) - lp.A(i, j);
      fro2 += d * d;
    }
  }
  const double fro = std::sqrt(fro2);
  const double db = (lp.b - in.b_inf).norm();

  const double t1 = std::sqrt(static_cast<double>(n)) * fro * chi;
  const double t2 = std::sqrt(static_cast<double>(m)) * fro * lam;
  const double t3 = 2.0 * std::sqrt(static_cast<double>(n)) * in.sigma_c * chi;
  const double u1 = db;
  const double u2 = 2.0 * in.sigma_c;
  const double u3 = std::sqrt(static_cast<double>(m)) * db * lam;
  return std::sqrt(t1 * t1 + t2 * t2 + t3 * t3) +
         std::sqrt(u1 * u1 + u2 * u2 + u3 * u3);
}

double robinson_residual(const LinearProgramInstance& lp,
                         const PrivatizedProgram& priv,
                         const SolveResult& tilde_result) {
  if (tilde_result.status != SolveStatus::kOptimal) {
    throw std::invalid_argument("robinson_residual: result is not Optimal");
  }
  if (tilde_result.mu.size() != lp.num_ineq()) {
    throw std::invalid_argument("robinson_residual: missing dual multipliers");
  }
  const Eigen::MatrixXd dA = lp.A - priv.lp_tilde.A;
  const Eigen::VectorXd db = lp.b - priv.lp_tilde.b;
  const Eigen::VectorXd dc = lp.c - priv.lp_tilde.c;
  const Eigen::VectorXd& xt = tilde_result.x;
  const Eigen::VectorXd& mt = tilde_result.mu;

  const Eigen::VectorXd primal = (dA * xt - db).cwiseMin(0.0);
  const Eigen::VectorXd dual = (dA.transpose() * mt - dc).cwiseMax(0.0);
  const double gap = dc.dot(xt) - db.dot(mt);
  return std::sqrt(primal.squaredNorm() + dual.squaredNorm() + gap * gap);
}

double hoffman_empirical(const LinearProgramInstance& lp,
                         const SensitivityProfile& profile,
                         const PrivacyBudget& budget, int trials,
                         const CounterRng& rng) {
  if (trials < 1) {
    throw std::invalid_argument("hoffman_empirical: trials must be >= 1");
  }
  const SolveResult base = solve(lp);
  if (base.status != SolveStatus::kOptimal) {
    throw std::invalid_argument(
        "hoffman_empirical: base instance is not solvable");
  }
  double best = 0.0;
  bool any = false;
  for (int t = 0; t < trials; ++t) {
    const auto [priv, res] =
        solve_private(lp, profile, budget,
                      rng.split(static_cast<std::uint64_t>(t)));
    if (res.status != SolveStatus::kOptimal) continue;
    const double resid = robinson_residual(lp, priv, res);
    if (resid < 1e-12) continue;
    const double dist = std::sqrt((base.x - res.x).squaredNorm() +
                                  (base.mu - res.mu).squaredNorm());
    best = std::max(best, dist / resid);
    any = true;
  }
  if (!any) {
    throw std::runtime_error(
        "hoffman_empirical: no trial produced a usable residual");
  }
  return best;
}

double sub_optimality(const Eigen::VectorXd& c, const Eigen::VectorXd& x_star,
                      const Eigen::VectorXd& x_tilde) {
  const double opt = c.dot(x_star);
  if (opt == 0.0) {
    throw std::invalid_argument("sub_optimality: zero optimal value");
  }
  return (opt - c.dot(x_tilde)) / opt;
}

ConcentrationResult concentration_check(const std::vector<double>& r_samples,
                                        double diam, double t) {
  if (r_samples.empty()) {
    throw std::invalid_argument("concentration_check: no samples");
  }
  if (!(t > 0.0 && t <= 1.0)) {
    throw std::invalid_argument("concentration_check: t must be in (0, 1]");
  }
  if (!(diam > 0.0)) {
    throw std::invalid_argument("concentration_check: diam must be positive");
  }
  double mean = 0.0;
  for (double r : r_samples) mean += r;
  mean /= static_cast<double>(r_samples.size());
  const double nu = diam * std::sqrt(std::log(1.0 / t) / 2.0);
  std::size_t over = 0;
  for (double r : r_samples) {
    if (r - mean >= nu) ++over;
  }
  ConcentrationResult out;
  out.threshold = nu;
  out.exceedance =
      static_cast<double>(over) / static_cast<double>(r_samples.size());
  return out;
}

}  // namespace dplp
