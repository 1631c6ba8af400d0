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

#ifndef DPLP_PRIVACY_HPP_
#define DPLP_PRIVACY_HPP_

#include "dplp/rng.hpp"

namespace dplp {

// Zero-centered Laplace density restricted to [-half_width, half_width],
// renormalized over that interval.
struct TruncatedLaplace {
  double sigma;       // scale of the parent Laplace density
  double half_width;  // support endpoint; must be positive
};

// Zero-centered Laplace density with scale sigma (unbounded support).
struct Laplace {
  double sigma;
};

// Entry-count convention used inside the truncation half-width formulas.
// kLemma uses the per-mechanism union-bound counts (m*n for a matrix, m for
// a vector); kAlgorithm1 doubles them (2*n*m, 2*m). Both split delta with
// the same weights as epsilon.
enum class SupportVariant {
  kLemma,
  kAlgorithm1,
};

// Quantile (inverse CDF) of the truncated Laplace density. u = 0.5 maps to
// exactly 0 and the result is clamped to [-half_width, half_width], so every
// value lies inside the support even after floating-point rounding.
// Requires sigma > 0, half_width > 0, u in [0, 1].
double trunc_laplace_quantile(const TruncatedLaplace& d, double u);

// CDF of the truncated Laplace density. 0 at -half_width, 1 at half_width.
double trunc_laplace_cdf(const TruncatedLaplace& d, double z);

// One inverse-CDF draw. Consumes exactly one uniform from rng, so the draw
// count of any caller is deterministic.
double sample_trunc_laplace(const TruncatedLaplace& d, CounterRng& rng);

// Quantile of the Laplace density. u = 0.5 maps to exactly 0.
// Requires sigma > 0, u in (0, 1).
double laplace_quantile(const Laplace& d, double u);

// One inverse-CDF draw; consumes exactly one uniform from rng.
double sample_laplace(const Laplace& d, CounterRng& rng);

// Truncation half-width for the matrix mechanism: the smallest s such that
// independent Laplace(delta11_A/eps) noise on each of the m*n entries stays
// within [-s, s] on all entries simultaneously except with probability at
// most delta. Returns 0 when delta11_A = 0 (a zero-sensitivity entry needs
// no noise). Requires eps > 0, delta in (0, 1), m >= 1, n >= 1.
double support_A(double delta11_A, double eps, double delta, int m, int n,
                 SupportVariant variant = SupportVariant::kLemma);

// Truncation half-width for the vector mechanism over m entries.
double support_b(double delta1_b, double eps, double delta, int m,
                 SupportVariant variant = SupportVariant::kLemma);

// Exact inverse of the half-width formulas: the total out-of-support tail
// probability of `count` independent Laplace(delta11/eps) coordinates
// truncated at half-width s. Round-trips with support_A / support_b:
// tail_mass(eps, d, support_A(d, eps, delta, m, n), m*n) = delta.
// Requires eps > 0, delta11 > 0, s > 0, count > 0.
double tail_mass(double eps, double delta11, double s, double count);

}  // namespace dplp

#endif  // DPLP_PRIVACY_HPP_
