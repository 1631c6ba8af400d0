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

#include "dplp/privacy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dplp {

namespace {

void check_dist(const TruncatedLaplace& d) {
  if (!(d.sigma > 0.0) || !(d.half_width > 0.0)) {
    throw std::invalid_argument(
        "truncated Laplace requires sigma > 0 and half_width > 0");
  }
}

double count_factor(double base, SupportVariant variant) {
  return variant == SupportVariant::kAlgorithm1 ? 2.0 * base : base;
}

double support_radius(double sensitivity, double eps, double delta,
                      double count) {
  if (sensitivity == 0.0) return 0.0;
  if (!(sensitivity > 0.0)) {
    throw std::invalid_argument("sensitivity must be nonnegative");
  }
  if (!(eps > 0.0) || !(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument(
        "support radius requires eps > 0 and delta in (0, 1)");
  }
  // log1p/expm1 keep the round trip with tail_mass exact to a few ulps.
  return sensitivity / eps * std::log1p(count * std::expm1(eps) / delta);
}

}  // namespace

double trunc_laplace_quantile(const TruncatedLaplace& d, double u) {
  check_dist(d);
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::invalid_argument("quantile requires u in [0, 1]");
  }
  // Mass of the half interval [0, half_width] relative to the half Laplace.
  const double w = -std::expm1(-d.half_width / d.sigma);
  double z;
  if (u >= 0.5) {
    z = -d.sigma * std::log1p(-(2.0 * u - 1.0) * w);
  } else {
    z = d.sigma * std::log1p(-(1.0 - 2.0 * u) * w);
  }
  // Clamp so the support guarantee survives floating-point rounding.
  return std::clamp(z, -d.half_width, d.half_width);
}

double trunc_laplace_cdf(const TruncatedLaplace& d, double z) {
  check_dist(d);
  if (z <= -d.half_width) return 0.0;
  if (z >= d.half_width) return 1.0;
  const double e_s = std::exp(-d.half_width / d.sigma);
  const double norm = 2.0 * (1.0 - e_s);
  if (z <= 0.0) {
    return (std::exp(z / d.sigma) - e_s) / norm;
  }
  return 1.0 - (std::exp(-z / d.sigma) - e_s) / norm;
}

double sample_trunc_laplace(const TruncatedLaplace& d, CounterRng& rng) {
  return trunc_laplace_quantile(d, rng.next_open01());
}

double laplace_quantile(const Laplace& d, double u) {
  if (!(d.sigma > 0.0)) {
    throw std::invalid_argument("Laplace requires sigma > 0");
  }
  if (!(u > 0.0 && u < 1.0)) {
    throw std::invalid_argument("quantile requires u in (0, 1)");
  }
  if (u >= 0.5) {
    return -d.sigma * std::log1p(-(2.0 * u - 1.0));
  }
  return d.sigma * std::log1p(-(1.0 - 2.0 * u));
}

double sample_laplace(const Laplace& d, CounterRng& rng) {
  return laplace_quantile(d, rng.next_open01());
}

double support_A(double delta11_A, double eps, double delta, int m, int n,
                 SupportVariant variant) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("support_A requires m >= 1 and n >= 1");
  }
  const double count =
      count_factor(static_cast<double>(m) * static_cast<double>(n), variant);
  return support_radius(delta11_A, eps, delta, count);
}

double support_b(double delta1_b, double eps, double delta, int m,
                 SupportVariant variant) {
  if (m < 1) {
    throw std::invalid_argument("support_b requires m >= 1");
  }
  return support_radius(delta1_b, eps, delta,
                        count_factor(static_cast<double>(m), variant));
}

double tail_mass(double eps, double delta11, double s, double count) {
  if (!(eps > 0.0) || !(delta11 > 0.0) || !(s > 0.0) || !(count > 0.0)) {
    throw std::invalid_argument(
        "tail_mass requires positive eps, delta11, s, count");
  }
  const double denom = std::expm1(eps * s / delta11);
  if (std::isinf(denom)) return 0.0;
  return count * std::expm1(eps) / denom;
}

}  // namespace dplp
