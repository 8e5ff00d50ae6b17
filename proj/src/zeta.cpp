// Copyright 2026 The cobf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cobf/zeta.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace cobf {
namespace {

constexpr int kMaxIterations = 200;

double interference_sum(std::span<const double> interference) {
  double s = 0.0;
  for (double t : interference) s += t;
  return s;
}

// d/dx ln psi
double dlog_psi(double x, double sigma2, std::span<const double> interference) {
  double d = sigma2;
  for (double t : interference) d += t / (1.0 + t * x);
  return d;
}

}  // namespace

double log_psi(double x, double sigma2, double rho, std::span<const double> interference) {
  double v = std::log(rho) + sigma2 * x;
  for (double t : interference) v += std::log1p(t * x);
  return v;
}

double log_psi(double x, const ZetaContext& ctx) { return log_psi(x, ctx.sigma2, ctx.rho, ctx.interference); }

double psi(double x, const ZetaContext& ctx) { return std::exp(log_psi(x, ctx)); }

double zeta_upper_bound(double sigma2, double rho, double p) {
  // sigma2 p x^2 + (sigma2 + p) x - (1/rho - 1) = 0, positive root in the
  // cancellation-free form 2c / (b + sqrt(b^2 + 4ac)); also valid for p = 0.
  const double a = sigma2 * p;
  const double b = sigma2 + p;
  const double c = 1.0 / rho - 1.0;
  return 2.0 * c / (b + std::sqrt(b * b + 4.0 * a * c));
}

double zeta_upper_bound(const ZetaContext& ctx) {
  return zeta_upper_bound(ctx.sigma2, ctx.rho, interference_sum(ctx.interference));
}

ZetaRoot solve_zeta(double sigma2, double rho, std::span<const double> interference, double tol) {
  const double total = interference_sum(interference);
  if (total == 0.0) {
    return {std::log(1.0 / rho) / sigma2, 0.0, 0};
  }

  // ln psi is concave and increasing, so Newton started left of the root
  // stays left of it; the bracket only guards against rounding.
  double lo = 0.0;
  double hi = zeta_upper_bound(sigma2, rho, total);
  double x = 0.0;
  double g = std::log(rho);
  ZetaRoot root;
  for (int it = 1; it <= kMaxIterations; ++it) {
    root.iterations = it;
    double next = x - g / dlog_psi(x, sigma2, interference);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    g = log_psi(x, sigma2, rho, interference);
    if (g < 0.0) lo = x;
    else hi = x;
    if (std::abs(g) <= tol && step <= tol * std::max(1.0, x)) break;
    if (g == 0.0 || hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, x)) break;
  }
  root.zeta = x;
  root.log_residual = g;
  return root;
}

ZetaRoot solve_zeta(const ZetaContext& ctx, double tol) {
  return solve_zeta(ctx.sigma2, ctx.rho, ctx.interference, tol);
}

double zeta_v(double p, LinkParams link) {
  const std::array<double, 1> t{p};
  return solve_zeta(link.sigma2, link.rho, t).zeta;
}

double zeta_e(double p1, double p2, LinkParams link) {
  const std::array<double, 2> t{p1, p2};
  return solve_zeta(link.sigma2, link.rho, t).zeta;
}

double dzeta_v_dp(double p, LinkParams link) {
  const double z = zeta_v(p, link);
  const double s = link.sigma2;
  return -z / (s + s * p * z + p);
}

double dzeta_e_dp(double p, double p_bar, LinkParams link) {
  const double z = zeta_e(p, p_bar, link);
  const double s = link.sigma2;
  const double u = 1.0 + p_bar * z;
  return -z * u / ((1.0 + p * z) * (p_bar + s * u) + p * u);
}

}  // namespace cobf
