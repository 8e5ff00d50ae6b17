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

#pragma once

// Implicit interference function.
//
// For a receiver with noise sigma2, satisfaction probability rho and
// interference terms t_k = Q_ki * p_k, the function
//
//   psi(x) = rho * exp(sigma2 * x) * prod_k (1 + t_k * x)
//
// is strictly increasing on x >= 0 with psi(0) = rho < 1, so psi(x) = 1 has a
// unique root zeta >= 0. The largest outage-feasible rate of a user with own
// gain Q_ii and power p_i is then log2(1 + zeta * Q_ii * p_i).

#include <span>
#include <vector>

namespace cobf {

struct ZetaContext {
  double sigma2 = 0.1;
  double rho = 0.95;
  std::vector<double> interference;  ///< t_k = Q_ki * p_k >= 0
};

/// Noise and satisfaction probability of a single receiver.
struct LinkParams {
  double sigma2 = 0.1;
  double rho = 0.95;
};

/// Uniform receiver parameters of the Max-Cut gadget.
inline constexpr LinkParams kMaxCutLink{0.1, 0.95};

struct ZetaRoot {
  double zeta = 0.0;
  double log_residual = 0.0;  ///< ln psi(zeta)
  int iterations = 0;
};

inline constexpr double kZetaTolerance = 1e-12;

double log_psi(double x, double sigma2, double rho, std::span<const double> interference);
double log_psi(double x, const ZetaContext& ctx);
double psi(double x, const ZetaContext& ctx);

/// Safeguarded Newton on ln psi inside [0, zeta_upper_bound].
ZetaRoot solve_zeta(double sigma2, double rho, std::span<const double> interference, double tol = kZetaTolerance);
ZetaRoot solve_zeta(const ZetaContext& ctx, double tol = kZetaTolerance);

/// Positive root of rho (1 + sigma2 x)(1 + p x) = 1. Dominates zeta for any
/// interference list whose terms sum to p.
double zeta_upper_bound(double sigma2, double rho, double p);
double zeta_upper_bound(const ZetaContext& ctx);

/// zeta for one interferer of power p (vertex users of the Max-Cut gadget).
double zeta_v(double p, LinkParams link = kMaxCutLink);
/// zeta for two interferers of powers p1, p2 (edge users of the gadget).
double zeta_e(double p1, double p2, LinkParams link = kMaxCutLink);

/// d zeta_v / dp from the implicit function theorem.
double dzeta_v_dp(double p, LinkParams link = kMaxCutLink);
/// d zeta_e(p, p_bar) / dp.
double dzeta_e_dp(double p, double p_bar, LinkParams link = kMaxCutLink);

}  // namespace cobf
