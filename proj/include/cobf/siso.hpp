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

// Scalar-channel power control under outage constraints.
//
// For fixed powers user i can sustain R_i = log2(1 + zeta_i(p_-i) Q_ii p_i).
// Inverting that for p_i gives a standard interference function, so the
// Jacobi iteration p <- response(p) from p = 0 is componentwise nondecreasing
// and converges to the minimal feasible power vector whenever one exists.

#include "cobf/model.hpp"
#include "cobf/zeta.hpp"

#include <functional>
#include <span>
#include <vector>

namespace cobf {

std::vector<double> srm_rates_from_powers(const SisoInstance& instance, std::span<const double> p);
double weighted_sum_rate(const SisoInstance& instance, std::span<const double> p);

/// Smallest p_i meeting rate R_target against the other entries of p (p[i]
/// is ignored). Returns 0 for R_target == 0 and +inf if no finite power works.
double min_power_response(const SisoInstance& instance, std::size_t i, std::span<const double> p, double R_target);

enum class Feasibility { Feasible, Infeasible };

struct FeasibilityResult {
  Feasibility status = Feasibility::Infeasible;
  std::vector<double> p;  ///< witness if feasible, last iterate otherwise
  int iterations = 0;
  double residual = 0.0;  ///< max_i (lhs_i - 1) at p when feasible, else last step size
  bool feasible() const { return status == Feasibility::Feasible; }
};

inline constexpr int kMaxFixedPointSweeps = 10'000;
inline constexpr double kFixedPointTolerance = 1e-10;

/// Called with (sweep, iterate) after every sweep.
using FixedPointObserver = std::function<void(int, std::span<const double>)>;

/// Decides whether rate alpha_i * R_bar is simultaneously achievable.
FeasibilityResult feasibility_fixed_point(const SisoInstance& instance, double R_bar,
                                          const FixedPointObserver& observer = {});
/// Same with an explicit rate target per user.
FeasibilityResult feasibility_for_targets(const SisoInstance& instance, std::span<const double> R_targets,
                                          const FixedPointObserver& observer = {});

/// min_i (1 / alpha_i) log2(1 + P_i Q_ii ln(1/rho_i) / sigma_i^2).
double mmf_upper_bound(const SisoInstance& instance);

struct BisectionStep {
  double lo = 0.0;
  double hi = 0.0;
  double mid = 0.0;
  bool feasible = false;
};

struct MmfSolution {
  std::vector<double> p;
  double R = 0.0;  ///< last feasible common rate
  std::vector<BisectionStep> trace;
  std::vector<std::size_t> binding;  ///< users attaining min_i R_i / alpha_i at p
  int iterations = 0;
};

inline constexpr double kDefaultDelta = 1e-6;

/// Bisection on the common weighted rate. Throws std::invalid_argument for
/// delta <= 0.
MmfSolution mmf_bisection(const SisoInstance& instance, double delta = kDefaultDelta);

struct BalancingSolution {
  double rho = 0.0;
  std::vector<double> p;
  int iterations = 0;
};

/// Largest common satisfaction probability rho for which every R_targets[i]
/// is achievable, to within tol. Throws InputError("targets unachievable").
BalancingSolution outage_balancing_siso(const SisoInstance& instance, std::span<const double> R_targets,
                                        double tol = 1e-9);

// Single-vertex objective of the Max-Cut gadget with every other power frozen:
//
//   F(p) = log2(1 + p zeta_v(q)) + log2(1 + q zeta_v(p))
//          + sum_j alpha_j log2(1 + 0.7 zeta_e(p, q_j)),
//
// where q is the partner user's power and q_j the partner power of neighbour j.

struct EdgeNeighbor {
  double alpha = 0.0;
  double p_partner = 0.0;
};

struct VertexContext {
  double p_partner = 0.0;
  std::vector<EdgeNeighbor> neighbors;
  double edge_power = 0.7;
  LinkParams link = kMaxCutLink;
};

double single_user_objective_F(double p, const VertexContext& ctx);
/// dF/dp in closed form.
double single_user_objective_f(double p, const VertexContext& ctx);
/// The summands of f(p) * ln 2 (own term, partner term, one per neighbour).
std::vector<double> single_user_objective_f_terms(double p, const VertexContext& ctx);

}  // namespace cobf
