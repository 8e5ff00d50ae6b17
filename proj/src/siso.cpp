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

#include "cobf/siso.hpp"

#include "cobf/errors.hpp"
#include "cobf/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cobf {
namespace {

using Eigen::Index;

double gain(const SisoInstance& inst, std::size_t k, std::size_t i) {
  return inst.Q(static_cast<Index>(k), static_cast<Index>(i));
}

void check_powers(const SisoInstance& inst, std::span<const double> p) {
  if (p.size() != inst.K()) throw std::invalid_argument("power vector length differs from K");
}

double zeta_of(const SisoInstance& inst, std::size_t i, std::span<const double> p) {
  std::vector<double> terms;
  terms.reserve(inst.K());
  for (std::size_t k = 0; k < inst.K(); ++k) {
    if (k != i) terms.push_back(gain(inst, k, i) * std::max(p[k], 0.0));
  }
  return solve_zeta(inst.sigma2[i], inst.rho[i], terms).zeta;
}

std::vector<double> sweep(const SisoInstance& inst, std::span<const double> p, std::span<const double> targets) {
  std::vector<double> next(inst.K());
  for (std::size_t i = 0; i < inst.K(); ++i) next[i] = min_power_response(inst, i, p, targets[i]);
  return next;
}

// q is a supersolution when every user meets its target at q itself; the
// iteration from zero then stays below q, so q is a feasible witness.
bool is_supersolution(const SisoInstance& inst, std::span<const double> q, std::span<const double> targets) {
  for (std::size_t i = 0; i < inst.K(); ++i) {
    if (q[i] > inst.P[i]) return false;
  }
  const auto r = sweep(inst, q, targets);
  for (std::size_t i = 0; i < inst.K(); ++i) {
    if (!(r[i] <= q[i])) return false;
  }
  return true;
}

double max_lhs_excess(const SisoInstance& inst, std::span<const double> p, std::span<const double> targets) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inst.K(); ++i) {
    if (targets[i] == 0.0) continue;
    worst = std::max(worst, outage_lhs_siso(inst, p, targets[i], i) - 1.0);
  }
  return std::isfinite(worst) ? worst : 0.0;
}

}  // namespace

std::vector<double> srm_rates_from_powers(const SisoInstance& instance, std::span<const double> p) {
  check_powers(instance, p);
  std::vector<double> rates(instance.K(), 0.0);
  for (std::size_t i = 0; i < instance.K(); ++i) {
    if (p[i] <= 0.0) continue;
    rates[i] = std::log2(1.0 + zeta_of(instance, i, p) * gain(instance, i, i) * p[i]);
  }
  return rates;
}

double weighted_sum_rate(const SisoInstance& instance, std::span<const double> p) {
  const auto rates = srm_rates_from_powers(instance, p);
  double total = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) total += instance.alpha[i] * rates[i];
  return total;
}

double min_power_response(const SisoInstance& instance, std::size_t i, std::span<const double> p, double R_target) {
  check_powers(instance, p);
  if (i >= instance.K()) throw std::out_of_range("user index out of range");
  if (R_target < 0.0 || !std::isfinite(R_target)) throw std::invalid_argument("rate target must be finite and >= 0");
  if (R_target == 0.0) return 0.0;
  const double c = std::exp2(R_target) - 1.0;
  const double response = c / (gain(instance, i, i) * zeta_of(instance, i, p));
  return std::isfinite(response) ? response : std::numeric_limits<double>::infinity();
}

FeasibilityResult feasibility_for_targets(const SisoInstance& instance, std::span<const double> R_targets,
                                          const FixedPointObserver& observer) {
  const std::size_t K = instance.K();
  if (R_targets.size() != K) throw std::invalid_argument("rate target length differs from K");

  FeasibilityResult result;
  std::vector<double> p(K, 0.0);
  double prev_step = 0.0;
  for (int sweep_no = 1; sweep_no <= kMaxFixedPointSweeps; ++sweep_no) {
    auto q = sweep(instance, p, R_targets);
    result.iterations = sweep_no;

    bool over_budget = false;
    double step = 0.0;
    bool converged = true;
    for (std::size_t i = 0; i < K; ++i) {
      if (!std::isfinite(q[i]) || q[i] > instance.P[i] + 1e-12) over_budget = true;
      const double d = q[i] - p[i];
      step = std::max(step, d);
      if (d > kFixedPointTolerance * q[i]) converged = false;
    }
    if (over_budget) {
      result.status = Feasibility::Infeasible;
      result.p = std::move(q);
      result.residual = step;
      return result;
    }
    if (observer) observer(sweep_no, q);

    if (converged) {
      result.status = Feasibility::Feasible;
      for (std::size_t i = 0; i < K; ++i) q[i] = std::min(q[i], instance.P[i]);
      result.residual = max_lhs_excess(instance, q, R_targets);
      result.p = std::move(q);
      return result;
    }

    // Near the feasibility boundary the iteration contracts slowly. Every 64
    // sweeps, extrapolate geometrically and accept the point if it is a
    // supersolution within budget.
    if (sweep_no % 64 == 0 && prev_step > 0.0) {
      const double lambda = step / prev_step;
      if (lambda < 1.0) {
        std::vector<double> cand(K);
        const double gain_factor = 1.01 * lambda / (1.0 - lambda);
        for (std::size_t i = 0; i < K; ++i) cand[i] = q[i] + (q[i] - p[i]) * gain_factor + 1e-12 * q[i];
        if (is_supersolution(instance, cand, R_targets)) {
          result.status = Feasibility::Feasible;
          result.residual = max_lhs_excess(instance, cand, R_targets);
          result.p = std::move(cand);
          return result;
        }
      }
    }
    prev_step = step;
    p = std::move(q);
  }
  // Sweep cap without convergence: reported as infeasible.
  result.status = Feasibility::Infeasible;
  result.p = std::move(p);
  result.residual = prev_step;
  return result;
}

FeasibilityResult feasibility_fixed_point(const SisoInstance& instance, double R_bar,
                                          const FixedPointObserver& observer) {
  if (R_bar < 0.0 || !std::isfinite(R_bar)) throw std::invalid_argument("R_bar must be finite and >= 0");
  std::vector<double> targets(instance.K());
  for (std::size_t i = 0; i < instance.K(); ++i) targets[i] = instance.alpha[i] * R_bar;
  return feasibility_for_targets(instance, targets, observer);
}

double mmf_upper_bound(const SisoInstance& instance) {
  double bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < instance.K(); ++i) {
    const double snr = instance.P[i] * gain(instance, i, i) * std::log(1.0 / instance.rho[i]) / instance.sigma2[i];
    bound = std::min(bound, std::log2(1.0 + snr) / instance.alpha[i]);
  }
  return instance.K() == 0 ? 0.0 : bound;
}

MmfSolution mmf_bisection(const SisoInstance& instance, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  MmfSolution sol;
  sol.p.assign(instance.K(), 0.0);
  double lo = 0.0;
  double hi = mmf_upper_bound(instance);
  while (hi - lo >= delta) {
    const double mid = 0.5 * (lo + hi);
    const auto fr = feasibility_fixed_point(instance, mid);
    sol.trace.push_back({lo, hi, mid, fr.feasible()});
    if (fr.feasible()) {
      lo = mid;
      sol.p = fr.p;
    } else {
      hi = mid;
    }
    ++sol.iterations;
  }
  sol.R = lo;

  const auto rates = srm_rates_from_powers(instance, sol.p);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rates.size(); ++i) worst = std::min(worst, rates[i] / instance.alpha[i]);
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] / instance.alpha[i] <= worst + 1e-9 * std::max(1.0, worst)) sol.binding.push_back(i);
  }
  return sol;
}

BalancingSolution outage_balancing_siso(const SisoInstance& instance, std::span<const double> R_targets, double tol) {
  const std::size_t K = instance.K();
  if (R_targets.size() != K) throw std::invalid_argument("rate target length differs from K");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  for (double r : R_targets) {
    if (r < 0.0 || !std::isfinite(r)) throw std::invalid_argument("rate targets must be finite and >= 0");
  }

  // At p = P every constraint reads rho * C_i <= 1, so rho = 1 / max_i C_i is
  // feasible with witness P and bounds the answer from below.
  double worst_log = 0.0;
  for (std::size_t i = 0; i < K; ++i) {
    if (R_targets[i] == 0.0) continue;
    const double c = std::exp2(R_targets[i]) - 1.0;
    const double S = gain(instance, i, i) * instance.P[i];
    double log_c = c * instance.sigma2[i] / S;
    for (std::size_t k = 0; k < K; ++k) {
      if (k != i) log_c += std::log1p(c * gain(instance, k, i) * instance.P[k] / S);
    }
    worst_log = std::max(worst_log, log_c);
  }
  const double rho_lo = std::exp(-worst_log);
  if (!(rho_lo > 0.0)) throw InputError("targets unachievable");

  BalancingSolution sol;
  sol.rho = rho_lo;
  sol.p = worst_log == 0.0 ? std::vector<double>(K, 0.0) : std::vector<double>(instance.P.begin(), instance.P.end());
  double lo = rho_lo;
  double hi = 1.0;
  SisoInstance trial = instance;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    std::fill(trial.rho.begin(), trial.rho.end(), mid);
    const auto fr = feasibility_for_targets(trial, R_targets);
    if (fr.feasible()) {
      lo = mid;
      sol.p = fr.p;
    } else {
      hi = mid;
    }
    ++sol.iterations;
  }
  sol.rho = lo;
  return sol;
}

double single_user_objective_F(double p, const VertexContext& ctx) {
  const double q = ctx.p_partner;
  double value = std::log2(1.0 + p * zeta_v(q, ctx.link)) + std::log2(1.0 + q * zeta_v(p, ctx.link));
  for (const auto& nb : ctx.neighbors) {
    value += nb.alpha * std::log2(1.0 + ctx.edge_power * zeta_e(p, nb.p_partner, ctx.link));
  }
  return value;
}

std::vector<double> single_user_objective_f_terms(double p, const VertexContext& ctx) {
  const double q = ctx.p_partner;
  const double zq = zeta_v(q, ctx.link);
  const double zp = zeta_v(p, ctx.link);
  std::vector<double> terms;
  terms.reserve(2 + ctx.neighbors.size());
  terms.push_back(zq / (1.0 + p * zq));
  terms.push_back(q * dzeta_v_dp(p, ctx.link) / (1.0 + q * zp));
  for (const auto& nb : ctx.neighbors) {
    const double ze = zeta_e(p, nb.p_partner, ctx.link);
    terms.push_back(nb.alpha * ctx.edge_power * dzeta_e_dp(p, nb.p_partner, ctx.link) / (1.0 + ctx.edge_power * ze));
  }
  return terms;
}

double single_user_objective_f(double p, const VertexContext& ctx) {
  double total = 0.0;
  for (double t : single_user_objective_f_terms(p, ctx)) total += t;
  return total / std::numbers::ln2;
}

}  // namespace cobf
