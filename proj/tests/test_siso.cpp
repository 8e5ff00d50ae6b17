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
#include "cobf/errors.hpp"
#include "cobf/oracles.hpp"
#include "cobf/outage.hpp"
#include "cobf/random.hpp"
#include "cobf/siso.hpp"
#include "cobf/zeta.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace cobf {
namespace {

// K=1, Q=1, sigma2=1, rho=1/e, P=1: feasible iff R <= 1.
SisoInstance unit_user() {
  SisoInstance s;
  s.Q = Eigen::MatrixXd::Ones(1, 1);
  s.sigma2 = {1.0};
  s.rho = {std::exp(-1.0)};
  s.P = {1.0};
  s.alpha = {1.0};
  return s;
}

bool feasible_at(const SisoInstance& s, std::span<const double> p, double R_bar) {
  for (std::size_t i = 0; i < s.K(); ++i) {
    if (p[i] > s.P[i] + 1e-12) return false;
    if (p[i] <= 0.0) return false;
    if (outage_lhs_siso(s, p, s.alpha[i] * R_bar, i) > 1.0 + 1e-9) return false;
  }
  return true;
}

TEST(SrmRates, ZeroPowers) {
  Rng rng(1);
  const SisoInstance s = random_siso(rng, 3);
  for (double r : srm_rates_from_powers(s, std::vector<double>(3, 0.0))) EXPECT_EQ(r, 0.0);
}

TEST(SrmRates, RatesMakeConstraintsTight) {
  Rng rng(2);
  for (int c = 0; c < 20; ++c) {
    const SisoInstance s = random_siso(rng, 3);
    const std::vector<double> p{0.2 + 0.05 * c, 0.9, 0.4};
    const auto R = srm_rates_from_powers(s, p);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(outage_lhs_siso(s, p, R[i], i), 1.0, 1e-10);
  }
}

TEST(MinPowerResponse, Cases) {
  const SisoInstance s = unit_user();
  std::vector<double> p{0.0};
  EXPECT_EQ(min_power_response(s, 0, p, 0.0), 0.0);
  EXPECT_NEAR(min_power_response(s, 0, p, 1.0), 1.0, 1e-12);
}

TEST(MinPowerResponse, TightAndMonotone) {
  Rng rng(3);
  for (int c = 0; c < 30; ++c) {
    const SisoInstance s = random_siso(rng, 3);
    std::vector<double> p{0.5, 0.3, 0.8};
    const double q = min_power_response(s, 1, p, 0.6);
    p[1] = q;
    EXPECT_NEAR(outage_lhs_siso(s, p, 0.6, 1), 1.0, 1e-10);
    std::vector<double> louder{0.6, q, 0.8};
    EXPECT_GT(min_power_response(s, 1, louder, 0.6), q);
  }
}

TEST(FixedPoint, ZeroRate) {
  Rng rng(4);
  const SisoInstance s = random_siso(rng, 3);
  const FeasibilityResult r = feasibility_fixed_point(s, 0.0);
  EXPECT_TRUE(r.feasible());
  for (double x : r.p) EXPECT_EQ(x, 0.0);
}

TEST(FixedPoint, SingleUserThreshold) {
  const SisoInstance s = unit_user();
  EXPECT_TRUE(feasibility_fixed_point(s, 0.999).feasible());
  EXPECT_TRUE(feasibility_fixed_point(s, 1.0).feasible());
  EXPECT_FALSE(feasibility_fixed_point(s, 1.001).feasible());
}

TEST(FixedPoint, IteratesIncreaseFromZero) {
  Rng rng(5);
  const SisoInstance s = random_siso(rng, 3);
  std::vector<double> last(3, 0.0);
  bool monotone = true;
  feasibility_fixed_point(s, 0.5 * mmf_upper_bound(s), [&](int, std::span<const double> p) {
    for (std::size_t i = 0; i < 3; ++i) monotone = monotone && p[i] >= last[i];
    last.assign(p.begin(), p.end());
  });
  EXPECT_TRUE(monotone);
}

TEST(FixedPoint, AgreesWithGridOracle) {
  Rng rng(6);
  std::uniform_real_distribution<double> frac(0.1, 1.0);
  int feasible_cases = 0;
  for (int c = 0; c < 50; ++c) {
    const std::size_t K = 1 + static_cast<std::size_t>(c % 3);
    const SisoInstance s = random_siso(rng, K);
    const double R_bar = frac(rng) * mmf_upper_bound(s);
    const FeasibilityResult fp = feasibility_fixed_point(s, R_bar);
    if (fp.feasible()) {
      ++feasible_cases;
      EXPECT_TRUE(feasible_at(s, fp.p, R_bar)) << "case " << c;
    }
    GridSpec grid;
    const double step = K == 3 ? 0.02 : 1e-3;
    for (std::size_t i = 0; i < K; ++i) grid.axes.push_back({step, s.P[i], step});
    const GridResult g = grid_search(
        [&](std::span<const double> p) { return feasible_at(s, p, R_bar) ? 1.0 : 0.0; }, grid);
    if (g.value > 0.0) {
      EXPECT_TRUE(fp.feasible()) << "grid found a point, fixed point did not, case " << c;
    }
  }
  EXPECT_GT(feasible_cases, 10);
}

TEST(MmfUpperBound, Cases) {
  EXPECT_NEAR(mmf_upper_bound(unit_user()), 1.0, 1e-15);
  SisoInstance s = unit_user();
  s.rho = {1.0 - 1e-12};
  EXPECT_LT(mmf_upper_bound(s), 1e-10);
}

TEST(MmfUpperBound, TightWithoutInterference) {
  Rng rng(7);
  for (int c = 0; c < 10; ++c) {
    SisoInstance s = random_siso(rng, 3);
    for (Eigen::Index k = 0; k < 3; ++k) {
      for (Eigen::Index i = 0; i < 3; ++i) {
        if (k != i) s.Q(k, i) = 0.0;
      }
    }
    const double ub = mmf_upper_bound(s);
    EXPECT_TRUE(feasibility_fixed_point(s, ub * (1.0 - 1e-9)).feasible());
    EXPECT_FALSE(feasibility_fixed_point(s, ub + 1e-6).feasible());
  }
}

TEST(MmfBisection, SingleUserClosedForm) {
  const MmfSolution sol = mmf_bisection(unit_user(), 1e-6);
  EXPECT_NEAR(sol.R, 1.0, 1e-6);
  EXPECT_LE(sol.R, 1.0);
  EXPECT_THROW(mmf_bisection(unit_user(), 0.0), std::invalid_argument);
}

TEST(MmfBisection, SymmetricUsersGetEqualPower) {
  SisoInstance s;
  s.Q.resize(2, 2);
  s.Q << 1.0, 0.3, 0.3, 1.0;
  s.sigma2 = {0.2, 0.2};
  s.rho = {0.9, 0.9};
  s.P = {1.0, 1.0};
  s.alpha = {1.0, 1.0};
  const MmfSolution sol = mmf_bisection(s, 1e-7);
  EXPECT_NEAR(sol.p[0], sol.p[1], 1e-6);
  EXPECT_EQ(sol.binding.size(), 2u);
}

TEST(MmfBisection, TraceIsMonotone) {
  Rng rng(8);
  for (int c = 0; c < 10; ++c) {
    const SisoInstance s = random_siso(rng, 3);
    const MmfSolution sol = mmf_bisection(s, 1e-5);
    double lo = 0.0;
    double hi = mmf_upper_bound(s);
    for (const auto& step : sol.trace) {
      EXPECT_GE(step.lo, lo);
      EXPECT_LE(step.hi, hi);
      lo = step.lo;
      hi = step.hi;
    }
    EXPECT_TRUE(feasible_at(s, sol.p, sol.R));
  }
}

TEST(Balancing, SingleUserClosedForm) {
  SisoInstance s = unit_user();
  s.P = {2.0};
  const std::vector<double> R{1.0};
  const BalancingSolution b = outage_balancing_siso(s, R, 1e-12);
  EXPECT_NEAR(b.rho, std::exp(-(2.0 - 1.0) * 1.0 / (1.0 * 2.0)), 1e-9);
}

TEST(Balancing, ZeroTargets) {
  Rng rng(9);
  const SisoInstance s = random_siso(rng, 2);
  const std::vector<double> R{0.0, 0.0};
  const BalancingSolution b = outage_balancing_siso(s, R);
  EXPECT_NEAR(b.rho, 1.0, 1e-9);
}

TEST(Balancing, MonotoneInTargets) {
  Rng rng(10);
  for (int c = 0; c < 10; ++c) {
    const SisoInstance s = random_siso(rng, 3);
    std::vector<double> R{0.3, 0.2, 0.4};
    const double a = outage_balancing_siso(s, R).rho;
    R[1] = 0.5;
    const double b = outage_balancing_siso(s, R).rho;
    EXPECT_LE(b, a + 1e-9);
  }
}

TEST(Balancing, SolutionAchievesTargets) {
  Rng rng(11);
  const SisoInstance s = random_siso(rng, 3);
  const std::vector<double> R{0.3, 0.2, 0.4};
  const BalancingSolution b = outage_balancing_siso(s, R, 1e-10);
  SisoInstance t = s;
  t.rho.assign(3, b.rho);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LE(b.p[i], s.P[i] + 1e-12);
    EXPECT_LE(outage_lhs_siso(t, b.p, R[i], i), 1.0 + 1e-8);
  }
  t.rho.assign(3, b.rho + 1e-6);
  EXPECT_FALSE(feasibility_for_targets(t, R).feasible());
}

TEST(SingleUserObjective, NoNeighbours) {
  VertexContext ctx;
  for (double p = 0.0; p <= 1.0; p += 0.1) {
    EXPECT_NEAR(single_user_objective_F(p, ctx), std::log2(1.0 + p * zeta_v(0.0)), 1e-14);
    EXPECT_GT(single_user_objective_f(p, ctx), 0.0);
  }
}

TEST(SingleUserObjective, DerivativeMatchesFiniteDifference) {
  VertexContext ctx;
  ctx.p_partner = 1.0;
  ctx.neighbors = {{0.25, 0.0}, {0.125, 1.0}};
  const double h = 1e-4;
  const double fd = (single_user_objective_F(0.5 + h, ctx) - single_user_objective_F(0.5 - h, ctx)) / (2.0 * h);
  const double f = single_user_objective_f(0.5, ctx);
  EXPECT_LE(std::abs(fd - f), 1e-5 * std::abs(f));
  double sum = 0.0;
  for (double t : single_user_objective_f_terms(0.5, ctx)) sum += t;
  EXPECT_NEAR(sum / std::log(2.0), f, 1e-14);
}

TEST(SingleUserObjective, SingleRise) {
  Rng rng(12);
  for (int c = 0; c < 50; ++c) {
    const VertexContext ctx = random_vertex_context(rng);
    const SignPattern sp = sign_pattern([&](double p) { return single_user_objective_f(p, ctx); }, {0.0, 1.0, 1e-3});
    EXPECT_TRUE(sp.single_rise()) << "context " << c;
  }
}

}  // namespace
}  // namespace cobf
