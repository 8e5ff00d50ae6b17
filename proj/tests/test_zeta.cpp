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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace cobf {
namespace {

double central_difference(const auto& f, double x, double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }

TEST(Psi, ZeroArgumentGivesRho) {
  const ZetaContext ctx{0.1, 0.95, {1.0, 0.3}};
  EXPECT_DOUBLE_EQ(psi(0.0, ctx), 0.95);
}

TEST(Psi, ClosedFormRootWithoutInterference) {
  const ZetaContext ctx{0.1, 0.95, {}};
  const double x = std::log(1.0 / 0.95) / 0.1;
  EXPECT_NEAR(x, 0.512933, 1e-6);
  EXPECT_NEAR(psi(x, ctx), 1.0, 1e-14);
}

TEST(SolveZeta, NoInterferenceMatchesClosedForm) {
  const ZetaRoot r = solve_zeta(ZetaContext{0.1, 0.95, {}});
  EXPECT_NEAR(r.zeta, std::log(1.0 / 0.95) / 0.1, 1e-12);
  EXPECT_NEAR(std::log2(1.0 + r.zeta), 0.5973, 5e-4);
}

TEST(SolveZeta, ZeroInterferersEqualNone) {
  const double a = solve_zeta(ZetaContext{0.1, 0.95, {0.0, 0.0}}).zeta;
  const double b = solve_zeta(ZetaContext{0.1, 0.95, {}}).zeta;
  EXPECT_NEAR(a, b, 1e-14);
  EXPECT_NEAR(std::log2(1.0 + 0.7 * a), 0.4426, 5e-4);
}

TEST(SolveZeta, OneUnitInterferer) {
  const ZetaContext ctx{0.1, 0.95, {1.0}};
  const ZetaRoot r = solve_zeta(ctx);
  EXPECT_NEAR(std::log2(1.0 + r.zeta), 0.0671, 5e-4);
  EXPECT_NEAR(psi(r.zeta, ctx), 1.0, 1e-12);
}

TEST(SolveZeta, RandomContextsSatisfyTheRootEquation) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int c = 0; c < 200; ++c) {
    ZetaContext ctx{0.01 + u(rng), 0.05 + 0.94 * u(rng), {}};
    const int n = static_cast<int>(u(rng) * 5);
    for (int k = 0; k < n; ++k) ctx.interference.push_back(5.0 * u(rng));
    const ZetaRoot r = solve_zeta(ctx);
    ASSERT_GT(r.zeta, 0.0);
    EXPECT_NEAR(log_psi(r.zeta, ctx), 0.0, 1e-11);
  }
}

TEST(UpperBound, QuotedValueAndDefinition) {
  const double zbar = zeta_upper_bound(0.1, 0.95, 1.0);
  EXPECT_NEAR(std::log(1.0 / 0.95) * (1.0 + zbar), 0.0537, 5e-4);
  EXPECT_NEAR(0.95 * (1.0 + 0.1 * zbar) * (1.0 + zbar), 1.0, 1e-12);
}

TEST(UpperBound, LinearRootWithoutInterference) {
  const double zbar = zeta_upper_bound(0.1, 0.95, 0.0);
  EXPECT_NEAR(zbar, (1.0 / 0.95 - 1.0) / 0.1, 1e-12);
  EXPECT_GE(zbar, zeta_v(0.0));
}

TEST(UpperBound, DominatesTrueRoot) {
  for (double p = 0.0; p <= 2.0; p += 0.05) EXPECT_GE(zeta_upper_bound(0.1, 0.95, p), zeta_v(p));
}

TEST(ZetaE, Symmetric) {
  for (double a = 0.0; a <= 1.0; a += 0.1) {
    for (double b = 0.0; b <= 1.0; b += 0.1) EXPECT_NEAR(zeta_e(a, b), zeta_e(b, a), 1e-12);
  }
}

TEST(DzetaV, InitialSlope) { EXPECT_NEAR(dzeta_v_dp(0.0), -zeta_v(0.0) / 0.1, 1e-9); }

TEST(DzetaV, MatchesFiniteDifference) {
  const auto f = [](double p) { return zeta_v(p); };
  EXPECT_NEAR(dzeta_v_dp(0.5), central_difference(f, 0.5, 1e-5), 1e-6);
}

TEST(DzetaV, NegativeOnRandomPowers) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100; ++k) EXPECT_LT(dzeta_v_dp(u(rng)), 0.0);
}

TEST(DzetaE, MatchesFiniteDifference) {
  const auto f = [](double p) { return zeta_e(p, 0.7); };
  EXPECT_NEAR(dzeta_e_dp(0.3, 0.7), central_difference(f, 0.3, 1e-5), 1e-6);
}

TEST(DzetaE, NegativeOnGrid) {
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) EXPECT_LT(dzeta_e_dp(a / 9.0, b / 9.0), 0.0);
  }
}

TEST(Derivatives, OtherLinkParameters) {
  const LinkParams link{0.37, 0.8};
  const auto fv = [&](double p) { return zeta_v(p, link); };
  const auto fe = [&](double p) { return zeta_e(p, 1.3, link); };
  for (double p : {0.1, 0.9, 1.7}) {
    EXPECT_NEAR(dzeta_v_dp(p, link), central_difference(fv, p, 1e-5), 1e-6);
    EXPECT_NEAR(dzeta_e_dp(p, 1.3, link), central_difference(fe, p, 1e-5), 1e-6);
  }
}

}  // namespace
}  // namespace cobf
