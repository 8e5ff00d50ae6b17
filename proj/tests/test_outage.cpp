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
#include "cobf/outage.hpp"
#include "cobf/random.hpp"
#include "cobf/zeta.hpp"

#include <Eigen/Cholesky>
#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace cobf {
namespace {

SisoInstance single_user(double Q, double sigma2, double rho, double P = 1.0) {
  SisoInstance s;
  s.Q = Eigen::MatrixXd::Constant(1, 1, Q);
  s.sigma2 = {sigma2};
  s.rho = {rho};
  s.P = {P};
  s.alpha = {1.0};
  return s;
}

TEST(InstantaneousRate, ZeroSignal) {
  std::vector<CVector> h{CVector::Ones(2), CVector::Ones(2)};
  BeamformerSet W{{CVector::Zero(2), CVector::Zero(2)}};
  EXPECT_EQ(instantaneous_rate(h, W, 0, 1.0), 0.0);
}

TEST(InstantaneousRate, UnitSnr) {
  std::vector<CVector> h{CVector::Ones(1)};
  EXPECT_DOUBLE_EQ(instantaneous_rate(h, beams_from_powers({1.0}), 0, 1.0), 1.0);
}

TEST(InstantaneousRate, OneInterferer) {
  std::vector<CVector> h{CVector::Ones(1), CVector::Ones(1)};
  EXPECT_NEAR(instantaneous_rate(h, beams_from_powers({1.0, 1.0}), 0, 1.0), std::log2(1.5), 1e-15);
}

TEST(InstantaneousRate, ConjugatesTheChannel) {
  CVector h(2), w(2);
  h << Complex(0.0, 1.0), Complex(1.0, 0.0);
  w << Complex(0.0, 1.0), Complex(1.0, 0.0);
  std::vector<CVector> ch{h};
  // |h^H w|^2 = |1 + 1|^2 = 4
  EXPECT_NEAR(instantaneous_rate(ch, BeamformerSet{{w}}, 0, 1.0), std::log2(5.0), 1e-14);
}

TEST(OutageLhs, ZeroRateGivesRho) {
  Rng rng(1);
  const MisoInstance inst = random_miso(rng, 3, 2);
  const BeamformerSet W = random_beams(rng, inst);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(outage_lhs(inst, W, 0.0, i), inst.rho[i]);
}

TEST(OutageLhs, SingleUserValue) {
  const MisoInstance inst = to_miso(single_user(1.0, 1.0, 0.6));
  EXPECT_NEAR(outage_lhs(inst, beams_from_powers({1.0}), 1.0, 0), 0.6 * std::exp(1.0), 1e-14);
  EXPECT_NEAR(0.6 * std::exp(1.0), 1.63097, 1e-5);
}

TEST(OutageLhs, SingleUserExactness) {
  const double outage = 1.0 - std::exp(-1.0);
  EXPECT_NEAR(outage, 0.63212, 1e-5);
  const MisoInstance inst = to_miso(single_user(1.0, 1.0, 1.0 - outage));
  EXPECT_NEAR(outage_lhs(inst, beams_from_powers({1.0}), 1.0, 0), 1.0, 1e-15);
}

TEST(OutageLhs, ZeroSignalIsUndefined) {
  const MisoInstance inst = to_miso(single_user(1.0, 1.0, 0.6));
  EXPECT_THROW(outage_lhs(inst, beams_from_powers({0.0}), 1.0, 0), UndefinedError);
}

TEST(OutageLhsSiso, MatchesMisoEmbedding) {
  Rng rng(2);
  for (int c = 0; c < 20; ++c) {
    const SisoInstance s = random_siso(rng, 3);
    const MisoInstance m = to_miso(s);
    std::vector<double> p{0.3 + 0.1 * c, 0.5, 1.1};
    const BeamformerSet W = beams_from_powers(p);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(outage_lhs_siso(s, p, 0.7, i), outage_lhs(m, W, 0.7, i), 1e-15);
    }
  }
}

TEST(OutageLhsSiso, GadgetVertexAtFullPower) {
  SisoInstance s = single_user(1.0, 0.1, 0.95);
  const double R = std::log2(1.0 + zeta_v(0.0));
  EXPECT_NEAR(R, 0.5973, 5e-4);
  const std::vector<double> p{1.0};
  EXPECT_NEAR(outage_lhs_siso(s, p, R, 0), 1.0, 1e-12);
}

TEST(MaxOutageRate, MakesTheConstraintTight) {
  Rng rng(3);
  for (int c = 0; c < 30; ++c) {
    const MisoInstance inst = random_miso(rng, 1 + c % 4, 1 + c % 3);
    const BeamformerSet W = random_beams(rng, inst);
    for (std::size_t i = 0; i < inst.K(); ++i) {
      EXPECT_NEAR(outage_lhs(inst, W, max_outage_rate(inst, W, i), i), 1.0, 1e-10);
    }
  }
}

TEST(CovarianceFactor, Reconstructs) {
  Rng rng(4);
  const MisoInstance inst = random_miso(rng, 2, 3);
  for (const auto& Q : inst.Qcov) {
    const CMatrix L = covariance_factor(Q);
    EXPECT_LT((L * L.adjoint() - Q).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(CovarianceFactor, RejectsIndefinite) {
  CMatrix Q = CMatrix::Identity(2, 2);
  Q(1, 1) = -0.5;
  EXPECT_THROW(covariance_factor(Q), InputError);
}

// Outage frequency from channels drawn with a different generator and
// Cholesky factors; independent of the Philox/kernel path.
double reference_outage(const MisoInstance& inst, const BeamformerSet& W, double R, std::size_t i, int n,
                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<CMatrix> L;
  for (std::size_t k = 0; k < inst.K(); ++k) {
    const CMatrix Q = inst.cov(k, i) + 1e-14 * CMatrix::Identity(inst.Nt, inst.Nt);
    L.push_back(Q.llt().matrixL());
  }
  int outages = 0;
  std::vector<CVector> h(inst.K());
  for (int s = 0; s < n; ++s) {
    for (std::size_t k = 0; k < inst.K(); ++k) {
      CVector z(inst.Nt);
      for (Eigen::Index d = 0; d < z.size(); ++d) z(d) = Complex(normal(rng), normal(rng));
      h[k] = L[k] * z;
    }
    if (instantaneous_rate(h, W, i, inst.sigma2[i]) < R) ++outages;
  }
  return static_cast<double>(outages) / n;
}

TEST(OutageLhs, ClosedFormAgreesWithIndependentSampler) {
  Rng rng(5);
  for (int c = 0; c < 5; ++c) {
    const MisoInstance inst = random_miso(rng, 3, 2);
    const BeamformerSet W = random_beams(rng, inst);
    const double R = 0.8 * max_outage_rate(inst, W, 0);
    const double p_out = 1.0 - inst.rho[0] / outage_lhs(inst, W, R, 0);
    const int n = 100000;
    const double est = reference_outage(inst, W, R, 0, n, 100 + c);
    const double se = std::sqrt(p_out * (1.0 - p_out) / n);
    EXPECT_NEAR(est, p_out, 4.0 * se + 1e-9) << "case " << c;
  }
}

TEST(McOutage, ZeroRateNeverOutage) {
  Rng rng(6);
  const MisoInstance inst = random_miso(rng, 2, 2);
  const BeamformerSet W = random_beams(rng, inst);
  McOptions opt;
  opt.samples = 10000;
  const McEstimate e = mc_outage(inst, W, 0.0, 0, opt);
  EXPECT_EQ(e.estimate, 0.0);
  EXPECT_EQ(e.outages, 0u);
}

TEST(McOutage, SingleUserExponentialCdf) {
  const MisoInstance inst = to_miso(single_user(1.0, 1.0, 0.5));
  McOptions opt;
  opt.samples = 1'000'000;
  const McEstimate e = mc_outage(inst, beams_from_powers({1.0}), 1.0, 0, opt);
  EXPECT_NEAR(e.estimate, 1.0 - std::exp(-1.0), 3.0 * e.std_error);
  EXPECT_NEAR(e.std_error, std::sqrt(e.estimate * (1.0 - e.estimate) / 1e6), 1e-15);
}

TEST(McOutage, DeterministicAcrossThreadsAndKernels) {
  Rng rng(7);
  const MisoInstance inst = random_miso(rng, 3, 3);
  const BeamformerSet W = random_beams(rng, inst);
  const double R = max_outage_rate(inst, W, 1);
  McOptions opt;
  opt.samples = 50001;
  opt.seed = 9;
  opt.threads = 1;
  opt.isa = simd::Isa::Scalar;
  const McEstimate a = mc_outage(inst, W, R, 1, opt);
  opt.threads = 3;
  const McEstimate b = mc_outage(inst, W, R, 1, opt);
  opt.isa = simd::Isa::Avx2;
  const McEstimate c = mc_outage(inst, W, R, 1, opt);
  opt.block = 1000;
  const McEstimate d = mc_outage(inst, W, R, 1, opt);
  EXPECT_EQ(a.outages, b.outages);
  EXPECT_EQ(a.outages, c.outages);
  EXPECT_EQ(a.outages, d.outages);
  opt.seed = 10;
  EXPECT_NE(mc_outage(inst, W, R, 1, opt).outages, a.outages);
}

}  // namespace
}  // namespace cobf
