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

// Rate outage under Rayleigh fading with covariance-only channel knowledge.
//
// With h_ki ~ CN(0, Q_ki) the outage constraint Pr{r_i < R_i} <= 1 - rho_i is
// equivalent to
//
//   rho_i exp(c sigma_i^2 / S_i) prod_{k != i} (1 + c I_ki / S_i) <= 1,
//
// where c = 2^R_i - 1, S_i = w_i^H Q_ii w_i and I_ki = w_k^H Q_ki w_k.
// outage_lhs returns the left-hand side; mc_outage estimates the probability
// itself by sampling channels.

#include "cobf/model.hpp"
#include "cobf/simd.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cobf {

/// log2(1 + |h_ii^H w_i|^2 / (sum_{k != i} |h_ki^H w_k|^2 + sigma2_i)).
/// channels[k] is h_ki, the channel from transmitter k into receiver i.
double instantaneous_rate(std::span<const CVector> channels, const BeamformerSet& beams, std::size_t i, double sigma2_i);

/// Throws UndefinedError when R_i > 0 and the received signal power is zero.
double outage_lhs(const MisoInstance& instance, const BeamformerSet& beams, double R_i, std::size_t i);
double outage_lhs_siso(const SisoInstance& instance, std::span<const double> p, double R_i, std::size_t i);

/// Largest R_i with outage_lhs <= 1 (the rate at which the constraint binds).
double max_outage_rate(const MisoInstance& instance, const BeamformerSet& beams, std::size_t i);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  ///< sqrt(p (1 - p) / n)
  std::uint64_t outages = 0;
  std::uint64_t samples = 0;
};

struct McOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t block = 4096;  ///< samples per kernel call
  unsigned threads = 0;      ///< 0: hardware concurrency
  simd::Isa isa = simd::detect_isa();
};

/// Monte-Carlo estimate of Pr{r_i < R_i}. Sample t uses Philox streams
/// (seed, t, k * Nt + d), so the result depends only on (seed, samples).
McEstimate mc_outage(const MisoInstance& instance, const BeamformerSet& beams, double R_i, std::size_t i,
                     const McOptions& options = {});

/// L with L L^H = Q from the eigendecomposition, eigenvalues >= -1e-10
/// clipped to zero. Throws InputError for non-PSD input.
CMatrix covariance_factor(const CMatrix& Q);

}  // namespace cobf
