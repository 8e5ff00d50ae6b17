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

#include "cobf/outage.hpp"

#include "cobf/errors.hpp"
#include "cobf/philox.hpp"
#include "cobf/validate.hpp"
#include "cobf/zeta.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <thread>

namespace cobf {
namespace {

double quad_form(const CVector& w, const CMatrix& Q) { return std::max(0.0, (w.adjoint() * Q * w)(0, 0).real()); }

void check_dims(const MisoInstance& instance, const BeamformerSet& beams, std::size_t i) {
  if (i >= instance.K()) throw std::out_of_range("user index out of range");
  if (beams.K() != instance.K()) throw std::invalid_argument("beamformer count differs from K");
  for (const auto& w : beams.w) {
    if (static_cast<std::size_t>(w.size()) != instance.Nt) throw std::invalid_argument("beamformer length differs from Nt");
  }
}

struct Link {
  std::size_t tx = 0;
  CVector projection;  // L^H w
};

}  // namespace

double instantaneous_rate(std::span<const CVector> channels, const BeamformerSet& beams, std::size_t i,
                          double sigma2_i) {
  if (channels.size() != beams.K()) throw std::invalid_argument("channel count differs from beamformer count");
  if (i >= channels.size()) throw std::out_of_range("user index out of range");
  double signal = 0.0;
  double interference = 0.0;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (channels[k].size() != beams.w[k].size()) throw std::invalid_argument("channel and beamformer lengths differ");
    const double g = std::norm(channels[k].dot(beams.w[k]));  // dot() conjugates the first argument
    if (k == i) signal = g;
    else interference += g;
  }
  return std::log2(1.0 + signal / (interference + sigma2_i));
}

double outage_lhs(const MisoInstance& instance, const BeamformerSet& beams, double R_i, std::size_t i) {
  check_dims(instance, beams, i);
  if (R_i == 0.0) return instance.rho[i];
  const double S = quad_form(beams.w[i], instance.cov(i, i));
  if (!(S > 0.0)) throw UndefinedError("undefined constraint: zero received signal power for user " + std::to_string(i));
  const double c = std::exp2(R_i) - 1.0;
  double lhs = instance.rho[i] * std::exp(c * instance.sigma2[i] / S);
  for (std::size_t k = 0; k < instance.K(); ++k) {
    if (k == i) continue;
    lhs *= 1.0 + c * quad_form(beams.w[k], instance.cov(k, i)) / S;
  }
  return lhs;
}

double outage_lhs_siso(const SisoInstance& instance, std::span<const double> p, double R_i, std::size_t i) {
  if (i >= instance.K()) throw std::out_of_range("user index out of range");
  if (p.size() != instance.K()) throw std::invalid_argument("power vector length differs from K");
  if (R_i == 0.0) return instance.rho[i];
  const double S = instance.Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) * p[i];
  if (!(S > 0.0)) throw UndefinedError("undefined constraint: zero received signal power for user " + std::to_string(i));
  const double c = std::exp2(R_i) - 1.0;
  double lhs = instance.rho[i] * std::exp(c * instance.sigma2[i] / S);
  for (std::size_t k = 0; k < instance.K(); ++k) {
    if (k == i) continue;
    lhs *= 1.0 + c * instance.Q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) * p[k] / S;
  }
  return lhs;
}

double max_outage_rate(const MisoInstance& instance, const BeamformerSet& beams, std::size_t i) {
  check_dims(instance, beams, i);
  const double S = quad_form(beams.w[i], instance.cov(i, i));
  if (!(S > 0.0)) return 0.0;
  // With x = 2^R - 1 the constraint reads psi(x) <= 1 for noise sigma2/S and
  // interference terms I_k/S.
  std::vector<double> terms;
  for (std::size_t k = 0; k < instance.K(); ++k) {
    if (k != i) terms.push_back(quad_form(beams.w[k], instance.cov(k, i)) / S);
  }
  const double x = solve_zeta(instance.sigma2[i] / S, instance.rho[i], terms).zeta;
  return std::log2(1.0 + x);
}

CMatrix covariance_factor(const CMatrix& Q) {
  const CMatrix H = (Q + Q.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(H);
  if (solver.info() != Eigen::Success) throw InputError("covariance eigendecomposition failed");
  Eigen::VectorXd lambda = solver.eigenvalues();
  if (lambda.size() > 0 && lambda.minCoeff() < -kPsdTolerance) {
    throw InputError("covariance not PSD (min eigenvalue " + std::to_string(lambda.minCoeff()) + ")");
  }
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * lambda.asDiagonal();
}

McEstimate mc_outage(const MisoInstance& instance, const BeamformerSet& beams, double R_i, std::size_t i,
                     const McOptions& options) {
  check_dims(instance, beams, i);
  if (options.samples == 0) throw std::invalid_argument("mc_outage needs at least one sample");
  McEstimate result;
  result.samples = options.samples;
  if (R_i == 0.0) return result;

  const std::size_t Nt = instance.Nt;
  std::vector<Link> links;
  links.push_back({i, covariance_factor(instance.cov(i, i)).adjoint() * beams.w[i]});
  for (std::size_t k = 0; k < instance.K(); ++k) {
    if (k == i) continue;
    const CMatrix& Q = instance.cov(k, i);
    if (Q.norm() == 0.0 || beams.w[k].norm() == 0.0) continue;
    links.push_back({k, covariance_factor(Q).adjoint() * beams.w[k]});
  }

  const std::size_t L = links.size();
  std::vector<double> u_re(L * Nt), u_im(L * Nt);
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t d = 0; d < Nt; ++d) {
      u_re[l * Nt + d] = links[l].projection(static_cast<Eigen::Index>(d)).real();
      u_im[l * Nt + d] = links[l].projection(static_cast<Eigen::Index>(d)).imag();
    }
  }

  const Philox4x32 gen(options.seed);
  const std::size_t block = std::max<std::size_t>(options.block, 1);
  const std::uint64_t n_blocks = (options.samples + block - 1) / block;
  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_blocks));

  const double threshold = std::exp2(R_i) - 1.0;
  const double noise = instance.sigma2[i];
  std::vector<std::uint64_t> counts(threads, 0);

  auto worker = [&](unsigned id) {
    std::vector<double> z_re(L * Nt * block), z_im(L * Nt * block);
    for (std::uint64_t blk = id; blk < n_blocks; blk += threads) {
      const std::uint64_t first = blk * block;
      const std::size_t n = static_cast<std::size_t>(std::min<std::uint64_t>(block, options.samples - first));
      for (std::size_t l = 0; l < L; ++l) {
        for (std::size_t d = 0; d < Nt; ++d) {
          const auto stream = static_cast<std::uint32_t>(links[l].tx * Nt + d);
          double* re = z_re.data() + (l * Nt + d) * block;
          double* im = z_im.data() + (l * Nt + d) * block;
          for (std::size_t b = 0; b < n; ++b) {
            const Complex z = complex_normal(gen, first + b, stream);
            re[b] = z.real();
            im[b] = z.imag();
          }
        }
      }
      simd::OutageBlock view{n, block, L, Nt, z_re.data(), z_im.data(), u_re.data(), u_im.data(), threshold, noise};
      counts[id] += simd::count_outages(view, options.isa);
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
  }

  for (auto c : counts) result.outages += c;
  const double n = static_cast<double>(options.samples);
  result.estimate = static_cast<double>(result.outages) / n;
  result.std_error = std::sqrt(result.estimate * (1.0 - result.estimate) / n);
  return result;
}

}  // namespace cobf
