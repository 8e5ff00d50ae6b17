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

// Data-parallel inner loop of the Monte-Carlo outage estimator.
//
// A block holds `samples` draws of D-dimensional standard complex Gaussian
// vectors for each of L links, stored structure-of-arrays:
//
//   z_re[(l * D + d) * stride + b], z_im[...]   (b < samples <= stride)
//
// For link l with projection u_l = L_l^H w_l the received amplitude is
// g_l = z_l^H u_l, so |g_l|^2 is distributed as |h^H w|^2 with h ~ CN(0, Q).
// Link 0 is the desired signal. Sample b is an outage when
//
//   |g_0|^2 < threshold * (sum_{l>0} |g_l|^2 + noise).
//
// Every variant performs the same operations in the same order without fused
// multiply-add, so counts are bit-identical across variants.

#include <cstddef>
#include <string_view>

namespace cobf::simd {

struct OutageBlock {
  std::size_t samples = 0;
  std::size_t stride = 0;
  std::size_t links = 0;
  std::size_t dims = 0;
  const double* z_re = nullptr;
  const double* z_im = nullptr;
  const double* u_re = nullptr;  ///< [links * dims]
  const double* u_im = nullptr;
  double threshold = 0.0;  ///< 2^R - 1
  double noise = 0.0;
};

enum class Isa { Scalar, Avx2 };

std::size_t count_outages_scalar(const OutageBlock& block);
#if defined(COBF_HAVE_AVX2_KERNELS)
std::size_t count_outages_avx2(const OutageBlock& block);
#endif

/// Best variant the running CPU supports (honours COBF_FORCE_SCALAR=1).
Isa detect_isa();
bool isa_available(Isa isa);
std::string_view isa_name(Isa isa);

/// Dispatches to the requested variant; falls back to scalar when unavailable.
std::size_t count_outages(const OutageBlock& block, Isa isa);
std::size_t count_outages(const OutageBlock& block);

}  // namespace cobf::simd
