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

#include "cobf/simd.hpp"

#include <cstdlib>
#include <cstring>

namespace cobf::simd {

std::size_t count_outages_scalar(const OutageBlock& blk) {
  std::size_t count = 0;
  for (std::size_t b = 0; b < blk.samples; ++b) {
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t l = 0; l < blk.links; ++l) {
      double gr = 0.0;
      double gi = 0.0;
      for (std::size_t d = 0; d < blk.dims; ++d) {
        const std::size_t row = l * blk.dims + d;
        const double zr = blk.z_re[row * blk.stride + b];
        const double zi = blk.z_im[row * blk.stride + b];
        const double ur = blk.u_re[row];
        const double ui = blk.u_im[row];
        // conj(z) * u
        const double tr = zr * ur + zi * ui;
        const double ti = zr * ui - zi * ur;
        gr = gr + tr;
        gi = gi + ti;
      }
      const double power = gr * gr + gi * gi;
      if (l == 0) signal = power;
      else interference = interference + power;
    }
    if (signal < blk.threshold * (interference + blk.noise)) ++count;
  }
  return count;
}

Isa detect_isa() {
  if (const char* force = std::getenv("COBF_FORCE_SCALAR"); force != nullptr && std::strcmp(force, "1") == 0) {
    return Isa::Scalar;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(COBF_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "scalar";
}

std::size_t count_outages(const OutageBlock& block, Isa isa) {
#if defined(COBF_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) return count_outages_avx2(block);
#endif
  (void)isa;
  return count_outages_scalar(block);
}

std::size_t count_outages(const OutageBlock& block) {
  static const Isa best = detect_isa();
  return count_outages(block, best);
}

}  // namespace cobf::simd
