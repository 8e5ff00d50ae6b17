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

// Built with -mavx2 only (no -mfma): mul/add pairs must stay unfused to match
// the scalar kernel bit for bit.

#include "cobf/simd.hpp"

#include <immintrin.h>

#include <bit>

namespace cobf::simd {

std::size_t count_outages_avx2(const OutageBlock& blk) {
  std::size_t count = 0;
  const __m256d threshold = _mm256_set1_pd(blk.threshold);
  const __m256d noise = _mm256_set1_pd(blk.noise);

  std::size_t b = 0;
  for (; b + 4 <= blk.samples; b += 4) {
    __m256d signal = _mm256_setzero_pd();
    __m256d interference = _mm256_setzero_pd();
    for (std::size_t l = 0; l < blk.links; ++l) {
      __m256d gr = _mm256_setzero_pd();
      __m256d gi = _mm256_setzero_pd();
      for (std::size_t d = 0; d < blk.dims; ++d) {
        const std::size_t row = l * blk.dims + d;
        const __m256d zr = _mm256_loadu_pd(blk.z_re + row * blk.stride + b);
        const __m256d zi = _mm256_loadu_pd(blk.z_im + row * blk.stride + b);
        const __m256d ur = _mm256_set1_pd(blk.u_re[row]);
        const __m256d ui = _mm256_set1_pd(blk.u_im[row]);
        const __m256d tr = _mm256_add_pd(_mm256_mul_pd(zr, ur), _mm256_mul_pd(zi, ui));
        const __m256d ti = _mm256_sub_pd(_mm256_mul_pd(zr, ui), _mm256_mul_pd(zi, ur));
        gr = _mm256_add_pd(gr, tr);
        gi = _mm256_add_pd(gi, ti);
      }
      const __m256d power = _mm256_add_pd(_mm256_mul_pd(gr, gr), _mm256_mul_pd(gi, gi));
      if (l == 0) signal = power;
      else interference = _mm256_add_pd(interference, power);
    }
    const __m256d bound = _mm256_mul_pd(threshold, _mm256_add_pd(interference, noise));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(signal, bound, _CMP_LT_OQ));
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
  }

  if (b < blk.samples) {
    OutageBlock tail = blk;
    tail.samples = blk.samples - b;
    tail.z_re = blk.z_re + b;
    tail.z_im = blk.z_im + b;
    count += count_outages_scalar(tail);
  }
  return count;
}

}  // namespace cobf::simd
