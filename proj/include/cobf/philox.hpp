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

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A draw is a
// pure function of (key, counter), so the value used for Monte-Carlo sample t
// never depends on how samples are split across threads or blocks.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace cobf {

class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit constexpr Philox4x32(std::uint64_t seed) noexcept
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  constexpr Block operator()(Block counter) const noexcept {
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      counter = single_round(counter, key);
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return counter;
  }

  /// Bijective in (index, stream): four words of output per call.
  constexpr Block at(std::uint64_t index, std::uint32_t stream) const noexcept {
    return (*this)(Block{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), stream, 0u});
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  static constexpr Block single_round(const Block& c, const std::array<std::uint32_t, 2>& k) noexcept {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * c[2];
    return {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
  }

  std::array<std::uint32_t, 2> key_;
};

/// Uniform double in the open interval (0, 1) from 64 random bits.
inline double open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard circularly-symmetric complex Gaussian, E|z|^2 = 1, for the pair
/// (index, stream). Box-Muller: |z|^2 = -ln u1 is Exp(1), phase 2 pi u2.
inline std::complex<double> complex_normal(const Philox4x32& gen, std::uint64_t index, std::uint32_t stream) noexcept {
  const auto b = gen.at(index, stream);
  const double u1 = open_unit((static_cast<std::uint64_t>(b[0]) << 32) | b[1]);
  const double u2 = open_unit((static_cast<std::uint64_t>(b[2]) << 32) | b[3]);
  const double r = std::sqrt(-std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace cobf
