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

#include "cobf/model.hpp"

#include <algorithm>
#include <cmath>

namespace cobf {

MisoInstance to_miso(const SisoInstance& siso) {
  MisoInstance m;
  const std::size_t K = siso.K();
  m.Nt = 1;
  m.Qcov.reserve(K * K);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < K; ++i) {
      m.Qcov.push_back(CMatrix::Constant(1, 1, Complex(siso.Q(k, i), 0.0)));
    }
  }
  m.sigma2 = siso.sigma2;
  m.rho = siso.rho;
  m.P = siso.P;
  m.alpha = siso.alpha;
  return m;
}

BeamformerSet beams_from_powers(const std::vector<double>& p) {
  BeamformerSet b;
  b.w.reserve(p.size());
  for (double pi : p) b.w.push_back(CVector::Constant(1, Complex(std::sqrt(std::max(pi, 0.0)), 0.0)));
  return b;
}

}  // namespace cobf
