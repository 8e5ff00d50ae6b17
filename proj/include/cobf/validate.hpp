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

#include "cobf/model.hpp"

#include <string>
#include <vector>

namespace cobf {

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

struct Violation {
  std::string field;    ///< e.g. "rho[0]", "Qcov[1][1]"
  std::string message;  ///< e.g. "rho out of open interval"
  double magnitude = 0.0;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  /// Largest magnitude among violations whose message matches, or 0.
  double magnitude_of(const std::string& message) const;
};

ValidationReport validate(const SisoInstance& instance);
ValidationReport validate(const MisoInstance& instance);
ValidationReport validate(const WeightedGraph& graph);
ValidationReport validate(const CnfFormula& formula);

/// max_ab |Q_ab - conj(Q_ba)|
double hermitian_drift(const CMatrix& Q);

/// Smallest eigenvalue of (Q + Q^H) / 2.
double min_eigenvalue(const CMatrix& Q);

bool is_connected(const WeightedGraph& graph);

/// Throws InputError listing every violation when the report is not ok.
void require_valid(const ValidationReport& report, const std::string& what);

}  // namespace cobf
