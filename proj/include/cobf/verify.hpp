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

// Desk-scale verification suites. Each returns a JSON report with at least
// {"mode", "pass", "cases", "failures"}; "failures" lists human-readable
// reasons and is empty on a pass.

#include "cobf/io.hpp"
#include "cobf/reductions.hpp"
#include "cobf/siso.hpp"

#include <cstdint>

namespace cobf {

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t cases = 0;  ///< 0: suite default
  double step = 0.0;      ///< 0: suite default grid step
  double delta = 1e-5;    ///< bisection accuracy for algorithm1
  unsigned threads = 1;
};

/// Continuous grid over all powers of the single-edge gadget (default step
/// 0.05) must peak at a discrete certificate pattern; patterns with a vertex
/// at [0,0] or [1,1] must score strictly lower.
Json verify_lemma2(const VerifyOptions& options = {});

/// Closed-form f against Richardson-extrapolated central differences of F
/// (relative 1e-5) and the single-rise sign pattern on a 1e-3 grid, over
/// random gadget vertex contexts (default 100).
Json verify_lemma3(const VerifyOptions& options = {});

/// Strict monotonicity of zeta_v, p zeta_v, zeta_e and p zeta_e on sorted
/// grids over [0, 2] (default step 1e-3).
Json verify_lemma5(const VerifyOptions& options = {});

/// Discrete SRM optimum recovers a maximum cut; closed-form identity at every
/// pattern to 1e-9.
Json verify_maxcut_equiv(const MaxCutGadget& gadget);
/// The same on random connected graphs with 2..6 vertices (default 25).
Json verify_maxcut_random(const VerifyOptions& options = {});

/// Satisfiability equals existence of a feasible canonical certificate.
Json verify_sat_equiv(const SatGadget& gadget);
/// The same on random 3-CNF with N <= 8, M <= 10, every fifth planted
/// unsatisfiable (default 50).
Json verify_sat_random(const VerifyOptions& options = {});

/// Bisection against grid-search MMF on random K <= 3 instances (default 20)
/// and monotone feasibility across each bisection trace.
Json verify_algorithm1(const VerifyOptions& options = {});

/// max-min rate min_i R_i / alpha_i at powers p.
double mmf_objective(const SisoInstance& instance, std::span<const double> p);

}  // namespace cobf
