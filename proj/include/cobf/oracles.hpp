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

// Brute-force baselines. Every enumeration has a hard size guard and breaks
// ties lexicographically so witnesses are reproducible.
//
// Subset order: a subset of V is the bitmask with vertex 1 as the least
// significant bit; "smallest" means the smallest mask.
// Assignment order: (x_1, ..., x_N) read as a binary number with x_1 most
// significant.

#include "cobf/model.hpp"
#include "cobf/reductions.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace cobf {

inline constexpr std::size_t kMaxCutGuard = 24;
inline constexpr std::size_t kSatGuard = 24;
inline constexpr std::size_t kDiscreteSrmGuard = 20;
inline constexpr std::uint64_t kGridGuard = 100'000'000;

struct MaxCutResult {
  VertexSet S;
  double weight = 0.0;
};

MaxCutResult exhaustive_maxcut(const WeightedGraph& graph);

struct SatResult {
  bool satisfiable = false;
  Assignment witness;  ///< empty when unsatisfiable
};

SatResult exhaustive_3sat(const CnfFormula& formula);
bool satisfies(const CnfFormula& formula, const Assignment& x);

struct DiscreteSrmResult {
  VertexSet S;
  std::vector<double> p;
  double objective = 0.0;
};

/// Best weighted sum rate over the 2^V certificate power patterns.
DiscreteSrmResult discrete_srm_search(const MaxCutGadget& gadget);

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  std::uint64_t points() const;
  double at(std::uint64_t index) const;
};

struct GridSpec {
  std::vector<GridAxis> axes;

  std::uint64_t points() const;
};

/// Validates step > 0, lo <= hi and the size guard. Throws InputError or
/// SizeGuardError.
void check_grid(const GridSpec& grid);

struct GridResult {
  std::vector<double> point;
  double value = 0.0;
  std::uint64_t index = 0;  ///< row-major lattice index, last axis fastest
  std::uint64_t evaluated = 0;
};

using GridObjective = std::function<double(std::span<const double>)>;

/// Exact maximum over the lattice; NaN values count as -inf. Ties go to the
/// smallest lattice index. With threads > 1 the lattice is split into
/// contiguous ranges and merged by (value, index).
GridResult grid_search(const GridObjective& objective, const GridSpec& grid, unsigned threads = 1);

struct SignTransition {
  std::uint64_t index = 0;  ///< grid index where the new sign is first seen
  double x = 0.0;
  int from = 0;
  int to = 0;
};

struct SignPattern {
  std::vector<SignTransition> transitions;
  int neg_to_pos = 0;
  int pos_to_neg = 0;
  std::uint64_t zeros = 0;  ///< grid points where f is exactly zero (skipped)

  /// At most one - to + change and no + to - change.
  bool single_rise() const { return neg_to_pos <= 1 && pos_to_neg == 0; }
};

SignPattern sign_pattern(const std::function<double(double)>& f, const GridAxis& axis);

}  // namespace cobf
