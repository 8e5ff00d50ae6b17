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

#include "cobf/oracles.hpp"

#include "cobf/errors.hpp"
#include "cobf/siso.hpp"
#include "cobf/validate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace cobf {
namespace {

VertexSet subset_of(std::uint64_t mask, std::size_t V) {
  VertexSet S(V, false);
  for (std::size_t i = 0; i < V; ++i) S[i] = ((mask >> i) & 1U) != 0;
  return S;
}

Assignment assignment_of(std::uint64_t t, std::size_t N) {
  Assignment x(N, false);
  for (std::size_t n = 0; n < N; ++n) x[n] = ((t >> (N - 1 - n)) & 1U) != 0;
  return x;
}

void guard(std::size_t n, std::size_t limit, const char* what) {
  if (n > limit) throw SizeGuardError(fmt::format("{} enumeration guard exceeded: {} > {}", what, n, limit));
}

}  // namespace

MaxCutResult exhaustive_maxcut(const WeightedGraph& graph) {
  guard(graph.V, kMaxCutGuard, "max-cut");
  require_valid(validate(graph), "graph");
  MaxCutResult best;
  best.weight = -1.0;
  const std::uint64_t total = std::uint64_t{1} << graph.V;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double w = 0.0;
    for (const auto& e : graph.edges) {
      if (((mask >> e.i) & 1U) != ((mask >> e.j) & 1U)) w += e.w;
    }
    if (w > best.weight) {
      best.weight = w;
      best.S = subset_of(mask, graph.V);
    }
  }
  return best;
}

bool satisfies(const CnfFormula& formula, const Assignment& x) {
  for (const auto& clause : formula.clauses) {
    bool sat = false;
    for (const auto& lit : clause) {
      if (x[lit.variable() - 1] == lit.positive()) sat = true;
    }
    if (!sat) return false;
  }
  return true;
}

SatResult exhaustive_3sat(const CnfFormula& formula) {
  guard(formula.N, kSatGuard, "3-SAT");
  require_valid(validate(formula), "formula");
  const std::uint64_t total = std::uint64_t{1} << formula.N;
  for (std::uint64_t t = 0; t < total; ++t) {
    auto x = assignment_of(t, formula.N);
    if (satisfies(formula, x)) return {true, std::move(x)};
  }
  return {};
}

DiscreteSrmResult discrete_srm_search(const MaxCutGadget& gadget) {
  guard(gadget.graph.V, kDiscreteSrmGuard, "discrete SRM");
  DiscreteSrmResult best;
  best.objective = -std::numeric_limits<double>::infinity();
  const std::uint64_t total = std::uint64_t{1} << gadget.graph.V;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    auto S = subset_of(mask, gadget.graph.V);
    auto p = powers_from_cut(S, gadget);
    const double value = weighted_sum_rate(gadget.instance, p);
    if (value > best.objective) {
      best.objective = value;
      best.S = std::move(S);
      best.p = std::move(p);
    }
  }
  return best;
}

std::uint64_t GridAxis::points() const {
  return static_cast<std::uint64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

double GridAxis::at(std::uint64_t index) const { return std::min(hi, lo + static_cast<double>(index) * step); }

std::uint64_t GridSpec::points() const {
  std::uint64_t n = 1;
  for (const auto& a : axes) {
    const std::uint64_t k = a.points();
    if (k != 0 && n > kGridGuard / k + 1) return kGridGuard + 1;
    n *= k;
  }
  return n;
}

void check_grid(const GridSpec& grid) {
  if (grid.axes.empty()) throw InputError("grid has no axes");
  for (const auto& a : grid.axes) {
    if (!(a.step > 0.0) || !std::isfinite(a.step)) throw InputError("grid step must be positive");
    if (!(a.lo <= a.hi) || !std::isfinite(a.lo) || !std::isfinite(a.hi)) throw InputError("grid bounds not ordered");
  }
  const std::uint64_t n = grid.points();
  if (n > kGridGuard) throw SizeGuardError(fmt::format("grid has more than {} points", kGridGuard));
}

GridResult grid_search(const GridObjective& objective, const GridSpec& grid, unsigned threads) {
  check_grid(grid);
  const std::uint64_t total = grid.points();
  const std::size_t D = grid.axes.size();
  threads = static_cast<unsigned>(std::clamp<std::uint64_t>(threads == 0 ? 1 : threads, 1, total));

  std::vector<GridResult> partial(threads);
  auto worker = [&](unsigned id) {
    const std::uint64_t begin = total * id / threads;
    const std::uint64_t end = total * (id + 1) / threads;
    GridResult& best = partial[id];
    best.value = -std::numeric_limits<double>::infinity();
    best.index = begin;
    std::vector<std::uint64_t> digits(D);
    std::vector<double> x(D);
    std::uint64_t rest = begin;
    for (std::size_t d = D; d-- > 0;) {
      const std::uint64_t k = grid.axes[d].points();
      digits[d] = rest % k;
      rest /= k;
    }
    bool have = false;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      for (std::size_t d = 0; d < D; ++d) x[d] = grid.axes[d].at(digits[d]);
      double v = objective(x);
      if (std::isnan(v)) v = -std::numeric_limits<double>::infinity();
      if (!have || v > best.value) {
        have = true;
        best.value = v;
        best.index = idx;
        best.point = x;
      }
      for (std::size_t d = D; d-- > 0;) {
        if (++digits[d] < grid.axes[d].points()) break;
        digits[d] = 0;
      }
    }
    best.evaluated = end - begin;
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
  }

  GridResult result = partial[0];
  std::uint64_t evaluated = 0;
  for (const auto& r : partial) {
    evaluated += r.evaluated;
    if (r.evaluated == 0) continue;
    if (r.value > result.value || (r.value == result.value && r.index < result.index)) result = r;
  }
  result.evaluated = evaluated;
  return result;
}

SignPattern sign_pattern(const std::function<double(double)>& f, const GridAxis& axis) {
  check_grid(GridSpec{{axis}});
  SignPattern pattern;
  int last = 0;
  const std::uint64_t n = axis.points();
  for (std::uint64_t k = 0; k < n; ++k) {
    const double x = axis.at(k);
    const double v = f(x);
    const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s == 0) {
      ++pattern.zeros;
      continue;
    }
    if (last != 0 && s != last) {
      pattern.transitions.push_back({k, x, last, s});
      if (s > 0) ++pattern.neg_to_pos;
      else ++pattern.pos_to_neg;
    }
    last = s;
  }
  return pattern;
}

}  // namespace cobf
