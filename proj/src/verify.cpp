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

#include "cobf/verify.hpp"

#include "cobf/oracles.hpp"
#include "cobf/outage.hpp"
#include "cobf/random.hpp"
#include "cobf/zeta.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cobf {
namespace {

Json report(const char* mode, std::size_t cases, const std::vector<std::string>& failures) {
  Json j;
  j["mode"] = mode;
  j["cases"] = cases;
  j["failures"] = failures;
  j["pass"] = failures.empty();
  return j;
}

std::size_t or_default(std::size_t value, std::size_t fallback) { return value == 0 ? fallback : value; }
double or_default(double value, double fallback) { return value > 0.0 ? value : fallback; }

// Weighted sum rate with the interferer lists of each user resolved once.
class SumRate {
 public:
  explicit SumRate(const SisoInstance& inst) : inst_(inst), links_(inst.K()) {
    for (std::size_t i = 0; i < inst.K(); ++i) {
      for (std::size_t k = 0; k < inst.K(); ++k) {
        const double q = inst.Q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
        if (k != i && q != 0.0) links_[i].push_back({k, q});
      }
    }
  }

  double operator()(std::span<const double> p) const {
    double total = 0.0;
    std::array<double, 16> terms{};
    for (std::size_t i = 0; i < inst_.K(); ++i) {
      if (p[i] <= 0.0) continue;
      std::size_t n = 0;
      std::vector<double> spill;
      for (const auto& [k, q] : links_[i]) {
        if (n < terms.size()) terms[n++] = q * p[k];
        else spill.push_back(q * p[k]);
      }
      double zeta;
      if (spill.empty()) {
        zeta = solve_zeta(inst_.sigma2[i], inst_.rho[i], std::span<const double>(terms.data(), n)).zeta;
      } else {
        spill.insert(spill.begin(), terms.begin(), terms.end());
        zeta = solve_zeta(inst_.sigma2[i], inst_.rho[i], spill).zeta;
      }
      total += inst_.alpha[i] * std::log2(1.0 + zeta * inst_.Q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) * p[i]);
    }
    return total;
  }

 private:
  struct Link {
    std::size_t k;
    double q;
  };
  const SisoInstance& inst_;
  std::vector<std::vector<Link>> links_;
};

}  // namespace

double mmf_objective(const SisoInstance& instance, std::span<const double> p) {
  const auto rates = srm_rates_from_powers(instance, p);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rates.size(); ++i) worst = std::min(worst, rates[i] / instance.alpha[i]);
  return worst;
}

Json verify_lemma2(const VerifyOptions& options) {
  const double step = or_default(options.step, 0.05);
  const WeightedGraph edge{2, {{0, 1, 1.0}}};
  const MaxCutGadget g = reduce_maxcut(edge);
  const std::size_t K = g.instance.K();
  std::vector<std::string> failures;

  GridSpec grid;
  for (std::size_t u = 0; u < K; ++u) grid.axes.push_back({0.0, g.instance.P[u], step});
  const SumRate objective(g.instance);
  const GridResult best = grid_search([&](std::span<const double> p) { return objective(p); }, grid, options.threads);

  // The grid maximum must sit on a certificate pattern.
  bool on_pattern = true;
  for (std::size_t i = 0; i < g.graph.V; ++i) {
    const double p0 = best.point[g.vertex_user(i, 0)];
    const double p1 = best.point[g.vertex_user(i, 1)];
    const bool ok = (std::abs(p0) < 1e-12 && std::abs(p1 - 1.0) < 1e-12) ||
                    (std::abs(p0 - 1.0) < 1e-12 && std::abs(p1) < 1e-12);
    on_pattern = on_pattern && ok;
  }
  for (std::size_t u = 2 * g.graph.V; u < K; ++u) {
    on_pattern = on_pattern && std::abs(best.point[u] - kEdgeUserPower) < 1e-12;
  }
  if (!on_pattern) failures.push_back("grid maximum is not a certificate pattern");

  // Every vertex pattern in {0,1}^2 per vertex with edge users at 0.7.
  const double a0 = std::log2(1.0 + g.zeta_v0);
  const double a1 = std::log2(1.0 + g.zeta_v1);
  const double V = static_cast<double>(g.graph.V);
  double best_certificate = -std::numeric_limits<double>::infinity();
  double best_other = -std::numeric_limits<double>::infinity();
  Json patterns = Json::array();
  const std::size_t combos = std::size_t{1} << (2 * g.graph.V);
  for (std::size_t mask = 0; mask < combos; ++mask) {
    std::vector<double> p(K, kEdgeUserPower);
    std::size_t i0 = 0;
    std::size_t i1 = 0;
    for (std::size_t i = 0; i < g.graph.V; ++i) {
      const double p0 = static_cast<double>((mask >> (2 * i)) & 1U);
      const double p1 = static_cast<double>((mask >> (2 * i + 1)) & 1U);
      p[g.vertex_user(i, 0)] = p0;
      p[g.vertex_user(i, 1)] = p1;
      if (p0 == 0.0 && p1 == 0.0) ++i0;
      if (p0 == 1.0 && p1 == 1.0) ++i1;
    }
    const double value = weighted_sum_rate(g.instance, p);
    const double lower = V * a0 - (static_cast<double>(i0) * a0 + static_cast<double>(i1) * (a0 - 2.0 * a1));
    const double upper = lower + g.c00;
    if (i0 + i1 == 0) {
      best_certificate = std::max(best_certificate, value);
    } else {
      best_other = std::max(best_other, value);
      if (value < lower - 1e-12 || value > upper + 1e-12) {
        failures.push_back(fmt::format("pattern {} value {} outside [{}, {}]", mask, value, lower, upper));
      }
      if (!(upper < V * a0)) failures.push_back(fmt::format("pattern {} upper bound not below |V| a0", mask));
    }
    patterns.push_back({{"p", p}, {"value", value}, {"zero_pairs", i0}, {"one_pairs", i1}});
  }
  if (!(best_other < best_certificate)) failures.push_back("a [0,0] or [1,1] pattern is not strictly worse");
  if (std::abs(best.value - best_certificate) > 1e-12) failures.push_back("grid maximum differs from best certificate");

  Json j = report("lemma2", 1, failures);
  j["step"] = step;
  j["grid_points"] = best.evaluated;
  j["grid_max"] = best.value;
  j["grid_argmax"] = best.point;
  j["best_certificate"] = best_certificate;
  j["best_non_certificate"] = best_other;
  j["patterns"] = patterns;
  return j;
}

Json verify_lemma3(const VerifyOptions& options) {
  const std::size_t cases = or_default(options.cases, std::size_t{100});
  const double step = or_default(options.step, 1e-3);
  Rng rng(options.seed);
  std::vector<std::string> failures;
  double worst_rel = 0.0;
  std::size_t rises = 0;
  const std::array<double, 7> probes{0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95};
  const double h = 1e-3;
  for (std::size_t c = 0; c < cases; ++c) {
    const VertexContext ctx = random_vertex_context(rng);
    auto F = [&](double p) { return single_user_objective_F(p, ctx); };
    for (double p : probes) {
      auto central = [&](double hh) { return (F(p + hh) - F(p - hh)) / (2.0 * hh); };
      const double fd = (4.0 * central(h / 2.0) - central(h)) / 3.0;
      const double f = single_user_objective_f(p, ctx);
      double scale = 0.0;
      for (double t : single_user_objective_f_terms(p, ctx)) scale += std::abs(t);
      scale /= std::numbers::ln2;
      const double rel = std::abs(f - fd) / std::max(scale, 1e-300);
      worst_rel = std::max(worst_rel, rel);
      if (!(rel <= 1e-5)) failures.push_back(fmt::format("case {} p={} f={} fd={} rel={}", c, p, f, fd, rel));
    }
    const SignPattern sp = sign_pattern([&](double p) { return single_user_objective_f(p, ctx); }, {0.0, 1.0, step});
    rises += static_cast<std::size_t>(sp.neg_to_pos);
    if (!sp.single_rise()) {
      failures.push_back(fmt::format("case {}: {} rises, {} falls", c, sp.neg_to_pos, sp.pos_to_neg));
    }
  }
  Json j = report("lemma3", cases, failures);
  j["max_relative_error"] = worst_rel;
  j["grid_step"] = step;
  j["contexts_with_rise"] = rises;
  j["seed"] = options.seed;
  return j;
}

Json verify_lemma5(const VerifyOptions& options) {
  const double step = or_default(options.step, 1e-3);
  const GridAxis axis{0.0, 2.0, step};
  const std::uint64_t n = axis.points();
  std::vector<std::string> failures;
  std::size_t violations = 0;
  auto check = [&](const std::string& name, auto fn) {
    double prev_z = 0.0;
    double prev_pz = 0.0;
    for (std::uint64_t k = 0; k < n; ++k) {
      const double p = axis.at(k);
      const double z = fn(p);
      if (k > 0) {
        if (!(z < prev_z)) ++violations, failures.push_back(fmt::format("{} not decreasing at p={}", name, p));
        if (!(p * z > prev_pz)) ++violations, failures.push_back(fmt::format("p*{} not increasing at p={}", name, p));
      }
      prev_z = z;
      prev_pz = p * z;
    }
  };
  check("zeta_v", [](double p) { return zeta_v(p); });
  const std::array<double, 5> fixed{0.0, 0.5, 1.0, 1.5, 2.0};
  for (double pb : fixed) {
    check(fmt::format("zeta_e(., {})", pb), [pb](double p) { return zeta_e(p, pb); });
    check(fmt::format("zeta_e({}, .)", pb), [pb](double p) { return zeta_e(pb, p); });
  }
  Json j = report("lemma5", 1 + 2 * fixed.size(), failures);
  j["violations"] = violations;
  j["grid_points"] = n;
  return j;
}

Json verify_maxcut_equiv(const MaxCutGadget& gadget) {
  std::vector<std::string> failures;
  for (const auto& issue : audit_gadget(gadget)) failures.push_back("gadget audit: " + issue);
  const MaxCutResult exact = exhaustive_maxcut(gadget.graph);
  const DiscreteSrmResult srm = discrete_srm_search(gadget);
  const VertexSet recovered = cut_from_powers(srm.p, gadget);
  const double recovered_weight = cut_weight(gadget.graph, recovered);
  if (std::abs(recovered_weight - exact.weight) > 1e-12 * std::max(1.0, exact.weight)) {
    failures.push_back(fmt::format("recovered cut weight {} differs from max cut {}", recovered_weight, exact.weight));
  }
  double worst_identity = 0.0;
  const std::uint64_t total = std::uint64_t{1} << gadget.graph.V;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    VertexSet S(gadget.graph.V);
    for (std::size_t i = 0; i < gadget.graph.V; ++i) S[i] = ((mask >> i) & 1U) != 0;
    const double direct = weighted_sum_rate(gadget.instance, powers_from_cut(S, gadget));
    const double predicted = srm_value_identity(gadget.graph, S, gadget);
    worst_identity = std::max(worst_identity, std::abs(direct - predicted));
  }
  if (!(worst_identity <= 1e-9)) failures.push_back(fmt::format("identity residual {}", worst_identity));
  if (!(gadget.gap() > 0.0)) failures.push_back("c00 + c11 - c01 - c10 not positive");

  Json j = report("maxcut-equiv", 1, failures);
  j["max_cut_weight"] = exact.weight;
  j["recovered_cut_weight"] = recovered_weight;
  j["srm_objective"] = srm.objective;
  j["max_identity_residual"] = worst_identity;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < recovered.size(); ++i) {
    if (recovered[i]) members.push_back(i + 1);
  }
  j["recovered_cut"] = members;
  return j;
}

Json verify_maxcut_random(const VerifyOptions& options) {
  const std::size_t cases = or_default(options.cases, std::size_t{25});
  Rng rng(options.seed);
  std::vector<std::string> failures;
  double worst_identity = 0.0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t V = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const MaxCutGadget g = reduce_maxcut(random_connected_graph(rng, V));
    const Json r = verify_maxcut_equiv(g);
    worst_identity = std::max(worst_identity, r["max_identity_residual"].get<double>());
    for (const auto& f : r["failures"]) failures.push_back(fmt::format("graph {}: {}", c, f.get<std::string>()));
  }
  Json j = report("maxcut-equiv", cases, failures);
  j["max_identity_residual"] = worst_identity;
  j["seed"] = options.seed;
  return j;
}

Json verify_sat_equiv(const SatGadget& gadget) {
  std::vector<std::string> failures;
  for (const auto& issue : audit_gadget(gadget)) failures.push_back("gadget audit: " + issue);
  const SatResult exact = exhaustive_3sat(gadget.formula);
  const std::size_t N = gadget.formula.N;
  bool certificate = false;
  std::size_t feasible_count = 0;
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << N); ++t) {
    Assignment x(N);
    for (std::size_t n = 0; n < N; ++n) x[n] = ((t >> (N - 1 - n)) & 1U) != 0;
    const BeamformerSet W = beamformers_from_assignment(x, gadget);
    const CertificateReport rep = check_feasibility_certificate(gadget, W);
    if (rep.feasible != satisfies(gadget.formula, x)) {
      failures.push_back(fmt::format("assignment {}: certificate verdict disagrees with the formula", t));
    }
    if (rep.feasible) {
      ++feasible_count;
      certificate = true;
      if (!satisfies(gadget.formula, assignment_from_beamformers(W, gadget))) {
        failures.push_back("feasible certificate maps to a falsifying assignment");
      }
    }
  }
  if (certificate != exact.satisfiable) failures.push_back("satisfiability differs from certificate existence");
  Json j = report("sat-equiv", 1, failures);
  j["satisfiable"] = exact.satisfiable;
  j["feasible_certificate"] = certificate;
  j["feasible_certificates"] = feasible_count;
  j["K"] = gadget.instance.K();
  return j;
}

Json verify_sat_random(const VerifyOptions& options) {
  const std::size_t cases = or_default(options.cases, std::size_t{50});
  Rng rng(options.seed);
  std::vector<std::string> failures;
  std::size_t satisfiable = 0;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t N = std::uniform_int_distribution<std::size_t>(3, 8)(rng);
    CnfFormula f;
    if (c % 5 == 4) {
      f = planted_unsat_3cnf(rng, N, std::uniform_int_distribution<std::size_t>(8, 10)(rng));
    } else {
      f = random_3cnf(rng, N, std::uniform_int_distribution<std::size_t>(1, 10)(rng));
    }
    const Json r = verify_sat_equiv(reduce_3sat(f));
    if (r["satisfiable"].get<bool>()) ++satisfiable;
    for (const auto& msg : r["failures"]) failures.push_back(fmt::format("formula {}: {}", c, msg.get<std::string>()));
  }
  Json j = report("sat-equiv", cases, failures);
  j["satisfiable"] = satisfiable;
  j["unsatisfiable"] = cases - satisfiable;
  j["seed"] = options.seed;
  return j;
}

Json verify_algorithm1(const VerifyOptions& options) {
  const std::size_t cases = or_default(options.cases, std::size_t{20});
  const double delta = options.delta;
  Rng rng(options.seed);
  std::vector<std::string> failures;
  Json rows = Json::array();
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t K = 1 + c % 3;
    const SisoInstance inst = random_siso(rng, K);
    const MmfSolution sol = mmf_bisection(inst, delta);

    const std::size_t per_axis = K == 1 ? 100'000 : (K == 2 ? 1000 : 100);
    GridSpec grid;
    double h = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      const double step = inst.P[i] / static_cast<double>(per_axis - 1);
      grid.axes.push_back({0.0, inst.P[i], step});
      h = std::max(h, step);
    }
    auto objective = [&](std::span<const double> p) { return mmf_objective(inst, p); };
    const GridResult best = grid_search(objective, grid, options.threads);

    // Local Lipschitz estimate of the max-min objective around the witness.
    double lipschitz = 0.0;
    const double at = objective(sol.p);
    for (std::size_t i = 0; i < K; ++i) {
      for (double dir : {-1.0, 1.0}) {
        std::vector<double> q = sol.p;
        q[i] = std::clamp(q[i] + dir * h, 0.0, inst.P[i]);
        if (q[i] == sol.p[i]) continue;
        lipschitz += std::abs(objective(q) - at) / std::abs(q[i] - sol.p[i]) / 2.0;
      }
    }
    const double tolerance = delta + lipschitz * h;
    const double gap = std::abs(sol.R - best.value);
    if (!(gap <= tolerance)) {
      failures.push_back(fmt::format("instance {}: bisection {} vs grid {} (tolerance {})", c, sol.R, best.value, tolerance));
    }

    // Feasible mids all lie below infeasible mids.
    double max_feasible = 0.0;
    double min_infeasible = std::numeric_limits<double>::infinity();
    for (const auto& s : sol.trace) {
      if (s.feasible) max_feasible = std::max(max_feasible, s.mid);
      else min_infeasible = std::min(min_infeasible, s.mid);
    }
    if (!(max_feasible < min_infeasible)) failures.push_back(fmt::format("instance {}: non-monotone trace", c));
    if (!sol.trace.empty() && !(sol.trace.back().hi - sol.trace.back().lo < 2.0 * delta)) {
      failures.push_back(fmt::format("instance {}: final interval too wide", c));
    }
    for (std::size_t i = 0; i < K; ++i) {
      if (sol.p[i] > inst.P[i] + 1e-12) failures.push_back(fmt::format("instance {}: witness over budget", c));
      if (sol.R > 0.0 && outage_lhs_siso(inst, sol.p, inst.alpha[i] * sol.R, i) > 1.0 + 1e-9) {
        failures.push_back(fmt::format("instance {}: witness violates user {}", c, i));
      }
    }
    rows.push_back({{"K", K}, {"bisection", sol.R}, {"grid", best.value}, {"tolerance", tolerance},
                    {"iterations", sol.iterations}});
  }
  Json j = report("algorithm1", cases, failures);
  j["delta"] = delta;
  j["instances"] = rows;
  j["seed"] = options.seed;
  return j;
}

}  // namespace cobf
