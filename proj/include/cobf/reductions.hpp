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

// Instance transformations from weighted Max-Cut to sum-rate power control
// and from 3-SAT to max-min-fair beamforming feasibility, with certificate
// maps in both directions.
//
// Max-Cut gadget user order: vertex i contributes v_{i0} = 2i and
// v_{i1} = 2i + 1; edge e = (i, j) then contributes e_ij = 2V + 2e and
// e_ji = 2V + 2e + 1.
//
// 3-SAT gadget user order: variable n (0-based) contributes v_{nl} = 5n + l
// for l = 0..4; clause m contributes c_m = 5N + m.

#include "cobf/model.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cobf {

/// in_set[i] is true when vertex i belongs to S.
using VertexSet = std::vector<bool>;
using Assignment = std::vector<bool>;

inline constexpr double kGadgetNoise = 0.1;
inline constexpr double kGadgetRho = 0.95;
inline constexpr double kEdgeUserPower = 0.7;

struct MaxCutGadget {
  SisoInstance instance;
  UserMap users;
  WeightedGraph graph;
  double total_weight = 0.0;
  double zeta_v0 = 0.0;  ///< zeta_v(0)
  double zeta_v1 = 0.0;  ///< zeta_v(1)
  double c00 = 0.0;      ///< log2(1 + 0.7 zeta_e(a, b)) for (a, b) in {0,1}^2
  double c11 = 0.0;
  double c01 = 0.0;
  double c10 = 0.0;

  std::size_t vertex_user(std::size_t i, std::size_t a) const { return 2 * i + a; }
  std::size_t edge_user(std::size_t e, std::size_t dir) const { return 2 * graph.V + 2 * e + dir; }
  /// c00 + c11 - c01 - c10, positive for the gadget parameters.
  double gap() const { return c00 + c11 - c01 - c10; }
};

/// Throws InputError for invalid or disconnected graphs.
MaxCutGadget reduce_maxcut(const WeightedGraph& graph);

std::vector<double> powers_from_cut(const VertexSet& S, const MaxCutGadget& gadget);
/// Throws CertificateError("non-certificate power vector") when p is not a
/// discrete optimum pattern within tol.
VertexSet cut_from_powers(std::span<const double> p, const MaxCutGadget& gadget, double tol = 1e-6);

double cut_weight(const WeightedGraph& graph, const VertexSet& S);

/// Weighted sum rate predicted in closed form from the cut weight.
double srm_value_identity(const WeightedGraph& graph, const VertexSet& S, const MaxCutGadget& gadget);

/// Re-derives every gadget field from the graph; returns the mismatches.
std::vector<std::string> audit_gadget(const MaxCutGadget& gadget);

struct SatGadget {
  MisoInstance instance;
  UserMap users;
  CnfFormula formula;
  std::array<CMatrix, 4> A;  ///< A_1 .. A_4
  double R_bar = 1.0;

  std::size_t variable_user(std::size_t n, std::size_t l) const { return 5 * n + l; }
  std::size_t clause_user(std::size_t m) const { return 5 * formula.N + m; }
};

inline constexpr double kSatRho = 0.9;
inline constexpr double kClauseNoise = 0.01;

/// Throws InputError for invalid formulas.
SatGadget reduce_3sat(const CnfFormula& formula);

/// Canonical beamformers: w_{n0} = [1,0] for x_n = 1, [0,1] otherwise;
/// [1,0] for every other user.
BeamformerSet beamformers_from_assignment(const Assignment& x, const SatGadget& gadget);
/// Throws CertificateError("non-certificate beamformer") unless every w_{n0}
/// is a unit-modulus multiple of [1,0] or [0,1] within tol.
Assignment assignment_from_beamformers(const BeamformerSet& W, const SatGadget& gadget, double tol = 1e-8);

enum class ConstraintKind { Self, Cross, Clause, Power };

std::string_view constraint_kind_name(ConstraintKind kind);

struct ConstraintResidual {
  std::size_t user = 0;
  ConstraintKind kind = ConstraintKind::Self;
  double value = 0.0;  ///< outage LHS, or ||w||^2 for Power
  double limit = 1.0;
  bool satisfied = false;
};

struct CertificateReport {
  std::vector<ConstraintResidual> residuals;
  bool feasible = false;
  double max_lhs = 0.0;
  double max_power = 0.0;
};

inline constexpr double kLhsSlack = 1e-9;
inline constexpr double kPowerSlack = 1e-12;

/// Evaluates every outage constraint at rate R_bar and every power cap.
CertificateReport check_feasibility_certificate(const SatGadget& gadget, const BeamformerSet& W);

std::vector<std::string> audit_gadget(const SatGadget& gadget);

}  // namespace cobf
