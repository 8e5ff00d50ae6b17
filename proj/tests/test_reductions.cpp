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
#include "cobf/errors.hpp"
#include "cobf/oracles.hpp"
#include "cobf/random.hpp"
#include "cobf/reductions.hpp"
#include "cobf/siso.hpp"
#include "cobf/zeta.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace cobf {
namespace {

WeightedGraph path3() { return {3, {{0, 1, 1.0}, {1, 2, 1.0}}}; }

CnfFormula two_clause_formula() {
  // (x1 or x2 or x3) and (x2 or not x3 or not x4)
  return {4, {{Literal{1}, Literal{2}, Literal{3}}, {Literal{2}, Literal{-3}, Literal{-4}}}};
}

VertexSet subset(std::size_t V, std::initializer_list<std::size_t> members) {
  VertexSet S(V, false);
  for (auto m : members) S[m - 1] = true;
  return S;
}

TEST(MaxCutGadget, PathGraphStructure) {
  const MaxCutGadget g = reduce_maxcut(path3());
  ASSERT_EQ(g.instance.K(), 10u);
  EXPECT_TRUE(audit_gadget(g).empty());
  const auto& Q = g.instance.Q;
  auto q = [&](std::size_t k, std::size_t i) { return Q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)); };
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
          EXPECT_EQ(q(g.vertex_user(i, a), g.vertex_user(j, b)), i == j ? 1.0 : 0.0);
        }
      }
    }
  }
  // edge (1,2): user e_12 hears v_{1,0} and v_{2,1}; e_21 hears v_{2,0} and v_{1,1}.
  const std::size_t e12 = g.edge_user(0, 0), e21 = g.edge_user(0, 1);
  EXPECT_EQ(q(e12, e12), 1.0);
  EXPECT_EQ(q(g.vertex_user(0, 0), e12), 1.0);
  EXPECT_EQ(q(g.vertex_user(1, 1), e12), 1.0);
  EXPECT_EQ(q(g.vertex_user(0, 1), e12), 0.0);
  EXPECT_EQ(q(g.vertex_user(1, 0), e12), 0.0);
  EXPECT_EQ(q(g.vertex_user(1, 0), e21), 1.0);
  EXPECT_EQ(q(g.vertex_user(0, 1), e21), 1.0);
  EXPECT_EQ(q(g.vertex_user(2, 0), e12), 0.0);
  for (std::size_t k = 0; k < 10; ++k) {
    if (k != e12) {
      EXPECT_EQ(q(e12, k), 0.0);
    }
  }
  EXPECT_EQ(g.users.users[e12].label, "e1_2");
  EXPECT_EQ(g.users.users[g.vertex_user(2, 1)].label, "v3_1");
}

TEST(MaxCutGadget, SingleEdgeWeights) {
  const MaxCutGadget g = reduce_maxcut({2, {{0, 1, 1.0}}});
  ASSERT_EQ(g.instance.K(), 6u);
  EXPECT_EQ(g.instance.alpha[g.edge_user(0, 0)], 0.5);
  EXPECT_EQ(g.instance.alpha[g.edge_user(0, 1)], 0.5);
  EXPECT_EQ(g.instance.alpha[g.vertex_user(0, 0)], 1.0);
  EXPECT_GT(g.gap(), 0.0);
}

TEST(MaxCutGadget, RejectsDisconnected) {
  EXPECT_THROW(reduce_maxcut({3, {{0, 1, 1.0}}}), InputError);
}

TEST(MaxCutGadget, VertexRatesAloneAndShared) {
  const MaxCutGadget g = reduce_maxcut({2, {{0, 1, 1.0}}});
  std::vector<double> p = powers_from_cut(VertexSet(2, false), g);
  EXPECT_NEAR(srm_rates_from_powers(g.instance, p)[g.vertex_user(0, 0)], 0.5973, 5e-4);
  p[g.vertex_user(0, 1)] = 1.0;
  EXPECT_NEAR(srm_rates_from_powers(g.instance, p)[g.vertex_user(0, 0)], 0.0671, 5e-4);
}

TEST(PowersFromCut, Patterns) {
  const MaxCutGadget g = reduce_maxcut(path3());
  const auto none = powers_from_cut(VertexSet(3, false), g);
  const auto all = powers_from_cut(VertexSet(3, true), g);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(none[g.vertex_user(i, 0)], 1.0);
    EXPECT_EQ(none[g.vertex_user(i, 1)], 0.0);
    EXPECT_EQ(all[g.vertex_user(i, 0)], 0.0);
    EXPECT_EQ(all[g.vertex_user(i, 1)], 1.0);
  }
  const auto mid = powers_from_cut(subset(3, {2}), g);
  EXPECT_EQ(mid[g.vertex_user(1, 0)], 0.0);
  EXPECT_EQ(mid[g.vertex_user(1, 1)], 1.0);
  EXPECT_EQ(mid[g.vertex_user(0, 0)], 1.0);
  EXPECT_EQ(mid[g.vertex_user(2, 0)], 1.0);
  EXPECT_EQ(mid[g.edge_user(1, 1)], kEdgeUserPower);
}

TEST(CutFromPowers, RoundTripAndErrors) {
  Rng rng(1);
  const MaxCutGadget g = reduce_maxcut(random_connected_graph(rng, 5));
  for (unsigned mask = 0; mask < 32; ++mask) {
    VertexSet S(5);
    for (std::size_t i = 0; i < 5; ++i) S[i] = (mask >> i) & 1u;
    EXPECT_EQ(cut_from_powers(powers_from_cut(S, g), g), S);
  }
  auto p = powers_from_cut(VertexSet(5, false), g);
  p[g.vertex_user(2, 1)] = 1.0;
  EXPECT_THROW(cut_from_powers(p, g), CertificateError);
  p = powers_from_cut(VertexSet(5, false), g);
  p[g.edge_user(0, 0)] = 0.5;
  EXPECT_THROW(cut_from_powers(p, g), CertificateError);
}

TEST(SrmIdentity, MatchesDirectRatesAndIsAffine) {
  Rng rng(2);
  for (int c = 0; c < 10; ++c) {
    const MaxCutGadget g = reduce_maxcut(random_connected_graph(rng, 2 + c % 5));
    const std::size_t V = g.graph.V;
    const double slope = g.gap() / (2.0 * g.total_weight);
    const VertexSet empty(V, false);
    const double base = srm_value_identity(g.graph, empty, g);
    for (unsigned mask = 0; mask < (1u << V); ++mask) {
      VertexSet S(V);
      for (std::size_t i = 0; i < V; ++i) S[i] = (mask >> i) & 1u;
      const double id = srm_value_identity(g.graph, S, g);
      EXPECT_NEAR(id, weighted_sum_rate(g.instance, powers_from_cut(S, g)), 1e-9);
      EXPECT_NEAR(id - base, slope * cut_weight(g.graph, S), 1e-12);
    }
  }
}

TEST(SrmIdentity, SingleEdgeEmptySet) {
  const MaxCutGadget g = reduce_maxcut({2, {{0, 1, 1.0}}});
  const VertexSet S(2, false);
  const double expected = 2.0 * std::log2(1.0 + zeta_v(0.0)) + 0.5 * (g.c01 + g.c10);
  EXPECT_NEAR(srm_value_identity(g.graph, S, g), expected, 1e-12);
  EXPECT_NEAR(weighted_sum_rate(g.instance, powers_from_cut(S, g)), expected, 1e-9);
}

TEST(SatGadget, TwoClauseFormula) {
  const SatGadget g = reduce_3sat(two_clause_formula());
  EXPECT_EQ(g.instance.K(), 22u);
  EXPECT_EQ(g.instance.Nt, 2u);
  EXPECT_TRUE(audit_gadget(g).empty());
  // c_1 hears v_{1,0}, v_{2,0}, v_{3,0}; c_2 hears v_{2,0}, v_{3,0}, v_{4,0}.
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t k = 0; k < 22; ++k) {
      if (k == g.clause_user(m)) continue;
      const bool hears = (m == 0 && (k == 0 || k == 5 || k == 10)) || (m == 1 && (k == 5 || k == 10 || k == 15));
      EXPECT_EQ(g.instance.cov(k, g.clause_user(m)).cwiseAbs().maxCoeff() > 0.0, hears) << k << "->c" << m + 1;
    }
  }
  const CMatrix& pos = g.instance.cov(g.variable_user(0, 0), g.clause_user(0));
  EXPECT_NEAR(pos(0, 0).real(), 0.0, 0.0);
  EXPECT_NEAR(pos(1, 1).real(), 1.0 / 25.0, 1e-17);
  const CMatrix& neg = g.instance.cov(g.variable_user(3, 0), g.clause_user(1));
  EXPECT_NEAR(neg(0, 0).real(), 1.0 / 25.0, 1e-17);
  EXPECT_NEAR(neg(1, 1).real(), 0.0, 0.0);
  EXPECT_EQ(g.users.users[g.clause_user(1)].label, "c2");
  EXPECT_EQ(g.users.users[g.variable_user(3, 4)].label, "v4_4");
}

const ConstraintResidual& clause_residual(const CertificateReport& r, const SatGadget& g, std::size_t m) {
  for (const auto& c : r.residuals) {
    if (c.kind == ConstraintKind::Clause && c.user == g.clause_user(m)) return c;
  }
  throw std::logic_error("missing clause residual");
}

TEST(SatCertificate, SatisfyingAssignmentIsFeasible) {
  const SatGadget g = reduce_3sat(two_clause_formula());
  const BeamformerSet W = beamformers_from_assignment({true, true, false, false}, g);
  for (const auto& w : W.w) EXPECT_NEAR(w.squaredNorm(), 1.0, 1e-15);
  const CertificateReport r = check_feasibility_certificate(g, W);
  EXPECT_TRUE(r.feasible);
  for (const auto& c : r.residuals) {
    if (c.kind == ConstraintKind::Self || c.kind == ConstraintKind::Cross) {
      EXPECT_NEAR(c.value, 1.0, 1e-9);
    }
  }
}

TEST(SatCertificate, ClauseValues) {
  const SatGadget g = reduce_3sat(two_clause_formula());
  const double two = 0.9 * std::exp(0.01) * 1.04 * 1.04;
  const double three = two * 1.04;
  // x = (1,0,0,0): clause 1 has two false literals.
  const CertificateReport r2 = check_feasibility_certificate(g, beamformers_from_assignment({true, false, false, false}, g));
  EXPECT_NEAR(clause_residual(r2, g, 0).value, two, 1e-12);
  EXPECT_NEAR(clause_residual(r2, g, 0).value, 0.98318, 1e-4);
  EXPECT_TRUE(r2.feasible);
  // x = (0,0,0,1): clause 1 has three false literals.
  const CertificateReport r3 = check_feasibility_certificate(g, beamformers_from_assignment({false, false, false, true}, g));
  EXPECT_NEAR(clause_residual(r3, g, 0).value, three, 1e-12);
  EXPECT_NEAR(clause_residual(r3, g, 0).value, 1.02251, 1e-4);
  EXPECT_FALSE(r3.feasible);
}

TEST(SatCertificate, AssignmentRoundTripAndPhase) {
  const SatGadget g = reduce_3sat(two_clause_formula());
  for (unsigned mask = 0; mask < 16; ++mask) {
    Assignment x(4);
    for (std::size_t n = 0; n < 4; ++n) x[n] = (mask >> n) & 1u;
    EXPECT_EQ(assignment_from_beamformers(beamformers_from_assignment(x, g), g), x);
  }
  BeamformerSet W = beamformers_from_assignment({true, true, true, true}, g);
  const Complex phase = std::polar(1.0, std::numbers::pi / 3.0);
  W.w[g.variable_user(1, 0)] << 0.0, phase;
  EXPECT_FALSE(assignment_from_beamformers(W, g)[1]);
  W.w[g.variable_user(1, 0)] << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  EXPECT_THROW(assignment_from_beamformers(W, g), CertificateError);
}

TEST(SatCertificate, NonCanonicalBeamViolatesItsUser) {
  const SatGadget g = reduce_3sat(two_clause_formula());
  BeamformerSet W = beamformers_from_assignment({true, true, false, false}, g);
  W.w[g.variable_user(0, 0)] << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  EXPECT_FALSE(check_feasibility_certificate(g, W).feasible);
}

TEST(SatCertificate, EquivalenceOnTheTwoClauseFormula) {
  const SatGadget g = reduce_3sat(two_clause_formula());
  for (unsigned mask = 0; mask < 16; ++mask) {
    Assignment x(4);
    for (std::size_t n = 0; n < 4; ++n) x[n] = (mask >> n) & 1u;
    EXPECT_EQ(check_feasibility_certificate(g, beamformers_from_assignment(x, g)).feasible, satisfies(g.formula, x));
  }
}

TEST(ConstraintKinds, Names) {
  EXPECT_EQ(constraint_kind_name(ConstraintKind::Self), "self");
  EXPECT_EQ(constraint_kind_name(ConstraintKind::Clause), "clause");
}

}  // namespace
}  // namespace cobf
