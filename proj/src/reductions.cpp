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

#include "cobf/reductions.hpp"

#include "cobf/errors.hpp"
#include "cobf/outage.hpp"
#include "cobf/validate.hpp"
#include "cobf/zeta.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace cobf {
namespace {

using Eigen::Index;

std::string vertex_label(std::size_t i, std::size_t a) { return fmt::format("v{}_{}", i + 1, a); }

}  // namespace

MaxCutGadget reduce_maxcut(const WeightedGraph& graph) {
  require_valid(validate(graph), "graph");
  const std::size_t V = graph.V;
  const std::size_t E = graph.edges.size();
  const std::size_t K = 2 * (V + E);

  MaxCutGadget g;
  g.graph = graph;
  long double total = 0.0L;
  for (const auto& e : graph.edges) total += static_cast<long double>(e.w);
  g.total_weight = static_cast<double>(total);

  SisoInstance& inst = g.instance;
  inst.Q = Eigen::MatrixXd::Zero(static_cast<Index>(K), static_cast<Index>(K));
  inst.sigma2.assign(K, kGadgetNoise);
  inst.rho.assign(K, kGadgetRho);
  inst.P.assign(K, 1.0);
  inst.alpha.assign(K, 1.0);
  g.users.users.resize(K);

  for (std::size_t i = 0; i < V; ++i) {
    for (std::size_t a = 0; a < 2; ++a) {
      g.users.users[g.vertex_user(i, a)] = {UserRole::Vertex, i, a, vertex_label(i, a)};
      for (std::size_t b = 0; b < 2; ++b) {
        inst.Q(static_cast<Index>(g.vertex_user(i, a)), static_cast<Index>(g.vertex_user(i, b))) = 1.0;
      }
    }
  }
  for (std::size_t e = 0; e < E; ++e) {
    const auto& edge = graph.edges[e];
    const double alpha = static_cast<double>(static_cast<long double>(edge.w) / (2.0L * total));
    // Direction 0 is e_ij, interfered by v_{i0} and v_{j1}; direction 1 is
    // e_ji, interfered by v_{j0} and v_{i1}.
    const std::array<std::array<std::size_t, 2>, 2> ends{{{edge.i, edge.j}, {edge.j, edge.i}}};
    for (std::size_t dir = 0; dir < 2; ++dir) {
      const std::size_t u = g.edge_user(e, dir);
      const auto [k, l] = ends[dir];
      g.users.users[u] = {UserRole::Edge, e, dir, fmt::format("e{}_{}", k + 1, l + 1)};
      inst.P[u] = kEdgeUserPower;
      inst.alpha[u] = alpha;
      inst.Q(static_cast<Index>(u), static_cast<Index>(u)) = 1.0;
      inst.Q(static_cast<Index>(g.vertex_user(k, 0)), static_cast<Index>(u)) = 1.0;
      inst.Q(static_cast<Index>(g.vertex_user(l, 1)), static_cast<Index>(u)) = 1.0;
    }
  }

  const LinkParams link{kGadgetNoise, kGadgetRho};
  g.zeta_v0 = zeta_v(0.0, link);
  g.zeta_v1 = zeta_v(1.0, link);
  auto c = [&](double a, double b) { return std::log2(1.0 + kEdgeUserPower * zeta_e(a, b, link)); };
  g.c00 = c(0.0, 0.0);
  g.c11 = c(1.0, 1.0);
  g.c01 = c(0.0, 1.0);
  g.c10 = c(1.0, 0.0);
  return g;
}

std::vector<double> powers_from_cut(const VertexSet& S, const MaxCutGadget& gadget) {
  if (S.size() != gadget.graph.V) throw std::invalid_argument("vertex set size differs from V");
  std::vector<double> p(gadget.instance.K(), kEdgeUserPower);
  for (std::size_t i = 0; i < gadget.graph.V; ++i) {
    p[gadget.vertex_user(i, 0)] = S[i] ? 0.0 : 1.0;
    p[gadget.vertex_user(i, 1)] = S[i] ? 1.0 : 0.0;
  }
  return p;
}

VertexSet cut_from_powers(std::span<const double> p, const MaxCutGadget& gadget, double tol) {
  if (p.size() != gadget.instance.K()) throw std::invalid_argument("power vector length differs from K");
  auto near = [tol](double x, double target) { return std::abs(x - target) <= tol; };
  VertexSet S(gadget.graph.V, false);
  for (std::size_t i = 0; i < gadget.graph.V; ++i) {
    const double p0 = p[gadget.vertex_user(i, 0)];
    const double p1 = p[gadget.vertex_user(i, 1)];
    if (near(p0, 0.0) && near(p1, 1.0)) S[i] = true;
    else if (!(near(p0, 1.0) && near(p1, 0.0))) {
      throw CertificateError(fmt::format("non-certificate power vector: vertex {} pattern [{}, {}]", i + 1, p0, p1));
    }
  }
  for (std::size_t e = 0; e < gadget.graph.edges.size(); ++e) {
    for (std::size_t dir = 0; dir < 2; ++dir) {
      const double pe = p[gadget.edge_user(e, dir)];
      if (!near(pe, kEdgeUserPower)) {
        throw CertificateError(fmt::format("non-certificate power vector: edge user power {}", pe));
      }
    }
  }
  return S;
}

double cut_weight(const WeightedGraph& graph, const VertexSet& S) {
  if (S.size() != graph.V) throw std::invalid_argument("vertex set size differs from V");
  double total = 0.0;
  for (const auto& e : graph.edges) {
    if (S[e.i] != S[e.j]) total += e.w;
  }
  return total;
}

double srm_value_identity(const WeightedGraph& graph, const VertexSet& S, const MaxCutGadget& gadget) {
  double value = static_cast<double>(graph.V) * std::log2(1.0 + gadget.zeta_v0);
  if (!graph.edges.empty()) {
    value += 0.5 * (gadget.c01 + gadget.c10) + gadget.gap() / (2.0 * gadget.total_weight) * cut_weight(graph, S);
  }
  return value;
}

std::vector<std::string> audit_gadget(const MaxCutGadget& gadget) {
  std::vector<std::string> issues;
  const auto& g = gadget.graph;
  const auto& inst = gadget.instance;
  const std::size_t K = 2 * (g.V + g.edges.size());
  if (inst.K() != K || gadget.users.size() != K || static_cast<std::size_t>(inst.Q.rows()) != K) {
    issues.push_back(fmt::format("user count {} differs from 2(|V|+|E|) = {}", inst.K(), K));
    return issues;
  }
  double total = 0.0;
  for (const auto& e : g.edges) total += e.w;

  // Expected link gain from the role tags alone.
  auto expected = [&](const UserTag& tx, const UserTag& rx) -> double {
    if (rx.role == UserRole::Vertex) return tx.role == UserRole::Vertex && tx.source == rx.source ? 1.0 : 0.0;
    const auto& edge = g.edges[rx.source];
    const std::size_t first = rx.sub == 0 ? edge.i : edge.j;
    const std::size_t second = rx.sub == 0 ? edge.j : edge.i;
    if (tx.role == UserRole::Edge) return tx.source == rx.source && tx.sub == rx.sub ? 1.0 : 0.0;
    if (tx.source == first && tx.sub == 0) return 1.0;
    if (tx.source == second && tx.sub == 1) return 1.0;
    return 0.0;
  };

  for (std::size_t u = 0; u < K; ++u) {
    const auto& tag = gadget.users.users[u];
    const bool vertex = tag.role == UserRole::Vertex;
    if (inst.sigma2[u] != 0.1) issues.push_back(fmt::format("sigma2[{}] = {}", u, inst.sigma2[u]));
    if (inst.rho[u] != 0.95) issues.push_back(fmt::format("rho[{}] = {}", u, inst.rho[u]));
    if (inst.P[u] != (vertex ? 1.0 : 0.7)) issues.push_back(fmt::format("P[{}] = {}", u, inst.P[u]));
    const double alpha = vertex ? 1.0 : g.edges[tag.source].w / (2.0 * total);
    if (std::abs(inst.alpha[u] - alpha) > 1e-15) issues.push_back(fmt::format("alpha[{}] = {}", u, inst.alpha[u]));
    for (std::size_t k = 0; k < K; ++k) {
      const double q = inst.Q(static_cast<Index>(k), static_cast<Index>(u));
      if (q != expected(gadget.users.users[k], tag)) issues.push_back(fmt::format("Q({}, {}) = {}", k, u, q));
    }
  }
  if (!(gadget.gap() > 0.0)) issues.push_back("c00 + c11 - c01 - c10 not positive");
  return issues;
}

SatGadget reduce_3sat(const CnfFormula& formula) {
  require_valid(validate(formula), "formula");
  const std::size_t N = formula.N;
  const std::size_t M = formula.M();
  const std::size_t K = 5 * N + M;
  const Complex j1{0.0, 1.0};

  SatGadget g;
  g.formula = formula;
  g.A[0] = CMatrix{{1.0, 1.0}, {1.0, 1.0}};
  g.A[1] = CMatrix{{1.0, -1.0}, {-1.0, 1.0}};
  g.A[2] = CMatrix{{1.0, j1}, {-j1, 1.0}};
  g.A[3] = CMatrix{{1.0, -j1}, {j1, 1.0}};
  for (const auto& A : g.A) {
    if (hermitian_drift(A) != 0.0) throw std::logic_error("gadget matrix not Hermitian");
  }

  MisoInstance& inst = g.instance;
  inst.Nt = 2;
  inst.Qcov.assign(K * K, CMatrix::Zero(2, 2));
  inst.rho.assign(K, kSatRho);
  inst.P.assign(K, 1.0);
  inst.alpha.assign(K, 1.0);
  inst.sigma2.assign(K, kClauseNoise);
  g.users.users.resize(K);

  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t l = 0; l < 5; ++l) {
      const std::size_t u = g.variable_user(n, l);
      g.users.users[u] = {UserRole::Vertex, n, l, vertex_label(n, l)};
      inst.sigma2[u] = l == 0 ? std::log(1.0 / kSatRho) : std::log((10.0 / 11.0) / kSatRho);
      inst.cov(u, u) = CMatrix::Identity(2, 2);
      if (l != 0) inst.cov(g.variable_user(n, 0), u) = g.A[l - 1] / 10.0;
    }
  }
  for (std::size_t m = 0; m < M; ++m) {
    const std::size_t u = g.clause_user(m);
    g.users.users[u] = {UserRole::Clause, m, 0, fmt::format("c{}", m + 1)};
    inst.cov(u, u) = CMatrix::Identity(2, 2);
    for (const auto& lit : formula.clauses[m]) {
      CMatrix Q = CMatrix::Zero(2, 2);
      if (lit.positive()) Q(1, 1) = 1.0 / 25.0;
      else Q(0, 0) = 1.0 / 25.0;
      inst.cov(g.variable_user(lit.variable() - 1, 0), u) = Q;
    }
  }
  return g;
}

BeamformerSet beamformers_from_assignment(const Assignment& x, const SatGadget& gadget) {
  if (x.size() != gadget.formula.N) throw std::invalid_argument("assignment length differs from N");
  const CVector first = (CVector(2) << 1.0, 0.0).finished();
  const CVector second = (CVector(2) << 0.0, 1.0).finished();
  BeamformerSet W;
  W.w.assign(gadget.instance.K(), first);
  for (std::size_t n = 0; n < x.size(); ++n) {
    if (!x[n]) W.w[gadget.variable_user(n, 0)] = second;
  }
  return W;
}

Assignment assignment_from_beamformers(const BeamformerSet& W, const SatGadget& gadget, double tol) {
  if (W.K() != gadget.instance.K()) throw std::invalid_argument("beamformer count differs from K");
  Assignment x(gadget.formula.N, false);
  for (std::size_t n = 0; n < gadget.formula.N; ++n) {
    const CVector& w = W.w[gadget.variable_user(n, 0)];
    if (w.size() != 2) throw std::invalid_argument("beamformer length differs from Nt");
    const double a0 = std::abs(w(0));
    const double a1 = std::abs(w(1));
    if (a1 <= tol && std::abs(a0 - 1.0) <= tol) x[n] = true;
    else if (!(a0 <= tol && std::abs(a1 - 1.0) <= tol)) {
      throw CertificateError(fmt::format("non-certificate beamformer for variable {}", n + 1));
    }
  }
  return x;
}

std::string_view constraint_kind_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::Self: return "self";
    case ConstraintKind::Cross: return "cross";
    case ConstraintKind::Clause: return "clause";
    case ConstraintKind::Power: return "power";
  }
  return "self";
}

CertificateReport check_feasibility_certificate(const SatGadget& gadget, const BeamformerSet& W) {
  const auto& inst = gadget.instance;
  if (W.K() != inst.K()) throw std::invalid_argument("beamformer count differs from K");
  CertificateReport report;
  report.feasible = true;
  report.max_lhs = -std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < inst.K(); ++u) {
    const auto& tag = gadget.users.users[u];
    const ConstraintKind kind = tag.role == UserRole::Clause ? ConstraintKind::Clause
                                : tag.sub == 0               ? ConstraintKind::Self
                                                             : ConstraintKind::Cross;
    double lhs = std::numeric_limits<double>::infinity();
    try {
      lhs = outage_lhs(inst, W, inst.alpha[u] * gadget.R_bar, u);
    } catch (const UndefinedError&) {
      // zero signal power: the constraint cannot hold at a positive rate
    }
    const bool ok = lhs <= 1.0 + kLhsSlack;
    report.residuals.push_back({u, kind, lhs, 1.0, ok});
    report.max_lhs = std::max(report.max_lhs, lhs);
    report.feasible = report.feasible && ok;
  }
  for (std::size_t u = 0; u < inst.K(); ++u) {
    const double power = W.w[u].squaredNorm();
    const bool ok = power <= inst.P[u] + kPowerSlack;
    report.residuals.push_back({u, ConstraintKind::Power, power, inst.P[u], ok});
    report.max_power = std::max(report.max_power, power);
    report.feasible = report.feasible && ok;
  }
  return report;
}

std::vector<std::string> audit_gadget(const SatGadget& gadget) {
  std::vector<std::string> issues;
  const auto& f = gadget.formula;
  const auto& inst = gadget.instance;
  const std::size_t K = 5 * f.N + f.M();
  if (inst.K() != K || gadget.users.size() != K || inst.Qcov.size() != K * K || inst.Nt != 2) {
    issues.push_back(fmt::format("user count {} differs from 5N+M = {}", inst.K(), K));
    return issues;
  }
  const Complex j1{0.0, 1.0};
  const std::array<std::array<Complex, 2>, 4> off{{{1.0, 1.0}, {-1.0, -1.0}, {j1, -j1}, {-j1, j1}}};

  auto expected = [&](const UserTag& tx, const UserTag& rx) {
    CMatrix Q = CMatrix::Zero(2, 2);
    if (&tx == &rx) return CMatrix(CMatrix::Identity(2, 2));
    if (tx.role != UserRole::Vertex || tx.sub != 0) return Q;
    if (rx.role == UserRole::Vertex && rx.source == tx.source && rx.sub != 0) {
      Q(0, 0) = Q(1, 1) = 0.1;
      Q(0, 1) = off[rx.sub - 1][0] / 10.0;
      Q(1, 0) = off[rx.sub - 1][1] / 10.0;
    } else if (rx.role == UserRole::Clause) {
      for (const auto& lit : f.clauses[rx.source]) {
        if (lit.variable() != tx.source + 1) continue;
        (lit.positive() ? Q(1, 1) : Q(0, 0)) = 0.04;
      }
    }
    return Q;
  };

  for (std::size_t u = 0; u < K; ++u) {
    const auto& rx = gadget.users.users[u];
    double sigma2 = 0.01;
    if (rx.role == UserRole::Vertex) sigma2 = rx.sub == 0 ? -std::log(0.9) : std::log(10.0 / 9.9);
    if (std::abs(inst.sigma2[u] - sigma2) > 1e-15) issues.push_back(fmt::format("sigma2[{}] = {}", u, inst.sigma2[u]));
    if (inst.rho[u] != 0.9) issues.push_back(fmt::format("rho[{}] = {}", u, inst.rho[u]));
    if (inst.P[u] != 1.0) issues.push_back(fmt::format("P[{}] = {}", u, inst.P[u]));
    if (inst.alpha[u] != 1.0) issues.push_back(fmt::format("alpha[{}] = {}", u, inst.alpha[u]));
    for (std::size_t k = 0; k < K; ++k) {
      const CMatrix want = expected(gadget.users.users[k], rx);
      if ((inst.cov(k, u) - want).cwiseAbs().maxCoeff() > 1e-15) issues.push_back(fmt::format("Qcov({}, {})", k, u));
    }
  }
  return issues;
}

}  // namespace cobf
