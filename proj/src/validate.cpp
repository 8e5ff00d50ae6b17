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

#include "cobf/validate.hpp"

#include "cobf/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace cobf {
namespace {

std::string indexed(const std::string& name, std::size_t i) {
  return name + "[" + std::to_string(i) + "]";
}

std::string indexed(const std::string& name, std::size_t k, std::size_t i) {
  return name + "[" + std::to_string(k) + "][" + std::to_string(i) + "]";
}

void check_sizes(ValidationReport& r, std::size_t K, const std::vector<double>& v, const std::string& name) {
  if (v.size() != K) {
    r.violations.push_back({name, "length differs from K", static_cast<double>(v.size())});
  }
}

void check_scalars(ValidationReport& r, const std::vector<double>& sigma2, const std::vector<double>& rho,
                   const std::vector<double>& P, const std::vector<double>& alpha) {
  const std::size_t K = sigma2.size();
  check_sizes(r, K, rho, "rho");
  check_sizes(r, K, P, "P");
  check_sizes(r, K, alpha, "alpha");
  for (std::size_t i = 0; i < K; ++i) {
    if (!(sigma2[i] > 0.0) || !std::isfinite(sigma2[i])) {
      r.violations.push_back({indexed("sigma2", i), "nonpositive noise power", sigma2[i]});
    }
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0 && rho[i] < 1.0)) {
      r.violations.push_back({indexed("rho", i), "rho out of open interval", rho[i]});
    }
  }
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (!(P[i] > 0.0) || !std::isfinite(P[i])) {
      r.violations.push_back({indexed("P", i), "nonpositive power budget", P[i]});
    }
  }
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!(alpha[i] > 0.0) || !std::isfinite(alpha[i])) {
      r.violations.push_back({indexed("alpha", i), "nonpositive rate weight", alpha[i]});
    }
  }
}

}  // namespace

double ValidationReport::magnitude_of(const std::string& message) const {
  double m = 0.0;
  for (const auto& v : violations) {
    if (v.message == message) m = std::max(m, std::abs(v.magnitude));
  }
  return m;
}

double hermitian_drift(const CMatrix& Q) {
  double drift = 0.0;
  for (Eigen::Index a = 0; a < Q.rows(); ++a) {
    for (Eigen::Index b = 0; b < Q.cols(); ++b) {
      drift = std::max(drift, std::abs(Q(a, b) - std::conj(Q(b, a))));
    }
  }
  return drift;
}

double min_eigenvalue(const CMatrix& Q) {
  if (Q.size() == 0) return 0.0;
  const CMatrix H = (Q + Q.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(H, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ValidationReport validate(const SisoInstance& instance) {
  ValidationReport r;
  const std::size_t K = instance.K();
  if (K == 0) r.violations.push_back({"K", "no users", 0.0});
  if (static_cast<std::size_t>(instance.Q.rows()) != K || static_cast<std::size_t>(instance.Q.cols()) != K) {
    r.violations.push_back({"Q", "shape differs from KxK", static_cast<double>(instance.Q.rows())});
    check_scalars(r, instance.sigma2, instance.rho, instance.P, instance.alpha);
    return r;
  }
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < K; ++i) {
      const double q = instance.Q(k, i);
      if (!std::isfinite(q) || q < 0.0) {
        r.violations.push_back({indexed("Q", k, i), "negative channel variance", q});
      }
    }
    if (!(instance.Q(k, k) > 0.0)) {
      r.violations.push_back({indexed("Q", k, k), "zero direct channel", instance.Q(k, k)});
    }
  }
  check_scalars(r, instance.sigma2, instance.rho, instance.P, instance.alpha);
  return r;
}

ValidationReport validate(const MisoInstance& instance) {
  ValidationReport r;
  const std::size_t K = instance.K();
  if (K == 0) r.violations.push_back({"K", "no users", 0.0});
  if (instance.Nt == 0) r.violations.push_back({"Nt", "no antennas", 0.0});
  if (instance.Qcov.size() != K * K) {
    r.violations.push_back({"Qcov", "shape differs from KxK", static_cast<double>(instance.Qcov.size())});
    check_scalars(r, instance.sigma2, instance.rho, instance.P, instance.alpha);
    return r;
  }
  const auto Nt = static_cast<Eigen::Index>(instance.Nt);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < K; ++i) {
      const CMatrix& Q = instance.cov(k, i);
      const std::string name = indexed("Qcov", k, i);
      if (Q.rows() != Nt || Q.cols() != Nt) {
        r.violations.push_back({name, "covariance shape differs from NtxNt", static_cast<double>(Q.rows())});
        continue;
      }
      if (!Q.allFinite()) {
        r.violations.push_back({name, "non-finite covariance entry", 0.0});
        continue;
      }
      const double drift = hermitian_drift(Q);
      if (drift > kHermitianTolerance) {
        r.violations.push_back({name, "covariance not Hermitian", drift});
      }
      const double lambda = min_eigenvalue(Q);
      if (lambda < -kPsdTolerance) {
        r.violations.push_back({name, "covariance not PSD", lambda});
      }
      if (k == i && Q.norm() == 0.0) {
        r.violations.push_back({name, "zero direct covariance", 0.0});
      }
    }
  }
  check_scalars(r, instance.sigma2, instance.rho, instance.P, instance.alpha);
  return r;
}

bool is_connected(const WeightedGraph& graph) {
  if (graph.V == 0) return false;
  std::vector<std::vector<std::size_t>> adj(graph.V);
  for (const auto& e : graph.edges) {
    if (e.i >= graph.V || e.j >= graph.V) return false;
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<bool> seen(graph.V, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : adj[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == graph.V;
}

ValidationReport validate(const WeightedGraph& graph) {
  ValidationReport r;
  if (graph.V == 0) r.violations.push_back({"V", "empty vertex set", 0.0});
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t n = 0; n < graph.edges.size(); ++n) {
    const Edge& e = graph.edges[n];
    const std::string name = indexed("edges", n);
    if (!(e.i < e.j)) r.violations.push_back({name, "edge endpoints not ordered i < j", 0.0});
    if (e.j >= graph.V) r.violations.push_back({name, "edge endpoint out of range", static_cast<double>(e.j)});
    if (!(e.w > 0.0) || !std::isfinite(e.w)) r.violations.push_back({name, "nonpositive edge weight", e.w});
    if (!seen.insert({e.i, e.j}).second) r.violations.push_back({name, "duplicate edge", 0.0});
  }
  if (graph.V > 0 && !is_connected(graph)) r.violations.push_back({"edges", "graph not connected", 0.0});
  return r;
}

ValidationReport validate(const CnfFormula& formula) {
  ValidationReport r;
  for (std::size_t m = 0; m < formula.clauses.size(); ++m) {
    const Clause& c = formula.clauses[m];
    const std::string name = indexed("clauses", m);
    for (const Literal& l : c) {
      if (l.value == 0 || l.variable() > formula.N) {
        r.violations.push_back({name, "literal variable out of range", static_cast<double>(l.value)});
      }
    }
    if (c[0].variable() == c[1].variable() || c[0].variable() == c[2].variable() ||
        c[1].variable() == c[2].variable()) {
      r.violations.push_back({name, "clause variables not distinct", 0.0});
    }
  }
  return r;
}

void require_valid(const ValidationReport& report, const std::string& what) {
  if (report.ok()) return;
  std::ostringstream os;
  os << "invalid " << what << ":";
  for (const auto& v : report.violations) os << " " << v.field << " (" << v.message << ");";
  throw InputError(os.str());
}

}  // namespace cobf
