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

#include "cobf/random.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cobf {
namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

// (0, 1] rather than [0, 1).
double unit_weight(Rng& rng) { return 1.0 - uniform(rng, 0.0, 1.0); }

// 0, 1 or a uniform draw, each a third of the time.
double gadget_power(Rng& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return 0.0;
    case 1: return 1.0;
    default: return uniform(rng, 0.0, 1.0);
  }
}

Clause random_clause(Rng& rng, std::size_t N) {
  std::vector<int> vars(N);
  std::iota(vars.begin(), vars.end(), 1);
  std::shuffle(vars.begin(), vars.end(), rng);
  std::bernoulli_distribution sign(0.5);
  Clause c;
  for (std::size_t k = 0; k < 3; ++k) c[k].value = sign(rng) ? vars[k] : -vars[k];
  return c;
}

}  // namespace

WeightedGraph random_connected_graph(Rng& rng, std::size_t V) {
  WeightedGraph g;
  g.V = V;
  std::set<std::pair<std::size_t, std::size_t>> used;
  std::vector<std::size_t> order(V);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t k = 1; k < V; ++k) {
    const std::size_t parent = order[std::uniform_int_distribution<std::size_t>(0, k - 1)(rng)];
    used.emplace(std::min(parent, order[k]), std::max(parent, order[k]));
  }
  std::bernoulli_distribution extra(0.5);
  for (std::size_t i = 0; i < V; ++i) {
    for (std::size_t j = i + 1; j < V; ++j) {
      if (!used.count({i, j}) && extra(rng)) used.emplace(i, j);
    }
  }
  for (const auto& [i, j] : used) g.edges.push_back({i, j, unit_weight(rng)});
  return g;
}

CnfFormula random_3cnf(Rng& rng, std::size_t N, std::size_t M) {
  if (N < 3) throw std::invalid_argument("3-CNF needs at least three variables");
  CnfFormula f;
  f.N = N;
  for (std::size_t m = 0; m < M; ++m) f.clauses.push_back(random_clause(rng, N));
  return f;
}

CnfFormula planted_unsat_3cnf(Rng& rng, std::size_t N, std::size_t M) {
  if (N < 3 || M < 8) throw std::invalid_argument("planted formula needs N >= 3 and M >= 8");
  CnfFormula f = random_3cnf(rng, N, M - 8);
  std::vector<int> vars(N);
  std::iota(vars.begin(), vars.end(), 1);
  std::shuffle(vars.begin(), vars.end(), rng);
  for (int signs = 0; signs < 8; ++signs) {
    Clause c;
    for (int k = 0; k < 3; ++k) c[static_cast<std::size_t>(k)].value = ((signs >> k) & 1) ? vars[k] : -vars[k];
    f.clauses.push_back(c);
  }
  std::shuffle(f.clauses.begin(), f.clauses.end(), rng);
  return f;
}

SisoInstance random_siso(Rng& rng, std::size_t K) {
  SisoInstance inst;
  inst.Q = Eigen::MatrixXd(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < K; ++i) {
      inst.Q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) =
          k == i ? uniform(rng, 0.5, 2.0) : uniform(rng, 0.0, 0.5);
    }
    inst.sigma2.push_back(uniform(rng, 0.05, 0.5));
    inst.rho.push_back(uniform(rng, 0.5, 0.95));
    inst.P.push_back(uniform(rng, 0.5, 2.0));
    inst.alpha.push_back(uniform(rng, 0.5, 2.0));
  }
  return inst;
}

MisoInstance random_miso(Rng& rng, std::size_t K, std::size_t Nt) {
  MisoInstance inst;
  inst.Nt = Nt;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> rank(1, Nt);
  inst.sigma2.resize(K);
  inst.Qcov.resize(K * K);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < K; ++i) {
      const std::size_t r = rank(rng);
      CMatrix B(static_cast<Eigen::Index>(Nt), static_cast<Eigen::Index>(r));
      for (Eigen::Index a = 0; a < B.rows(); ++a) {
        for (Eigen::Index b = 0; b < B.cols(); ++b) B(a, b) = Complex(normal(rng), normal(rng)) / std::sqrt(2.0);
      }
      const double scale = k == i ? 1.0 : uniform(rng, 0.0, 0.5);
      CMatrix Q = scale * (B * B.adjoint()) / static_cast<double>(Nt);
      inst.cov(k, i) = (Q + Q.adjoint()) / 2.0;
    }
  }
  for (std::size_t i = 0; i < K; ++i) {
    inst.sigma2[i] = uniform(rng, 0.05, 0.5);
    inst.rho.push_back(uniform(rng, 0.5, 0.95));
    inst.P.push_back(uniform(rng, 0.5, 2.0));
    inst.alpha.push_back(1.0);
  }
  return inst;
}

BeamformerSet random_beams(Rng& rng, const MisoInstance& instance) {
  std::normal_distribution<double> normal(0.0, 1.0);
  BeamformerSet W;
  for (std::size_t i = 0; i < instance.K(); ++i) {
    CVector w(static_cast<Eigen::Index>(instance.Nt));
    for (Eigen::Index d = 0; d < w.size(); ++d) w(d) = Complex(normal(rng), normal(rng));
    w *= std::sqrt(instance.P[i]) / w.norm();
    W.w.push_back(std::move(w));
  }
  return W;
}

VertexContext random_vertex_context(Rng& rng) {
  VertexContext ctx;
  ctx.p_partner = gadget_power(rng);
  const std::size_t degree = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
  std::vector<double> w(degree);
  double total = uniform(rng, 0.0, 3.0);  // weight of edges away from this vertex
  for (auto& x : w) {
    x = unit_weight(rng);
    total += x;
  }
  for (double x : w) ctx.neighbors.push_back({x / (2.0 * total), gadget_power(rng)});
  return ctx;
}

}  // namespace cobf
