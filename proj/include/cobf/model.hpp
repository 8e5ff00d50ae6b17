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

// Problem data shared by every module.
//
// Indexing convention: users are 0-based everywhere in the library. A channel
// entry indexed (k, i) always describes the link from transmitter k to
// receiver i. Powers are linear, rates are in bits/sec/Hz.

#include <Eigen/Core>

#include <array>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace cobf {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Scalar-channel (single antenna) interference channel.
struct SisoInstance {
  Eigen::MatrixXd Q;           ///< Q(k, i): variance of link k -> i.
  std::vector<double> sigma2;  ///< receiver noise powers
  std::vector<double> rho;     ///< satisfaction probabilities, 1 - epsilon
  std::vector<double> P;       ///< power budgets
  std::vector<double> alpha;   ///< rate weights

  std::size_t K() const noexcept { return sigma2.size(); }
};

/// Vector-channel interference channel described by channel covariances.
struct MisoInstance {
  std::size_t Nt = 1;
  std::vector<CMatrix> Qcov;  ///< K*K row-major, Qcov[k*K + i] is link k -> i
  std::vector<double> sigma2;
  std::vector<double> rho;
  std::vector<double> P;
  std::vector<double> alpha;

  std::size_t K() const noexcept { return sigma2.size(); }
  const CMatrix& cov(std::size_t k, std::size_t i) const { return Qcov[k * K() + i]; }
  CMatrix& cov(std::size_t k, std::size_t i) { return Qcov[k * K() + i]; }
};

/// One beamforming vector per user.
struct BeamformerSet {
  std::vector<CVector> w;

  std::size_t K() const noexcept { return w.size(); }
};

/// Nt = 1 embedding of a scalar instance (Q_ki -> 1x1 covariance).
MisoInstance to_miso(const SisoInstance& siso);

/// Beamformers sqrt(p_i) for scalar powers.
BeamformerSet beams_from_powers(const std::vector<double>& p);

/// Undirected weighted edge between 0-based vertices i < j.
struct Edge {
  std::size_t i = 0;
  std::size_t j = 0;
  double w = 1.0;
};

struct WeightedGraph {
  std::size_t V = 0;
  std::vector<Edge> edges;
};

/// A clause literal in DIMACS convention: +n is x_n, -n is not x_n (n >= 1).
struct Literal {
  int value = 0;

  std::size_t variable() const noexcept { return static_cast<std::size_t>(value < 0 ? -value : value); }
  bool positive() const noexcept { return value > 0; }
};

using Clause = std::array<Literal, 3>;

struct CnfFormula {
  std::size_t N = 0;
  std::vector<Clause> clauses;

  std::size_t M() const noexcept { return clauses.size(); }
};

/// Which source object a constructed user stands for.
enum class UserRole { Vertex, Edge, Clause };

struct UserTag {
  UserRole role = UserRole::Vertex;
  std::size_t source = 0;  ///< 0-based vertex, edge, variable or clause index
  std::size_t sub = 0;     ///< vertex: a in {0,1}; variable: l in {0..4}; edge: direction (0: i->j, 1: j->i)
  std::string label;       ///< 1-based name, e.g. "v1_0", "e1_2", "c1"
};

/// Bookkeeping from source objects to user indices of a constructed instance.
struct UserMap {
  std::vector<UserTag> users;

  std::size_t size() const noexcept { return users.size(); }
};

}  // namespace cobf
