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

// Seeded generators for the randomized property suites.

#include "cobf/model.hpp"
#include "cobf/siso.hpp"

#include <random>

namespace cobf {

using Rng = std::mt19937_64;

/// Random spanning tree plus each remaining pair with probability 1/2,
/// weights uniform in (0, 1].
WeightedGraph random_connected_graph(Rng& rng, std::size_t V);

/// M clauses over N >= 3 variables with distinct variables per clause.
CnfFormula random_3cnf(Rng& rng, std::size_t N, std::size_t M);
/// Contains all eight polarity combinations over three variables, hence
/// unsatisfiable. Requires M >= 8.
CnfFormula planted_unsat_3cnf(Rng& rng, std::size_t N, std::size_t M);

/// Direct gains in [0.5, 2], cross gains in [0, 0.5], noise in [0.05, 0.5],
/// rho in [0.5, 0.95], budgets in [0.5, 2], weights in [0.5, 2].
SisoInstance random_siso(Rng& rng, std::size_t K);

/// Covariances B B^H / Nt with B complex Gaussian of random rank; cross
/// links scaled by a factor in [0, 0.5].
MisoInstance random_miso(Rng& rng, std::size_t K, std::size_t Nt);

/// Unit-norm beamformers with uniformly random direction, scaled to sqrt(P_i).
BeamformerSet random_beams(Rng& rng, const MisoInstance& instance);

/// A vertex of a random weighted graph inside the Max-Cut gadget with the
/// other vertex powers drawn from [0, 1].
VertexContext random_vertex_context(Rng& rng);

}  // namespace cobf
