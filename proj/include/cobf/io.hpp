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

// JSON instance/solution documents and the DIMACS-style text formats.
//
// Instance documents carry {"format": "cobf-instance", "version": 1,
// "type": "siso" | "miso"} next to the data fields K, Q / Nt, Qcov, sigma2,
// rho, P, alpha. Complex numbers are [re, im] pairs; matrices are nested
// row-major arrays; Q[k][i] and Qcov[k][i] describe link k -> i.
//
// Graph and CNF text files use 1-based vertex / variable numbers as DIMACS
// does; in memory they are 0-based (vertices) or signed 1-based (literals).

#include "cobf/model.hpp"

#include "json.hpp"

#include <istream>
#include <string>
#include <variant>
#include <vector>

namespace cobf {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const SisoInstance& instance);
Json to_json(const MisoInstance& instance);
Json to_json(const BeamformerSet& beams);
Json powers_to_json(const std::vector<double>& p);
Json to_json(const WeightedGraph& graph);
Json to_json(const CnfFormula& formula);
Json to_json(const UserMap& map);

using AnyInstance = std::variant<SisoInstance, MisoInstance>;

/// Decodes either instance type; dispatches on the "type" field.
AnyInstance instance_from_json(const Json& j);
SisoInstance siso_from_json(const Json& j);
/// Covariances within the Hermitian tolerance are symmetrized as (Q + Q^H)/2.
MisoInstance miso_from_json(const Json& j);
BeamformerSet beams_from_json(const Json& j);
std::vector<double> powers_from_json(const Json& j);
WeightedGraph graph_from_json(const Json& j);
CnfFormula formula_from_json(const Json& j);
UserMap usermap_from_json(const Json& j);

/// "p edge V E" header followed by "e i j w" lines (w defaults to 1).
WeightedGraph read_edge_list(std::istream& in, const std::string& source = "<graph>");
std::string write_edge_list(const WeightedGraph& graph);

/// Standard DIMACS CNF ("p cnf N M", zero-terminated clauses).
CnfFormula read_dimacs_cnf(std::istream& in, const std::string& source = "<cnf>");
std::string write_dimacs_cnf(const CnfFormula& formula);

/// Parses JSON text, reporting a line on failure.
Json parse_json(std::istream& in, const std::string& source);

}  // namespace cobf
