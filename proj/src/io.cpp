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

#include "cobf/io.hpp"

#include "cobf/errors.hpp"
#include "cobf/validate.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace cobf {
namespace {

constexpr const char* kInstanceFormat = "cobf-instance";
constexpr const char* kSolutionFormat = "cobf-solution";

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

std::vector<double> as_doubles(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<double> v;
  v.reserve(j.size());
  for (std::size_t n = 0; n < j.size(); ++n) v.push_back(as_double(j[n], where + "[" + std::to_string(n) + "]"));
  return v;
}

std::size_t as_count(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(where + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw InputError(where + ": expected [re, im]");
  return {as_double(j[0], where), as_double(j[1], where)};
}

Json matrix_to_json(const CMatrix& Q) {
  Json rows = Json::array();
  for (Eigen::Index a = 0; a < Q.rows(); ++a) {
    Json row = Json::array();
    for (Eigen::Index b = 0; b < Q.cols(); ++b) row.push_back(complex_to_json(Q(a, b)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, std::size_t Nt, const std::string& where) {
  if (!j.is_array() || j.size() != Nt) throw InputError(where + ": expected " + std::to_string(Nt) + " rows");
  CMatrix Q(static_cast<Eigen::Index>(Nt), static_cast<Eigen::Index>(Nt));
  for (std::size_t a = 0; a < Nt; ++a) {
    if (!j[a].is_array() || j[a].size() != Nt) throw InputError(where + ": ragged matrix row");
    for (std::size_t b = 0; b < Nt; ++b) {
      Q(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          complex_from_json(j[a][b], where + "[" + std::to_string(a) + "][" + std::to_string(b) + "]");
    }
  }
  return Q;
}

Json vector_to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index n = 0; n < v.size(); ++n) out.push_back(complex_to_json(v(n)));
  return out;
}

void put_scalars(Json& j, const std::vector<double>& sigma2, const std::vector<double>& rho,
                 const std::vector<double>& P, const std::vector<double>& alpha) {
  j["sigma2"] = sigma2;
  j["rho"] = rho;
  j["P"] = P;
  j["alpha"] = alpha;
}

void check_header(const Json& j, const char* format) {
  if (!j.is_object()) throw InputError("document is not a JSON object");
  if (j.contains("format") && j.at("format") != format) {
    throw InputError(std::string("expected format \"") + format + "\"");
  }
  if (j.contains("version") && j.at("version") != kSchemaVersion) {
    throw InputError("unsupported schema version " + j.at("version").dump());
  }
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const char* role_name(UserRole r) {
  switch (r) {
    case UserRole::Vertex: return "vertex";
    case UserRole::Edge: return "edge";
    case UserRole::Clause: return "clause";
  }
  return "vertex";
}

}  // namespace

Json to_json(const SisoInstance& instance) {
  Json j;
  j["format"] = kInstanceFormat;
  j["version"] = kSchemaVersion;
  j["type"] = "siso";
  j["K"] = instance.K();
  Json Q = Json::array();
  for (Eigen::Index k = 0; k < instance.Q.rows(); ++k) {
    Json row = Json::array();
    for (Eigen::Index i = 0; i < instance.Q.cols(); ++i) row.push_back(instance.Q(k, i));
    Q.push_back(std::move(row));
  }
  j["Q"] = std::move(Q);
  put_scalars(j, instance.sigma2, instance.rho, instance.P, instance.alpha);
  return j;
}

Json to_json(const MisoInstance& instance) {
  Json j;
  j["format"] = kInstanceFormat;
  j["version"] = kSchemaVersion;
  j["type"] = "miso";
  j["K"] = instance.K();
  j["Nt"] = instance.Nt;
  const std::size_t K = instance.K();
  Json Qcov = Json::array();
  for (std::size_t k = 0; k < K; ++k) {
    Json row = Json::array();
    for (std::size_t i = 0; i < K; ++i) row.push_back(matrix_to_json(instance.cov(k, i)));
    Qcov.push_back(std::move(row));
  }
  j["Qcov"] = std::move(Qcov);
  put_scalars(j, instance.sigma2, instance.rho, instance.P, instance.alpha);
  return j;
}

Json to_json(const BeamformerSet& beams) {
  Json j;
  j["format"] = kSolutionFormat;
  j["version"] = kSchemaVersion;
  Json w = Json::array();
  for (const auto& v : beams.w) w.push_back(vector_to_json(v));
  j["w"] = std::move(w);
  return j;
}

Json powers_to_json(const std::vector<double>& p) {
  Json j;
  j["format"] = kSolutionFormat;
  j["version"] = kSchemaVersion;
  j["p"] = p;
  return j;
}

Json to_json(const WeightedGraph& graph) {
  Json j;
  j["V"] = graph.V;
  Json edges = Json::array();
  for (const auto& e : graph.edges) edges.push_back(Json::array({e.i + 1, e.j + 1, e.w}));
  j["edges"] = std::move(edges);
  return j;
}

Json to_json(const CnfFormula& formula) {
  Json j;
  j["N"] = formula.N;
  Json clauses = Json::array();
  for (const auto& c : formula.clauses) clauses.push_back(Json::array({c[0].value, c[1].value, c[2].value}));
  j["clauses"] = std::move(clauses);
  return j;
}

Json to_json(const UserMap& map) {
  Json out = Json::array();
  for (const auto& u : map.users) {
    Json t;
    t["label"] = u.label;
    t["role"] = role_name(u.role);
    t["source"] = u.source + 1;
    t["sub"] = u.sub;
    out.push_back(std::move(t));
  }
  return out;
}

SisoInstance siso_from_json(const Json& j) {
  check_header(j, kInstanceFormat);
  if (j.contains("type") && j.at("type") != "siso") throw InputError("expected a siso instance");
  const std::size_t K = as_count(field(j, "K"), "K");
  SisoInstance s;
  const Json& Q = field(j, "Q");
  if (!Q.is_array() || Q.size() != K) throw InputError("Q: expected K rows");
  s.Q.resize(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(K));
  for (std::size_t k = 0; k < K; ++k) {
    const auto row = as_doubles(Q[k], "Q[" + std::to_string(k) + "]");
    if (row.size() != K) throw InputError("Q[" + std::to_string(k) + "]: expected K entries");
    for (std::size_t i = 0; i < K; ++i) s.Q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = row[i];
  }
  s.sigma2 = as_doubles(field(j, "sigma2"), "sigma2");
  s.rho = as_doubles(field(j, "rho"), "rho");
  s.P = as_doubles(field(j, "P"), "P");
  s.alpha = as_doubles(field(j, "alpha"), "alpha");
  if (s.sigma2.size() != K) throw InputError("sigma2: expected K entries");
  return s;
}

MisoInstance miso_from_json(const Json& j) {
  check_header(j, kInstanceFormat);
  if (j.contains("type") && j.at("type") != "miso") throw InputError("expected a miso instance");
  const std::size_t K = as_count(field(j, "K"), "K");
  MisoInstance m;
  m.Nt = as_count(field(j, "Nt"), "Nt");
  const Json& Qcov = field(j, "Qcov");
  if (!Qcov.is_array() || Qcov.size() != K) throw InputError("Qcov: expected K rows");
  m.Qcov.reserve(K * K);
  for (std::size_t k = 0; k < K; ++k) {
    if (!Qcov[k].is_array() || Qcov[k].size() != K) throw InputError("Qcov[" + std::to_string(k) + "]: expected K entries");
    for (std::size_t i = 0; i < K; ++i) {
      CMatrix Q = matrix_from_json(Qcov[k][i], m.Nt, "Qcov[" + std::to_string(k) + "][" + std::to_string(i) + "]");
      if (hermitian_drift(Q) <= kHermitianTolerance) Q = ((Q + Q.adjoint()) / 2.0).eval();
      m.Qcov.push_back(std::move(Q));
    }
  }
  m.sigma2 = as_doubles(field(j, "sigma2"), "sigma2");
  m.rho = as_doubles(field(j, "rho"), "rho");
  m.P = as_doubles(field(j, "P"), "P");
  m.alpha = as_doubles(field(j, "alpha"), "alpha");
  if (m.sigma2.size() != K) throw InputError("sigma2: expected K entries");
  return m;
}

AnyInstance instance_from_json(const Json& j) {
  const Json& type = field(j, "type");
  if (type == "siso") return siso_from_json(j);
  if (type == "miso") return miso_from_json(j);
  throw InputError("unknown instance type " + type.dump());
}

BeamformerSet beams_from_json(const Json& j) {
  check_header(j, kSolutionFormat);
  const Json& w = field(j, "w");
  if (!w.is_array()) throw InputError("w: expected an array of vectors");
  BeamformerSet b;
  for (std::size_t n = 0; n < w.size(); ++n) {
    const std::string where = "w[" + std::to_string(n) + "]";
    if (!w[n].is_array()) throw InputError(where + ": expected an array");
    CVector v(static_cast<Eigen::Index>(w[n].size()));
    for (std::size_t d = 0; d < w[n].size(); ++d) v(static_cast<Eigen::Index>(d)) = complex_from_json(w[n][d], where);
    b.w.push_back(std::move(v));
  }
  return b;
}

std::vector<double> powers_from_json(const Json& j) {
  check_header(j, kSolutionFormat);
  return as_doubles(field(j, "p"), "p");
}

WeightedGraph graph_from_json(const Json& j) {
  WeightedGraph g;
  g.V = as_count(field(j, "V"), "V");
  const Json& edges = field(j, "edges");
  if (!edges.is_array()) throw InputError("edges: expected an array");
  for (std::size_t n = 0; n < edges.size(); ++n) {
    const std::string where = "edges[" + std::to_string(n) + "]";
    const Json& e = edges[n];
    if (!e.is_array() || e.size() != 3) throw InputError(where + ": expected [i, j, w]");
    const std::size_t i = as_count(e[0], where);
    const std::size_t k = as_count(e[1], where);
    if (i == 0 || k == 0) throw InputError(where + ": vertices are 1-based");
    g.edges.push_back({i - 1, k - 1, as_double(e[2], where)});
  }
  return g;
}

CnfFormula formula_from_json(const Json& j) {
  CnfFormula f;
  f.N = as_count(field(j, "N"), "N");
  const Json& clauses = field(j, "clauses");
  if (!clauses.is_array()) throw InputError("clauses: expected an array");
  for (std::size_t m = 0; m < clauses.size(); ++m) {
    const Json& c = clauses[m];
    if (!c.is_array() || c.size() != 3) throw InputError("clauses[" + std::to_string(m) + "]: expected 3 literals");
    Clause clause;
    for (std::size_t t = 0; t < 3; ++t) {
      if (!c[t].is_number_integer()) throw InputError("clauses[" + std::to_string(m) + "]: literal must be an integer");
      clause[t].value = c[t].get<int>();
    }
    f.clauses.push_back(clause);
  }
  return f;
}

UserMap usermap_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("usermap: expected an array");
  UserMap map;
  for (std::size_t n = 0; n < j.size(); ++n) {
    const Json& t = j[n];
    UserTag u;
    const std::string role = field(t, "role").get<std::string>();
    if (role == "vertex") u.role = UserRole::Vertex;
    else if (role == "edge") u.role = UserRole::Edge;
    else if (role == "clause") u.role = UserRole::Clause;
    else throw InputError("usermap[" + std::to_string(n) + "]: unknown role " + role);
    const std::size_t source = as_count(field(t, "source"), "source");
    if (source == 0) throw InputError("usermap[" + std::to_string(n) + "]: source is 1-based");
    u.source = source - 1;
    u.sub = as_count(field(t, "sub"), "sub");
    u.label = field(t, "label").get<std::string>();
    map.users.push_back(std::move(u));
  }
  return map;
}

WeightedGraph read_edge_list(std::istream& in, const std::string& source) {
  WeightedGraph g;
  bool have_header = false;
  std::size_t declared_edges = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      if (have_header) throw ParseError(source, lineno, "duplicate problem line");
      if (!(ls >> kind >> g.V >> declared_edges) || kind != "edge") {
        throw ParseError(source, lineno, "expected \"p edge V E\"");
      }
      have_header = true;
    } else if (tag == "e") {
      if (!have_header) throw ParseError(source, lineno, "edge before problem line");
      long long i = 0, j = 0;
      if (!(ls >> i >> j)) throw ParseError(source, lineno, "expected \"e i j [w]\"");
      double w = 1.0;
      if (!(ls >> w)) {
        if (!ls.eof()) throw ParseError(source, lineno, "malformed edge weight");
        w = 1.0;
      }
      std::string rest;
      if (ls >> rest) throw ParseError(source, lineno, "trailing tokens on edge line");
      if (i < 1 || j < 1 || static_cast<std::size_t>(i) > g.V || static_cast<std::size_t>(j) > g.V) {
        throw ParseError(source, lineno, "vertex out of range");
      }
      if (i == j) throw ParseError(source, lineno, "self loop");
      auto a = static_cast<std::size_t>(std::min(i, j)) - 1;
      auto b = static_cast<std::size_t>(std::max(i, j)) - 1;
      g.edges.push_back({a, b, w});
    } else {
      throw ParseError(source, lineno, "unknown line tag \"" + tag + "\"");
    }
  }
  if (!have_header) throw ParseError(source, lineno, "missing problem line");
  if (g.edges.size() != declared_edges) {
    throw ParseError(source, lineno, "declared " + std::to_string(declared_edges) + " edges, found " +
                                         std::to_string(g.edges.size()));
  }
  return g;
}

std::string write_edge_list(const WeightedGraph& graph) {
  std::ostringstream os;
  os.precision(17);
  os << "p edge " << graph.V << " " << graph.edges.size() << "\n";
  for (const auto& e : graph.edges) os << "e " << e.i + 1 << " " << e.j + 1 << " " << e.w << "\n";
  return os.str();
}

CnfFormula read_dimacs_cnf(std::istream& in, const std::string& source) {
  CnfFormula f;
  bool have_header = false;
  std::size_t declared = 0;
  std::vector<int> pending;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      std::string kind;
      if (have_header) throw ParseError(source, lineno, "duplicate problem line");
      if (!(ls >> kind >> f.N >> declared) || kind != "cnf") throw ParseError(source, lineno, "expected \"p cnf N M\"");
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError(source, lineno, "clause before problem line");
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      int lit = 0;
      try {
        std::size_t used = 0;
        lit = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(source, lineno, "malformed literal \"" + tok + "\"");
      }
      if (lit == 0) {
        if (pending.size() != 3) {
          throw ParseError(source, lineno, "clause has " + std::to_string(pending.size()) + " literals, expected 3");
        }
        f.clauses.push_back({Literal{pending[0]}, Literal{pending[1]}, Literal{pending[2]}});
        pending.clear();
      } else {
        if (static_cast<std::size_t>(lit < 0 ? -lit : lit) > f.N) throw ParseError(source, lineno, "variable out of range");
        pending.push_back(lit);
      }
    }
  }
  if (!have_header) throw ParseError(source, lineno, "missing problem line");
  if (!pending.empty()) throw ParseError(source, lineno, "unterminated clause");
  if (f.clauses.size() != declared) {
    throw ParseError(source, lineno, "declared " + std::to_string(declared) + " clauses, found " +
                                         std::to_string(f.clauses.size()));
  }
  return f;
}

std::string write_dimacs_cnf(const CnfFormula& formula) {
  std::ostringstream os;
  os << "p cnf " << formula.N << " " << formula.M() << "\n";
  for (const auto& c : formula.clauses) os << c[0].value << " " << c[1].value << " " << c[2].value << " 0\n";
  return os.str();
}

Json parse_json(std::istream& in, const std::string& source) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source, line_of(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
}

}  // namespace cobf
