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

#include "cli.hpp"

#include "cobf/errors.hpp"
#include "cobf/oracles.hpp"
#include "cobf/outage.hpp"
#include "cobf/reductions.hpp"
#include "cobf/siso.hpp"
#include "cobf/validate.hpp"
#include "cobf/verify.hpp"
#include "cobf/zeta.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

namespace cobf::cli {
namespace {

struct Common {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  double delta = kDefaultDelta;
  double tol = 1e-9;
  bool human = false;
  bool timing = false;
  std::string out;
};

struct Input {
  std::string source;
  std::string text;
};

// FNV-1a, enough to tell inputs apart in a report.
std::string digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("fnv1a64:{:016x}", h);
}

Input read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") {
    return {"<stdin>", std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>())};
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open " + path);
  return {path, std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>())};
}

Json read_json(const Input& input) {
  std::istringstream s(input.text);
  return parse_json(s, input.source);
}

// A report of reduce-* carries the gadget under outputs.gadget.
Json unwrap_gadget(const Json& doc) {
  if (doc.contains("outputs") && doc["outputs"].contains("gadget")) return doc["outputs"]["gadget"];
  return doc;
}

std::string gadget_kind(const Json& g) {
  if (!g.contains("kind") || !g["kind"].is_string()) throw InputError("document is not a gadget (missing \"kind\")");
  return g["kind"].get<std::string>();
}

MaxCutGadget maxcut_gadget_from_json(const Json& g) {
  MaxCutGadget gadget = reduce_maxcut(graph_from_json(g.at("graph")));
  if (g.contains("instance")) {
    const SisoInstance doc = siso_from_json(g["instance"]);
    const bool same = doc.K() == gadget.instance.K() && doc.Q == gadget.instance.Q &&
                      doc.sigma2 == gadget.instance.sigma2 && doc.rho == gadget.instance.rho &&
                      doc.P == gadget.instance.P && doc.alpha == gadget.instance.alpha;
    if (!same) throw InputError("gadget instance does not match its graph");
  }
  return gadget;
}

SatGadget sat_gadget_from_json(const Json& g) {
  SatGadget gadget = reduce_3sat(formula_from_json(g.at("formula")));
  if (g.contains("instance")) {
    const MisoInstance doc = miso_from_json(g["instance"]);
    bool same = doc.K() == gadget.instance.K() && doc.Nt == gadget.instance.Nt &&
                doc.sigma2 == gadget.instance.sigma2 && doc.rho == gadget.instance.rho &&
                doc.P == gadget.instance.P && doc.alpha == gadget.instance.alpha;
    for (std::size_t q = 0; same && q < doc.Qcov.size(); ++q) {
      same = (doc.Qcov[q] - gadget.instance.Qcov[q]).cwiseAbs().maxCoeff() <= 1e-15;
    }
    if (!same) throw InputError("gadget instance does not match its formula");
  }
  return gadget;
}

Json maxcut_gadget_json(const MaxCutGadget& g) {
  Json j;
  j["kind"] = "maxcut-gadget";
  j["graph"] = to_json(g.graph);
  j["instance"] = to_json(g.instance);
  j["usermap"] = to_json(g.users);
  j["constants"] = {{"zeta_v0", g.zeta_v0}, {"zeta_v1", g.zeta_v1}, {"c00", g.c00},
                    {"c11", g.c11},         {"c01", g.c01},         {"c10", g.c10}};
  return j;
}

Json sat_gadget_json(const SatGadget& g) {
  Json j;
  j["kind"] = "sat-gadget";
  j["formula"] = to_json(g.formula);
  j["instance"] = to_json(g.instance);
  j["usermap"] = to_json(g.users);
  j["R_bar"] = g.R_bar;
  return j;
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], fmt::format("{}[{}]", prefix, i), out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::vector<double> broadcast(const std::vector<double>& values, std::size_t K, const char* what) {
  if (values.size() == 1) return std::vector<double>(K, values.front());
  if (values.size() != K) throw InputError(fmt::format("{} needs 1 or {} values, got {}", what, K, values.size()));
  return values;
}

struct Outcome {
  Json outputs;
  std::map<std::string, std::string> inputs;
  int code = kExitOk;
};

Outcome run_eval_outage(const Common& common, const std::string& inst_path, const std::string& sol_path,
                        const std::vector<double>& rate_values, std::istream& in) {
  Outcome o;
  const Input inst_in = read_input(inst_path, in);
  const Input sol_in = read_input(sol_path, in);
  o.inputs[inst_in.source] = digest(inst_in.text);
  o.inputs[sol_in.source] = digest(sol_in.text);

  const AnyInstance any = instance_from_json(read_json(inst_in));
  const MisoInstance inst = std::holds_alternative<SisoInstance>(any) ? to_miso(std::get<SisoInstance>(any))
                                                                      : std::get<MisoInstance>(any);
  require_valid(validate(inst), inst_in.source);
  const Json sol = read_json(sol_in);
  const BeamformerSet W = sol.contains("w") ? beams_from_json(sol) : beams_from_powers(powers_from_json(sol));
  if (W.K() != inst.K()) throw InputError("solution user count differs from the instance");
  const auto rates = broadcast(rate_values, inst.K(), "--rates");

  bool all_ok = true;
  Json users = Json::array();
  for (std::size_t i = 0; i < inst.K(); ++i) {
    Json u;
    u["user"] = i + 1;
    u["R"] = rates[i];
    u["power"] = W.w[i].squaredNorm();
    bool ok = W.w[i].squaredNorm() <= inst.P[i] + kPowerSlack;
    try {
      const double lhs = outage_lhs(inst, W, rates[i], i);
      u["lhs"] = lhs;
      u["max_rate"] = max_outage_rate(inst, W, i);
      ok = ok && lhs <= 1.0;
    } catch (const UndefinedError& e) {
      u["lhs"] = nullptr;
      u["undefined"] = e.what();
      ok = false;
    }
    u["feasible"] = ok;
    if (common.samples > 0) {
      McOptions mc;
      mc.samples = common.samples;
      mc.seed = common.seed;
      const McEstimate est = mc_outage(inst, W, rates[i], i, mc);
      u["mc"] = {{"estimate", est.estimate}, {"std_error", est.std_error}, {"outages", est.outages},
                 {"samples", est.samples}, {"target", 1.0 - inst.rho[i]}};
    }
    all_ok = all_ok && ok;
    users.push_back(u);
  }
  o.outputs["users"] = users;
  o.outputs["feasible"] = all_ok;
  if (common.samples > 0) o.outputs["kernel"] = std::string(simd::isa_name(simd::detect_isa()));
  o.code = all_ok ? kExitOk : kExitFail;
  return o;
}

Outcome run_zeta(double sigma2, double rho, const std::vector<double>& terms, const Common& common) {
  Outcome o;
  ZetaContext ctx{sigma2, rho, terms};
  if (!(sigma2 > 0.0)) throw InputError("--sigma2 must be positive");
  if (!(rho > 0.0 && rho < 1.0)) throw InputError("--rho must lie in (0, 1)");
  for (double t : terms) {
    if (!(t >= 0.0)) throw InputError("interference terms must be nonnegative");
  }
  const ZetaRoot root = solve_zeta(ctx, std::min(common.tol, kZetaTolerance));
  o.outputs["zeta"] = root.zeta;
  o.outputs["log2_1p_zeta"] = std::log2(1.0 + root.zeta);
  o.outputs["log_residual"] = root.log_residual;
  o.outputs["iterations"] = root.iterations;
  o.outputs["upper_bound"] = zeta_upper_bound(ctx);
  const LinkParams link{sigma2, rho};
  if (terms.size() == 1) o.outputs["dzeta_dp"] = dzeta_v_dp(terms[0], link);
  if (terms.size() == 2) o.outputs["dzeta_dp1"] = dzeta_e_dp(terms[0], terms[1], link);
  o.outputs["sigma2"] = sigma2;
  o.outputs["rho"] = rho;
  o.outputs["interference"] = terms;
  return o;
}

SisoInstance load_siso(const std::string& path, std::istream& in, Outcome& o) {
  const Input input = read_input(path, in);
  o.inputs[input.source] = digest(input.text);
  const AnyInstance any = instance_from_json(read_json(input));
  SisoInstance inst;
  if (std::holds_alternative<SisoInstance>(any)) {
    inst = std::get<SisoInstance>(any);
  } else {
    const auto& m = std::get<MisoInstance>(any);
    if (m.Nt != 1) throw InputError("SISO solver needs Nt = 1");
    inst.Q = Eigen::MatrixXd(static_cast<Eigen::Index>(m.K()), static_cast<Eigen::Index>(m.K()));
    for (std::size_t k = 0; k < m.K(); ++k) {
      for (std::size_t i = 0; i < m.K(); ++i) {
        inst.Q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = m.cov(k, i)(0, 0).real();
      }
    }
    inst.sigma2 = m.sigma2;
    inst.rho = m.rho;
    inst.P = m.P;
    inst.alpha = m.alpha;
  }
  require_valid(validate(inst), input.source);
  return inst;
}

Outcome run_mmf(const Common& common, const std::string& path, bool trace, std::istream& in) {
  Outcome o;
  const SisoInstance inst = load_siso(path, in, o);
  const MmfSolution sol = mmf_bisection(inst, common.delta);
  o.outputs["R"] = sol.R;
  o.outputs["p"] = sol.p;
  o.outputs["upper_bound"] = mmf_upper_bound(inst);
  o.outputs["iterations"] = sol.iterations;
  o.outputs["delta"] = common.delta;
  std::vector<std::size_t> binding;
  for (auto b : sol.binding) binding.push_back(b + 1);
  o.outputs["binding"] = binding;
  std::vector<double> lhs;
  for (std::size_t i = 0; i < inst.K(); ++i) {
    lhs.push_back(sol.R > 0.0 ? outage_lhs_siso(inst, sol.p, inst.alpha[i] * sol.R, i) : inst.rho[i]);
  }
  o.outputs["lhs"] = lhs;
  o.outputs["rates"] = srm_rates_from_powers(inst, sol.p);
  if (trace) {
    Json t = Json::array();
    for (const auto& s : sol.trace) t.push_back({{"lo", s.lo}, {"hi", s.hi}, {"mid", s.mid}, {"feasible", s.feasible}});
    o.outputs["trace"] = t;
  }
  return o;
}

Outcome run_balancing(const Common& common, const std::string& path, const std::vector<double>& rate_values,
                      std::istream& in) {
  Outcome o;
  const SisoInstance inst = load_siso(path, in, o);
  const auto rates = broadcast(rate_values, inst.K(), "--rates");
  try {
    const BalancingSolution sol = outage_balancing_siso(inst, rates, common.tol);
    o.outputs["rho"] = sol.rho;
    o.outputs["p"] = sol.p;
    o.outputs["iterations"] = sol.iterations;
    o.outputs["achievable"] = true;
  } catch (const InputError& e) {
    o.outputs["achievable"] = false;
    o.outputs["reason"] = e.what();
    o.code = kExitFail;
  }
  o.outputs["rates"] = rates;
  o.outputs["tol"] = common.tol;
  return o;
}

Outcome run_reduce_maxcut(const std::string& path, std::istream& in) {
  Outcome o;
  const Input input = read_input(path, in);
  o.inputs[input.source] = digest(input.text);
  std::istringstream s(input.text);
  const MaxCutGadget g = reduce_maxcut(read_edge_list(s, input.source));
  o.outputs["gadget"] = maxcut_gadget_json(g);
  o.outputs["K"] = g.instance.K();
  return o;
}

Outcome run_reduce_3sat(const std::string& path, std::istream& in) {
  Outcome o;
  const Input input = read_input(path, in);
  o.inputs[input.source] = digest(input.text);
  std::istringstream s(input.text);
  const SatGadget g = reduce_3sat(read_dimacs_cnf(s, input.source));
  o.outputs["gadget"] = sat_gadget_json(g);
  o.outputs["K"] = g.instance.K();
  return o;
}

Outcome run_verify_certificate(const std::string& gadget_path, const std::string& cert_path, std::istream& in) {
  Outcome o;
  const Input gin = read_input(gadget_path, in);
  const Input cin = read_input(cert_path, in);
  o.inputs[gin.source] = digest(gin.text);
  o.inputs[cin.source] = digest(cin.text);
  const Json g = unwrap_gadget(read_json(gin));
  const Json cert = read_json(cin);
  const std::string kind = gadget_kind(g);

  if (kind == "sat-gadget") {
    const SatGadget gadget = sat_gadget_from_json(g);
    BeamformerSet W;
    if (cert.contains("assignment")) {
      Assignment x;
      for (const auto& v : cert["assignment"]) x.push_back(v.is_boolean() ? v.get<bool>() : v.get<int>() != 0);
      W = beamformers_from_assignment(x, gadget);
    } else {
      W = beams_from_json(cert);
    }
    if (W.K() != gadget.instance.K()) throw InputError("certificate user count differs from the gadget");
    const CertificateReport rep = check_feasibility_certificate(gadget, W);
    Json residuals = Json::array();
    for (const auto& r : rep.residuals) {
      residuals.push_back({{"user", gadget.users.users[r.user].label},
                           {"kind", std::string(constraint_kind_name(r.kind))},
                           {"value", std::isfinite(r.value) ? Json(r.value) : Json(nullptr)},
                           {"limit", r.limit},
                           {"satisfied", r.satisfied}});
    }
    o.outputs["residuals"] = residuals;
    o.outputs["feasible"] = rep.feasible;
    o.outputs["max_lhs"] = std::isfinite(rep.max_lhs) ? Json(rep.max_lhs) : Json(nullptr);
    o.outputs["max_power"] = rep.max_power;
    try {
      const Assignment x = assignment_from_beamformers(W, gadget);
      std::vector<int> bits(x.begin(), x.end());
      o.outputs["assignment"] = bits;
      o.outputs["satisfies_formula"] = satisfies(gadget.formula, x);
    } catch (const CertificateError& e) {
      o.outputs["assignment"] = nullptr;
      o.outputs["certificate_error"] = e.what();
    }
    o.code = rep.feasible ? kExitOk : kExitFail;
  } else if (kind == "maxcut-gadget") {
    const MaxCutGadget gadget = maxcut_gadget_from_json(g);
    std::vector<double> p;
    if (cert.contains("cut")) {
      VertexSet S(gadget.graph.V, false);
      for (const auto& v : cert["cut"]) {
        const auto i = v.get<std::size_t>();
        if (i < 1 || i > gadget.graph.V) throw InputError("cut vertex out of range");
        S[i - 1] = true;
      }
      p = powers_from_cut(S, gadget);
    } else {
      p = powers_from_json(cert);
    }
    if (p.size() != gadget.instance.K()) throw InputError("certificate user count differs from the gadget");
    o.outputs["objective"] = weighted_sum_rate(gadget.instance, p);
    try {
      const VertexSet S = cut_from_powers(p, gadget);
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < S.size(); ++i) {
        if (S[i]) members.push_back(i + 1);
      }
      o.outputs["cut"] = members;
      o.outputs["cut_weight"] = cut_weight(gadget.graph, S);
      o.outputs["identity_value"] = srm_value_identity(gadget.graph, S, gadget);
      o.outputs["certificate"] = true;
    } catch (const CertificateError& e) {
      o.outputs["certificate"] = false;
      o.outputs["certificate_error"] = e.what();
      o.code = kExitFail;
    }
  } else {
    throw InputError("unknown gadget kind \"" + kind + "\"");
  }
  o.outputs["kind"] = kind;
  return o;
}

Outcome run_verify(const Common& common, const std::string& mode, const std::string& path, bool random,
                   std::size_t cases, double step, std::istream& in) {
  Outcome o;
  VerifyOptions opt;
  opt.seed = common.seed;
  opt.cases = cases;
  opt.step = step;
  opt.delta = common.delta == kDefaultDelta ? 1e-5 : common.delta;
  Json r;
  if (mode == "lemma2") r = verify_lemma2(opt);
  else if (mode == "lemma3") r = verify_lemma3(opt);
  else if (mode == "lemma5") r = verify_lemma5(opt);
  else if (mode == "algorithm1") r = verify_algorithm1(opt);
  else if (mode == "maxcut-equiv" || mode == "sat-equiv") {
    if (random) {
      r = mode == "maxcut-equiv" ? verify_maxcut_random(opt) : verify_sat_random(opt);
    } else {
      const Input input = read_input(path, in);
      o.inputs[input.source] = digest(input.text);
      const Json g = unwrap_gadget(read_json(input));
      const std::string kind = gadget_kind(g);
      if (mode == "maxcut-equiv") {
        if (kind != "maxcut-gadget") throw InputError("maxcut-equiv needs a maxcut-gadget document");
        r = verify_maxcut_equiv(maxcut_gadget_from_json(g));
      } else {
        if (kind != "sat-gadget") throw InputError("sat-equiv needs a sat-gadget document");
        r = verify_sat_equiv(sat_gadget_from_json(g));
      }
    }
  } else {
    throw InputError("unknown verify mode \"" + mode + "\"");
  }
  o.code = r["pass"].get<bool>() ? kExitOk : kExitFail;
  o.outputs = std::move(r);
  return o;
}

Outcome run_paper_constants() {
  Outcome o;
  Json rows = Json::array();
  bool all = true;
  for (const auto& c : paper_constants()) {
    const double delta = c.computed - c.quoted;
    const bool ok = std::abs(delta) <= 5e-4;
    all = all && ok;
    rows.push_back({{"name", c.name}, {"quoted", c.quoted}, {"computed", c.computed}, {"delta", delta}, {"pass", ok}});
  }
  o.outputs["constants"] = rows;
  o.outputs["tolerance"] = 5e-4;
  o.outputs["pass"] = all;
  o.code = all ? kExitOk : kExitFail;
  return o;
}

}  // namespace

std::vector<PaperConstant> paper_constants() {
  const LinkParams link{0.1, 0.95};
  const double a0 = std::log2(1.0 + zeta_v(0.0, link));
  const double a1 = std::log2(1.0 + zeta_v(1.0, link));
  const double c00 = std::log2(1.0 + 0.7 * zeta_e(0.0, 0.0, link));
  const double log_inv_rho = std::log(1.0 / link.rho);
  const double zbar = zeta_upper_bound(link.sigma2, link.rho, 1.0);
  const double bound_a0 = log_inv_rho * (1.0 + zbar);
  const double bound_aj =
      log_inv_rho / link.sigma2 * ((1.0 + zbar) * (1.0 + link.sigma2 * (1.0 + zbar)) + zbar);
  return {
      {"log2(1+zeta_v(0))", 0.5973, a0},
      {"log2(1+zeta_v(1))", 0.0671, a1},
      {"log2(1+0.7*zeta_e(0,0))", 0.4426, c00},
      {"log2(1+zeta_v(0))-2*log2(1+zeta_v(1))", 0.4631, a0 - 2.0 * a1},
      {"ln(1/rho)*(1+zeta_bar(1))", 0.0537, bound_a0},
      {"edge-term bound", 0.6181, bound_aj},
  };
}

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Outage-constrained coordinated beamforming toolkit", "cobf"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--seed", common.seed, "Seed for every random draw");
  app.add_option("--samples", common.samples, "Monte-Carlo samples (eval-outage)");
  app.add_option("--delta", common.delta, "Bisection accuracy in bits/sec/Hz");
  app.add_option("--tol", common.tol, "Solver tolerance");
  app.add_flag("--human", common.human, "Print key: value lines instead of JSON");
  app.add_flag("--timing", common.timing, "Include wall time in the report");
  app.add_option("--out", common.out, "Write the report to a file");

  std::string inst_path;
  std::string sol_path;
  std::string gadget_path;
  std::vector<double> rates;
  double sigma2 = 0.1;
  double rho = 0.95;
  std::vector<double> terms;
  bool trace = false;
  std::string mode;
  bool random = false;
  std::size_t cases = 0;
  double step = 0.0;

  auto* eval = app.add_subcommand("eval-outage", "Outage constraint values (and MC estimates) for a solution");
  eval->add_option("instance", inst_path, "Instance JSON")->required();
  eval->add_option("solution", sol_path, "Solution JSON with \"w\" or \"p\"")->required();
  eval->add_option("--rates", rates, "Rate per user (one value applies to all)")->required()->delimiter(',');

  auto* zeta = app.add_subcommand("zeta", "Solve the implicit interference function");
  zeta->add_option("--sigma2", sigma2, "Noise power");
  zeta->add_option("--rho", rho, "Satisfaction probability");
  zeta->add_option("--t", terms, "Interference terms Q_ki p_k")->delimiter(',');

  auto* mmf = app.add_subcommand("solve-mmf-siso", "Max-min fair rate of a SISO instance by bisection");
  mmf->add_option("instance", inst_path, "Instance JSON (- for stdin)");
  mmf->add_flag("--trace", trace, "Include the bisection trace");

  auto* bal = app.add_subcommand("solve-balancing", "Largest common satisfaction probability for rate targets");
  bal->add_option("instance", inst_path, "Instance JSON (- for stdin)");
  bal->add_option("--rates", rates, "Rate targets (one value applies to all)")->required()->delimiter(',');

  auto* rmc = app.add_subcommand("reduce-maxcut", "Build the sum-rate gadget of a weighted graph");
  rmc->add_option("graph", inst_path, "Edge-list file (- for stdin)");

  auto* rsat = app.add_subcommand("reduce-3sat", "Build the max-min feasibility gadget of a 3-CNF formula");
  rsat->add_option("cnf", inst_path, "DIMACS CNF file (- for stdin)");

  auto* vcert = app.add_subcommand("verify-certificate", "Check a certificate against a gadget");
  vcert->add_option("gadget", gadget_path, "Gadget JSON")->required();
  vcert->add_option("certificate", sol_path, "Certificate JSON (- for stdin)")->required();

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("mode", mode, "lemma2 | lemma3 | lemma5 | maxcut-equiv | sat-equiv | algorithm1")
      ->required()
      ->check(CLI::IsMember({"lemma2", "lemma3", "lemma5", "maxcut-equiv", "sat-equiv", "algorithm1"}));
  verify->add_option("input", inst_path, "Gadget JSON for the equivalence modes (- for stdin)");
  verify->add_flag("--random", random, "Equivalence modes: run the randomized suite instead");
  verify->add_option("--cases", cases, "Number of random cases");
  verify->add_option("--step", step, "Grid step");

  auto* consts = app.add_subcommand("paper-constants", "Recompute the gadget constants");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  std::string name;
  try {
    if (*eval) name = "eval-outage", outcome = run_eval_outage(common, inst_path, sol_path, rates, in);
    else if (*zeta) name = "zeta", outcome = run_zeta(sigma2, rho, terms, common);
    else if (*mmf) name = "solve-mmf-siso", outcome = run_mmf(common, inst_path, trace, in);
    else if (*bal) name = "solve-balancing", outcome = run_balancing(common, inst_path, rates, in);
    else if (*rmc) name = "reduce-maxcut", outcome = run_reduce_maxcut(inst_path, in);
    else if (*rsat) name = "reduce-3sat", outcome = run_reduce_3sat(inst_path, in);
    else if (*vcert) name = "verify-certificate", outcome = run_verify_certificate(gadget_path, sol_path, in);
    else if (*verify) name = "verify", outcome = run_verify(common, mode, inst_path, random, cases, step, in);
    else if (*consts) name = "paper-constants", outcome = run_paper_constants();
  } catch (const ParseError& e) {
    err << "error: " << e.source() << ":" << e.line() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: malformed document: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  Json report;
  report["subcommand"] = name;
  report["seed"] = common.seed;
  report["inputs"] = outcome.inputs;
  report["outputs"] = outcome.outputs;
  report["exit_code"] = outcome.code;
  if (common.timing) {
    report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  std::ostringstream text;
  if (common.human) flatten(report, "", text);
  else text << report.dump(2) << '\n';
  if (common.out.empty()) {
    out << text.str();
  } else {
    std::ofstream file(common.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << common.out << '\n';
      return kExitUsage;
    }
    file << text.str();
  }
  return outcome.code;
}

}  // namespace cobf::cli
