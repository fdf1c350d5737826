// Copyright 2026 The padicl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "padicl/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "padicl/dwork.hpp"
#include "padicl/gamma.hpp"
#include "padicl/json.hpp"
#include "padicl/lfunc.hpp"
#include "padicl/verify.hpp"

namespace padic::cli {

namespace {

struct Common {
  long p = 7;
  long N = 6;
  bool pretty = false;
  bool json = false;
  bool timing = false;
  long kmax = 0;
  long table_len = 0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--p", c.p, "odd prime")->capture_default_str();
  sub->add_option("--prec", c.N, "p-adic precision N")->capture_default_str();
  sub->add_flag("--json", c.json, "compact JSON output (default)");
  sub->add_flag("--pretty", c.pretty, "indented JSON output");
  sub->add_flag("--timing", c.timing, "append a metadata block with the elapsed time");
  sub->add_option("--kmax", c.kmax, "cap on the number of series terms summed");
  sub->add_option("--table-len", c.table_len, "length of the B_k table");
}

void check_common(const Common& c) {
  require_odd_prime(c.p);
  if (c.N < 1) throw UsageError("--prec must be >= 1");
  if (c.kmax < 0 || c.table_len < 0) throw UsageError("--kmax and --table-len must be positive");
}

DworkCoeffs table_for(const Common& c, std::size_t needed) {
  std::size_t K = c.table_len > 0 ? static_cast<std::size_t>(c.table_len) : needed;
  return compute_B(c.p, K);
}

void check_kmax(const Common& c, std::size_t terms) {
  if (c.kmax > 0 && terms > static_cast<std::size_t>(c.kmax))
    throw TailNotCertified("certified truncation needs " + std::to_string(terms) + " terms, above --kmax " +
                           std::to_string(c.kmax));
}

Json with_prec(Json value, long prec) {
  return Json{{"value", std::move(value)}, {"guaranteed_prec", prec}};
}

Json number_result(const PadicNumber& x) { return with_prec(to_json(x), x.prec()); }

DirichletChar parse_character(const std::string& spec) {
  if (spec.empty() || spec == "trivial") return DirichletChar::trivial();
  if (spec.rfind("kronecker:", 0) == 0) {
    std::string d = spec.substr(10);
    long D = 0;
    try {
      std::size_t used = 0;
      D = std::stol(d, &used);
      if (used != d.size()) throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError("bad discriminant in --char " + spec);
    }
    return DirichletChar::kronecker(D);
  }
  if (spec.rfind("file:", 0) == 0) {
    std::string path = spec.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open character file " + path);
    Json j;
    try {
      j = Json::parse(in);
      std::vector<ExactRat> values;
      for (const auto& v : j.at("values")) values.push_back(rat_from_json(v));
      long prec = j.contains("prec") ? j.at("prec").get<long>() : kExactPrec;
      std::string label = j.contains("label") ? j.at("label").get<std::string>() : path;
      return DirichletChar(j.at("modulus").get<long>(), std::move(values), prec, label);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("bad character file " + path + ": " + e.what());
    }
  }
  throw UsageError("--char must be trivial, kronecker:D or file:PATH");
}

struct Output {
  Json body;
  int code = kExitOk;
};

Output cmd_gamma(const Common& c, const std::string& at, std::optional<long> deriv, bool log) {
  ExactRat z = parse_rational(at);
  Json j{{"command", "gamma"}, {"p", c.p}, {"prec", c.N}, {"at", to_string(z)}};
  if (!deriv) {
    if (log) throw UsageError("--log needs --deriv S with S >= 1");
    GammaValue g = gamma_eval(reduce_rational(z, c.p, c.N), c.N);
    j["function"] = "gamma_p";
    j["value"] = to_json(g.value);
    j["guaranteed_prec"] = c.N;
    j["route"] = to_string(g.route);
    return {j};
  }
  if (*deriv < 0 || (log && *deriv < 1)) throw UsageError("--deriv must be >= 0 (>= 1 with --log)");
  const auto s = static_cast<std::size_t>(*deriv);
  const bool at0 = z == 0;
  PadicNumber v = log ? (at0 ? loggamma_deriv_at0(s, c.p, c.N) : loggamma_deriv_at(z, s, c.p, c.N))
                      : (at0 ? gamma_deriv_at0(s, c.p, c.N) : gamma_deriv_at(z, s, c.p, c.N));
  j["function"] = log ? "log_gamma_p" : "gamma_p";
  j["deriv"] = *deriv;
  j["value"] = to_json(v);
  j["guaranteed_prec"] = v.prec();
  j["route"] = at0 ? "mahler-taylor" : "local-expansion-taylor";
  return {j};
}

Output cmd_dwork_coeffs(const Common& c, long count, std::optional<long> mod_prec) {
  if (count < 1) throw UsageError("--count must be >= 1");
  auto B = compute_B(c.p, static_cast<std::size_t>(count));
  Json exact = Json::array();
  for (const auto& b : B.B()) exact.push_back(to_json(b));
  Json j{{"command", "dwork-coeffs"}, {"p", c.p}, {"count", count}, {"exact", exact}};
  if (mod_prec) {
    if (*mod_prec < 1) throw UsageError("--mod-prec must be >= 1");
    j["reduced"] = to_json_reduced(B.B(), c.p, *mod_prec);
  }
  return {j};
}

Output cmd_mahler_eval(const Common& c, const std::string& at) {
  auto B = table_for(c, default_table_length(c.p, c.N));
  auto fm = B.mahler();
  check_kmax(c, mahler_cutoff(fm.tail(), c.p, c.N));
  ExactRat x = parse_rational(at);
  MahlerValue v = mahler_eval(fm, reduce_rational(x, c.p, c.N), c.N);
  Json j{{"command", "mahler-eval"}, {"p", c.p}, {"prec", c.N}, {"at", to_string(x)}, {"function", "[f]"}};
  j["value"] = to_json(v.value);
  j["guaranteed_prec"] = v.value.prec();
  j["terms"] = v.terms;
  j["stabilized"] = v.stabilized;
  return {j};
}

Output cmd_dcoef(const Common& c, long s, long n) {
  if (s < 0 || n < 0) throw UsageError("--s and --n must be >= 0");
  const auto ss = static_cast<std::size_t>(s), nn = static_cast<std::size_t>(n);
  auto B = table_for(c, default_table_length(c.p, c.N, std::max<std::size_t>(ss, 3)) + nn);
  check_kmax(c, taylor_cutoff(B.series().tail(), ss, c.p, c.N) + nn);
  PadicNumber v = nn == 0 ? dcoef(ss, B.series(), c.p, c.N) : dcoef_xn_f(ss, nn, B, c.N);
  Json j{{"command", "dcoef"}, {"p", c.p}, {"prec", c.N}, {"s", s}, {"n", n}};
  j.update(number_result(v));
  return {j};
}

Output cmd_lp(const Common& c, long s, const std::string& route, const std::string& chi_spec) {
  if (route != "limit" && route != "gamma" && route != "both") throw UsageError("--route must be limit, gamma or both");
  DirichletChar chi = parse_character(chi_spec);
  Json j{{"command", "lp"}, {"p", c.p}, {"prec", c.N}, {"s", s}, {"character", chi.label()}};
  Json results = Json::array();
  std::vector<PadicNumber> values;
  auto emit = [&](const char* name, PadicNumber v) {
    Json r{{"route", name}};
    r.update(number_result(v));
    results.push_back(std::move(r));
    values.push_back(std::move(v));
  };
  if (route != "gamma")
    emit("limit", chi.is_trivial() ? lp_via_limit(s, c.p, c.N) : lp_character_via_limit(s, chi, c.p, c.N));
  if (route != "limit") emit("gamma", chi.is_trivial() ? lp_via_gamma(s, c.p, c.N) : lp_character(s, chi, c.p, c.N));
  j["results"] = results;
  int code = kExitOk;
  if (values.size() == 2) {
    long a = values[0].agreement(values[1]);
    j["agreement"] = a;
    j["agree"] = a >= c.N;
    if (a < c.N) code = kExitVerificationFailed;
  }
  return {j, code};
}

LpRoute parse_route(const std::string& route) {
  if (route == "limit") return LpRoute::Limit;
  if (route == "gamma") return LpRoute::Gamma;
  throw UsageError("--route must be limit or gamma");
}

Output cmd_zeta(const Common& c, long s, const std::string& route) {
  PadicNumber v = zeta_p(s, c.p, c.N, parse_route(route));
  Json j{{"command", "zeta-p"}, {"p", c.p}, {"prec", c.N}, {"s", s}, {"route", route}};
  j.update(number_result(v));
  return {j};
}

Output cmd_delta(const Common& c, long s) {
  DeltaReport d = delta(s, c.p, c.N);
  Json j{{"command", "delta"}, {"p", c.p}, {"prec", c.N}, {"s", s}};
  j["value"] = to_json(d.delta);
  j["guaranteed_prec"] = d.guaranteed_prec;
  j["dcoef_s"] = to_json(d.dcoef_s);
  j["dcoef_1"] = to_json(d.dcoef_1);
  return {j};
}

Output cmd_frobenius(const Common& c) {
  FrobeniusEntry e = frobenius_entry(c.p, c.N);
  Json j{{"command", "frobenius-entry"}, {"p", c.p}, {"prec", c.N}};
  j["via_delta"] = to_json(e.via_delta);
  j["via_lp"] = to_json(e.via_lp);
  j["via_zeta"] = to_json(e.via_zeta);
  j["delta3_valuation"] = e.delta3_valuation;
  j["agree"] = e.agree;
  j["guaranteed_prec"] = e.guaranteed_prec;
  return {j, e.agree ? kExitOk : kExitVerificationFailed};
}

Output cmd_verify(const Common& c, unsigned long seed, const std::vector<std::string>& only) {
  VerifyOptions opts{c.p, c.N, seed, only};
  VerifyReport r = verify_suite(opts);
  Json j{{"command", "verify"}};
  j.update(to_json(r, c.timing));
  return {j, r.all_pass() ? kExitOk : kExitVerificationFailed};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic special functions and identity checks", "padic"};
  app.require_subcommand(1);
  Common c;

  std::string at;
  std::optional<long> deriv;
  bool log = false;
  auto* gamma = app.add_subcommand("gamma", "Gamma_p(z) or its derivatives");
  add_common(gamma, c);
  gamma->add_option("--at", at, "point: integer or a/b")->required();
  gamma->add_option("--deriv", deriv, "derivative order S");
  gamma->add_flag("--log", log, "derivatives of log Gamma_p");

  long count = 0;
  std::optional<long> mod_prec;
  auto* dwork = app.add_subcommand("dwork-coeffs", "B_k of exp(x + x^p/p)");
  add_common(dwork, c);
  dwork->add_option("--count", count, "number of coefficients K")->required();
  dwork->add_option("--mod-prec", mod_prec, "also emit B_k mod p^N");

  auto* mahler = app.add_subcommand("mahler-eval", "[f](x) from the Mahler series of the Dwork exponential");
  add_common(mahler, c);
  mahler->add_option("--at", at, "point: integer or a/b")->required();

  long s = 0, n = 0;
  auto* dc = app.add_subcommand("dcoef", "[D^s x^n f]_0");
  add_common(dc, c);
  dc->add_option("--s", s, "order s")->required();
  dc->add_option("--n", n, "power of x")->capture_default_str();

  std::string route = "limit", chi;
  auto* lp = app.add_subcommand("lp", "L_p(s, chi omega^(1-s))");
  add_common(lp, c);
  lp->add_option("--s", s, "integer s >= 2")->required();
  lp->add_option("--route", route, "limit, gamma or both")->capture_default_str();
  lp->add_option("--char", chi, "trivial, kronecker:D or file:PATH");

  auto* zeta = app.add_subcommand("zeta-p", "zeta_p(s)");
  add_common(zeta, c);
  zeta->add_option("--s", s, "integer s >= 2")->required();
  zeta->add_option("--route", route, "limit or gamma")->capture_default_str();

  auto* del = app.add_subcommand("delta", "Delta_s = [D^s f]_0 - [D f]_0^s / s!");
  add_common(del, c);
  del->add_option("--s", s, "integer s >= 2")->required();

  auto* frob = app.add_subcommand("frobenius-entry", "(p^3 - 1)(8/25) zeta_p(3) by three routes");
  add_common(frob, c);

  unsigned long seed = 1;
  std::vector<std::string> only;
  auto* ver = app.add_subcommand("verify", "run the identity suite");
  add_common(ver, c);
  ver->add_option("--seed", seed, "random seed")->capture_default_str();
  ver->add_option("--only", only, "identity ids to run");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  auto start = std::chrono::steady_clock::now();
  Output result;
  try {
    check_common(c);
    if (*gamma) result = cmd_gamma(c, at, deriv, log);
    else if (*dwork) result = cmd_dwork_coeffs(c, count, mod_prec);
    else if (*mahler) result = cmd_mahler_eval(c, at);
    else if (*dc) result = cmd_dcoef(c, s, n);
    else if (*lp) result = cmd_lp(c, s, route, chi);
    else if (*zeta) result = cmd_zeta(c, s, route);
    else if (*del) result = cmd_delta(c, s);
    else if (*frob) result = cmd_frobenius(c);
    else result = cmd_verify(c, seed, only);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DenominatorNotUnit& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out << Json{{"error", e.what()}}.dump() << "\n";
    return kExitVerificationFailed;
  }
  if (c.timing && !result.body.contains("meta"))
    result.body["meta"] = Json{{"elapsed_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
  out << (c.pretty ? result.body.dump(2) : result.body.dump()) << "\n";
  return result.code;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace padic::cli
