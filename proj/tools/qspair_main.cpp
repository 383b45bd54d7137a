// Command-line front end; talks to the engine exclusively through the C API.
#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "qspair.h"

namespace {

using nlohmann::json;

struct CommonArgs {
  int N = 2;
  std::string a = "q^2";
  std::string b;
  std::vector<std::string> u;
  int order = 6;
  std::string out;
  std::string specialize;
  bool jsonOut = false;
  bool text = false;
};

json moduleSpec(const std::string& a) {
  if (a == "trivial") return json{{"trivial", json::object()}};
  return json{{"eval", {{"a", a}}}};
}

json baseConfig(const CommonArgs& args) {
  json cfg;
  cfg["N"] = args.N;
  cfg["order"] = args.order;
  if (!args.u.empty()) cfg["u"] = args.u;
  if (!args.specialize.empty()) cfg["specialize"] = args.specialize;
  return cfg;
}

int emit(const CommonArgs& args, qsp_status st, const char* report,
         const char* err) {
  std::string payload;
  if (report) payload = report;
  if (st == QSP_E_CONFIG) {
    std::cerr << "config error: " << (err ? err : "") << "\n";
    return 2;
  }
  if (st != QSP_OK && st != QSP_E_CHECK && payload.empty()) {
    std::cerr << "error: " << (err ? err : "") << "\n";
    return 2;
  }
  std::ostream* os = &std::cout;
  std::ofstream f;
  if (!args.out.empty()) {
    f.open(args.out);
    os = &f;
  }
  if (args.text && !payload.empty()) {
    json rep = json::parse(payload);
    for (const auto& c : rep["checks"]) {
      *os << (c["status"] == "pass" ? "[PASS] " : "[FAIL] ")
          << c["id"].get<std::string>() << "\n";
    }
    *os << "overall: " << rep["status"].get<std::string>() << "\n";
  } else {
    *os << payload << "\n";
  }
  return st == QSP_OK ? 0 : 1;
}

int runChecks(const CommonArgs& args, const json& cfg) {
  qsp_verifier* v = qsp_verifier_new();
  char* report = nullptr;
  qsp_status st = qsp_verifier_run_json(v, cfg.dump().c_str(), &report);
  int rc = emit(args, st, report, qsp_verifier_last_error(v));
  qsp_string_free(report);
  qsp_verifier_free(v);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification engine for quasi-split affine quantum "
               "symmetric pairs of type AIII"};
  app.require_subcommand(1);

  CommonArgs args;
  auto addCommon = [&](CLI::App* cmd, bool withA = true, bool withB = false) {
    cmd->add_option("--N", args.N, "rank (nodes 0..N)")->capture_default_str();
    if (withA)
      cmd->add_option("--a", args.a, "spectral parameter, e.g. q^3 or trivial")
          ->capture_default_str();
    if (withB) cmd->add_option("--b", args.b, "second spectral parameter");
    cmd->add_option("--u", args.u, "deformation parameters u_0..u_N");
    cmd->add_option("--order", args.order, "series truncation order M")
        ->capture_default_str();
    cmd->add_option("--out", args.out, "write the report to a file");
    cmd->add_option("--specialize", args.specialize,
                    "rational value of v for the numeric oracle");
    cmd->add_flag("--json", args.jsonOut, "emit raw JSON (default)");
    cmd->add_flag("--text", args.text, "emit a line-per-check summary");
  };

  std::string configPath;
  auto* cRun = app.add_subcommand("run", "run a JSON job config");
  cRun->add_option("config", configPath, "path to the config file")->required();
  cRun->add_option("--out", args.out, "write the report to a file");
  cRun->add_flag("--text", args.text, "emit a line-per-check summary");

  auto* cVerify = app.add_subcommand(
      "verify", "relation, Kolb-Letzter, dual-oracle and factorization gates");
  addCommon(cVerify);
  std::vector<std::string> verifyChecks = {"relations", "kolb", "dual-oracle",
                                           "factorization"};
  cVerify->add_option("--checks", verifyChecks,
                      "subset of: relations kolb lemmas dual-oracle "
                      "factorization coproduct spectrum qchar boundary-qchar "
                      "module-action roots dump-lw");

  auto* cQchar = app.add_subcommand("qchar", "ordinary q-character of V(a)");
  addCommon(cQchar);
  auto* cBqchar =
      app.add_subcommand("boundary-qchar", "boundary q-character of V(a)");
  addCommon(cBqchar);
  auto* cDump = app.add_subcommand("dump-lw", "dump the Lu-Wang matrices");
  addCommon(cDump);
  auto* cLemma = app.add_subcommand("lemma-suite",
                                    "symbolic and matrix lemma batteries");
  addCommon(cLemma);
  auto* cRoot = app.add_subcommand("root-suite", "root-combinatorics battery");
  addCommon(cRoot, false);
  auto* cCo = app.add_subcommand("coproduct", "coproduct congruence on V(a)(x)V(b)");
  addCommon(cCo, true, true);

  CLI11_PARSE(app, argc, argv);

  json cfg = baseConfig(args);
  if (cRun->parsed()) {
    std::ifstream f(configPath);
    if (!f) {
      std::cerr << "config error: cannot open " << configPath << "\n";
      return 2;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    qsp_verifier* v = qsp_verifier_new();
    char* report = nullptr;
    qsp_status st = qsp_verifier_run_json(v, ss.str().c_str(), &report);
    int rc = emit(args, st, report, qsp_verifier_last_error(v));
    qsp_string_free(report);
    qsp_verifier_free(v);
    return rc;
  }
  if (cVerify->parsed()) {
    cfg["modules"] = json::array({moduleSpec(args.a)});
    cfg["checks"] = verifyChecks;
    return runChecks(args, cfg);
  }
  if (cQchar->parsed()) {
    cfg["modules"] = json::array({moduleSpec(args.a)});
    cfg["checks"] = json::array({"qchar"});
    return runChecks(args, cfg);
  }
  if (cBqchar->parsed()) {
    cfg["modules"] = json::array({moduleSpec(args.a)});
    cfg["checks"] = json::array({"boundary-qchar"});
    return runChecks(args, cfg);
  }
  if (cDump->parsed()) {
    cfg["modules"] = json::array({moduleSpec(args.a)});
    cfg["checks"] = json::array({"dump-lw"});
    return runChecks(args, cfg);
  }
  if (cLemma->parsed()) {
    cfg["modules"] = json::array({moduleSpec(args.a)});
    cfg["checks"] = json::array({"lemmas"});
    return runChecks(args, cfg);
  }
  if (cRoot->parsed()) {
    cfg["checks"] = json::array({"roots"});
    return runChecks(args, cfg);
  }
  if (cCo->parsed()) {
    cfg["modules"] =
        json::array({moduleSpec(args.a), moduleSpec(args.b.empty() ? "q^-1" : args.b)});
    cfg["checks"] = json::array({"coproduct"});
    return runChecks(args, cfg);
  }
  return 2;
}
