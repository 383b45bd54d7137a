#include "qsp/run.hpp"

#include <json.hpp>
#include <random>
#include <sstream>

#include "qsp/lusztig.hpp"

namespace qsp {

using nlohmann::json;

namespace {
Scalar parseScalarOrThrow(const std::string& s, const std::string& where) {
  auto v = Scalar::parse(s);
  if (!v) throw ConfigError(where + ": cannot parse scalar '" + s + "'");
  return *v;
}

JobConfig::ModuleSpec parseModule(const json& j, const std::string& where) {
  JobConfig::ModuleSpec m;
  if (j.contains("eval")) {
    m.kind = JobConfig::ModuleSpec::Eval;
    m.a = parseScalarOrThrow(j["eval"].value("a", "q^2"), where + ".eval.a");
  } else if (j.contains("trivial")) {
    m.kind = JobConfig::ModuleSpec::Trivial;
  } else if (j.contains("tensor")) {
    m.kind = JobConfig::ModuleSpec::Tensor;
    const auto& arr = j["tensor"];
    if (!arr.is_array() || arr.size() != 2)
      throw ConfigError(where + ".tensor: expected two factors");
    m.factors.push_back(parseModule(arr[0], where + ".tensor[0]"));
    m.factors.push_back(parseModule(arr[1], where + ".tensor[1]"));
  } else {
    throw ConfigError(where + ": unknown module spec");
  }
  return m;
}
}  // namespace

JobConfig JobConfig::fromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  JobConfig cfg;
  if (!j.contains("N") || !j["N"].is_number_integer())
    throw ConfigError("config.N: required integer");
  cfg.N = j["N"].get<int>();
  if (cfg.N < 1) throw ConfigError("config.N: must be >= 1");
  SatakeDiagram d(cfg.N);
  cfg.u.assign(cfg.N + 1, Scalar(1));
  if (j.contains("u")) {
    const auto& arr = j["u"];
    if (!arr.is_array() || static_cast<int>(arr.size()) != cfg.N + 1)
      throw ConfigError("config.u: expected N+1 scalar strings");
    for (int i = 0; i <= cfg.N; ++i)
      cfg.u[i] = parseScalarOrThrow(arr[i].get<std::string>(), "config.u");
    for (int i = 0; i <= cfg.N; ++i)
      if (cfg.u[i] != cfg.u[d.tau(i)])
        throw ConfigError("config.u: u must be tau-symmetric");
  }
  cfg.order = j.value("order", 6);
  if (cfg.order < 1 || cfg.order > 16)
    throw ConfigError("config.order: expected 1 <= order <= 16");
  if (j.contains("modules"))
    for (size_t k = 0; k < j["modules"].size(); ++k)
      cfg.modules.push_back(
          parseModule(j["modules"][k], "config.modules[" + std::to_string(k) + "]"));
  if (j.contains("checks"))
    for (const auto& c : j["checks"]) cfg.checks.push_back(c.get<std::string>());
  if (j.contains("specialize")) {
    std::string s = j["specialize"].get<std::string>();
    try {
      cfg.specialize = mpq_class(s);
      cfg.specialize->canonicalize();
    } catch (const std::exception&) {
      throw ConfigError("config.specialize: expected a rational like \"3\"");
    }
    if (*cfg.specialize == 0 || *cfg.specialize == 1 || *cfg.specialize == -1)
      throw ConfigError("config.specialize: v must avoid {0, 1, -1}");
  }
  return cfg;
}

RepPtr buildModule(const JobConfig& cfg, const JobConfig::ModuleSpec& spec) {
  Params par = Params::withU(cfg.N, cfg.u);
  switch (spec.kind) {
    case JobConfig::ModuleSpec::Eval:
      return evalModule(par, spec.a);
    case JobConfig::ModuleSpec::Trivial:
      return trivialModule(par);
    case JobConfig::ModuleSpec::Tensor: {
      RepPtr l = buildModule(cfg, spec.factors[0]);
      RepPtr r = buildModule(cfg, spec.factors[1]);
      return tensor(l, r);
    }
  }
  throw ConfigError("module: bad kind");
}

std::string RunReport::json() const {
  std::ostringstream os;
  os << "{\"status\":\"" << (pass ? "pass" : "fail") << "\",\"checks\":[";
  for (size_t k = 0; k < checks.size(); ++k) {
    os << (k ? "," : "") << "{\"id\":\"" << checks[k].id << "\",\"status\":\""
       << (checks[k].pass ? "pass" : "fail") << "\"";
    if (!checks[k].detail.empty()) {
      os << ",\"detail\":";
      if (!checks[k].detail.empty() &&
          (checks[k].detail[0] == '{' || checks[k].detail[0] == '['))
        os << checks[k].detail;
      else
        os << nlohmann::json(checks[k].detail).dump();
    }
    os << "}";
  }
  os << "]}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Root combinatorics suite.

std::vector<CheckResult> rootSuite(int N) {
  std::vector<CheckResult> out;
  SatakeDiagram d(N);
  int n = d.n();
  // Fundamental-weight words: reduced and acting as the right translation
  // (both are gated inside fundamentalWeightWord).
  for (int i = 1; i <= n; ++i) {
    CheckResult c{"roots/fundamental-word N=" + std::to_string(N) +
                      " i=" + std::to_string(i),
                  true, ""};
    try {
      FundamentalWords fw = fundamentalWeightWord(d, i);
      long inv = inversionCount(d, fw.varpiPrime);
      if (inv != static_cast<long>(expandWord(d, fw.varpiPrime).size())) {
        c.pass = false;
        c.detail = "varpi' expression not reduced";
      }
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = e.what();
    }
    out.push_back(c);
  }
  // Relative reflections square to the identity on the root lattice.
  {
    CheckResult c{"roots/involutions N=" + std::to_string(N), true, ""};
    for (int i = 0; i <= n && c.pass; ++i) {
      RelWeylWord w;
      w.letters = {i, i};
      for (int j = 0; j <= N && c.pass; ++j) {
        RootVector b = RootVector::simple(N + 1, j);
        if (!(weylAct(d, w, b) == b)) {
          c.pass = false;
          c.detail = "r_" + std::to_string(i) + "^2 != id";
        }
      }
    }
    out.push_back(c);
  }
  // Braid relations of the relative diagram, as root-lattice actions.
  if (N >= 3) {
    CheckResult c{"roots/braid-relations N=" + std::to_string(N), true, ""};
    auto act = [&](const std::vector<int>& letters, const RootVector& b) {
      RelWeylWord w;
      w.letters = letters;
      return weylAct(d, w, b);
    };
    for (int i = 0; i <= n && c.pass; ++i)
      for (int j = i + 1; j <= n && c.pass; ++j) {
        int m;
        if (j - i >= 2)
          m = 2;
        else if (i == 0 || j == n)
          m = 4;  // the doubled ends of C_n^(1) / A_2n^(2)
        else
          m = 3;
        std::vector<int> lhs, rhs;
        for (int k = 0; k < m; ++k) {
          lhs.push_back(k % 2 ? j : i);
          rhs.push_back(k % 2 ? i : j);
        }
        for (int t = 0; t <= N && c.pass; ++t) {
          RootVector b = RootVector::simple(N + 1, t);
          if (!(act(lhs, b) == act(rhs, b))) {
            c.pass = false;
            c.detail = "braid relation failed at (" + std::to_string(i) + "," +
                       std::to_string(j) + ")";
          }
        }
      }
    out.push_back(c);
  }
  // zeta_i alpha~_k = alpha~_{k+i} (and primed), indices mod n.
  if (n >= 2) {
    CheckResult c{"roots/zeta-action N=" + std::to_string(N), true, ""};
    int imax = d.odd() ? n - 1 : n;
    for (int i = 1; i <= imax && c.pass; ++i) {
      RelWeylWord z = zetaWord(d, i);
      for (int k = 1; k <= n && c.pass; ++k) {
        RootVector lhs = weylAct(d, z, alphaTilde(d, k % n));
        if (!(lhs == alphaTilde(d, (k + i) % n))) {
          c.pass = false;
          c.detail = "zeta_" + std::to_string(i) + " alpha~_" + std::to_string(k);
        }
        RootVector lhsP = weylAct(d, z, alphaTildePrime(d, k % n));
        if (!(lhsP == alphaTildePrime(d, (k + i) % n))) {
          c.pass = false;
          c.detail = "zeta_" + std::to_string(i) + " alpha~'_" + std::to_string(k);
        }
      }
    }
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic lemma suite (partially commutative free algebra).

std::vector<CheckResult> symbolicLemmaSuite() {
  std::vector<CheckResult> out;
  auto ys = [](int lo, int hi) {
    std::vector<NCPoly> v;
    for (int k = lo; k <= hi; ++k) v.push_back(NCPoly::atom(Atom::Y(k)));
    return v;
  };
  {
    CheckResult c{"lemmas/P-equals-P'", true, ""};
    for (int k = 3; k <= 6 && c.pass; ++k) {
      CommutationSpec comm = CommutationSpec::almostCommuting(1, k);
      if (!pcEqual(iterP(ys(1, k)), iterPprime(ys(1, k)), comm)) {
        c.pass = false;
        c.detail = "k=" + std::to_string(k);
      }
    }
    out.push_back(c);
  }
  {
    CheckResult c{"lemmas/exchange", true, ""};
    for (int k = 3; k <= 6 && c.pass; ++k)
      for (int m = 1; m < k && c.pass; ++m) {
        CommutationSpec comm;
        comm.declare(Atom::Y(m), Atom::Y(m + 1));
        auto lhs = ys(1, k);
        auto rhs = lhs;
        std::swap(rhs[m - 1], rhs[m]);
        if (!pcEqual(iterP(lhs), iterP(rhs), comm)) {
          c.pass = false;
          c.detail = "k=" + std::to_string(k) + " m=" + std::to_string(m);
        }
      }
    out.push_back(c);
  }
  {
    CheckResult c{"lemmas/telescoping", true, ""};
    for (int k = 2; k <= 6 && c.pass; ++k)
      for (int l = 1; l < k && c.pass; ++l) {
        auto left = ys(1, l);
        left.push_back(iterP(ys(l + 1, k)));
        if (!(iterP(ys(1, k)) == iterP(left))) {
          c.pass = false;
          c.detail = "k=" + std::to_string(k) + " l=" + std::to_string(l);
        }
      }
    out.push_back(c);
  }
  {
    // Foata-style confluence: the canonical form is idempotent and invariant
    // under allowed adjacent swaps; fuzz with a fixed seed.
    CheckResult c{"lemmas/pc-canonical-confluence", true, ""};
    std::mt19937 rng(7041ul);
    CommutationSpec comm = CommutationSpec::almostCommuting(1, 5);
    std::uniform_int_distribution<int> letter(1, 5), len(0, 10);
    for (int trial = 0; trial < 200 && c.pass; ++trial) {
      Word w;
      int L = len(rng);
      for (int t = 0; t < L; ++t) w.push_back(Atom::Y(letter(rng)));
      Word cw = pcCanonicalWord(w, comm);
      if (pcCanonicalWord(cw, comm) != cw) {
        c.pass = false;
        c.detail = "not idempotent";
        break;
      }
      // random allowed swaps
      Word sw = w;
      for (int t = 0; t + 1 < static_cast<int>(sw.size()); ++t) {
        if (comm.commute(sw[t], sw[t + 1]) && (rng() & 1))
          std::swap(sw[t], sw[t + 1]);
      }
      if (pcCanonicalWord(sw, comm) != cw) {
        c.pass = false;
        c.detail = "not swap-invariant";
      }
    }
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix lemma suite on a given coideal representation.

std::vector<CheckResult> matrixLemmaSuite(CoidealRep& cr) {
  std::vector<CheckResult> out;
  const Rep& V = cr.rep();
  const SatakeDiagram& d = V.d;
  int N = d.N(), n = d.n();
  auto img = [&](const Atom& a) { return atomImage(V, a); };
  Scalar q = Scalar::qpow(1);
  auto tE = [&](int i) {
    return NCPoly::word({Atom::E(d.tau(i)), Atom::K(KFam::KB, i)});
  };
  if (N >= 2) {
    CheckResult c{"lemmas/A1-FE-vanishing N=" + std::to_string(N), true, ""};
    for (int i = 0; i <= N && c.pass; ++i)
      for (int j = 0; j <= N && c.pass; ++j) {
        if (d.a(j, i) != -1 || d.tau(i) == j) continue;
        NCPoly p = qbracket(NCPoly::atom(Atom::F(j)), tE(i), q);
        if (!evalNCPolyMat(p, V.dim, img).isZero()) {
          c.pass = false;
          c.detail = "i=" + std::to_string(i) + " j=" + std::to_string(j);
        }
      }
    out.push_back(c);
  }
  if (N >= 2) {
    // T_j T_i (B_j) composition formulas (both rank-one shapes).
    CheckResult c{"lemmas/A2-A5-TjTiBj N=" + std::to_string(N), true, ""};
    RelativeBraid br(d);
    for (int i = 0; i <= n && c.pass; ++i)
      for (int j = 0; j <= n && c.pass; ++j) {
        if (i == j || d.a(i, j) != -1) continue;
        Mat lhs = evalNCPolyMat(
            br.applyGen(j, br.applyGen(i, NCPoly::atom(Atom::B(j)))), V.dim, img);
        std::optional<NCPoly> rhs;
        if (d.tau(j) == j && d.tau(i) != i && d.aTau(i) == 0) {
          rhs = boldP(NCPoly::atom(Atom::B(i)), NCPoly::atom(Atom::B(d.tau(i))),
                      NCPoly::atom(Atom::B(j)), {i});
        } else if (d.tau(j) != j && d.tau(i) == i) {
          rhs = qbracket(NCPoly::atom(Atom::B(i)),
                         NCPoly::atom(Atom::B(d.tau(j))), q);
        } else if (d.tau(j) != j && d.aTau(j) == 0 && d.aTau(i) == -1) {
          rhs = boldP(NCPoly::atom(Atom::B(i)), NCPoly::atom(Atom::B(d.tau(i))),
                      NCPoly::atom(Atom::B(d.tau(j))), {i});
        }
        if (!rhs) continue;
        if (lhs != evalNCPolyMat(*rhs, V.dim, img)) {
          c.pass = false;
          c.detail = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
    out.push_back(c);
  }
  if (d.odd() && N >= 3) {
    CheckResult c{"lemmas/A3-PBBE N=" + std::to_string(N), true, ""};
    NCPoly lhs = boldP(NCPoly::atom(Atom::B(2 * n - 1)), NCPoly::atom(Atom::B(1)),
                       tE(0), {2 * n - 1});
    NCPoly rhs =
        qbracket(NCPoly::atom(Atom::E(2 * n - 1)),
                 qbracket(NCPoly::atom(Atom::E(1)), NCPoly::atom(Atom::E(0)), q),
                 q) *
        NCPoly::word({Atom::K(KFam::KB, 0), Atom::K(KFam::KB, 1),
                      Atom::K(KFam::KB, 2 * n - 1)});
    if (evalNCPolyMat(lhs - rhs, V.dim, img).isZero() == false) {
      c.pass = false;
    }
    out.push_back(c);
  }
  if (d.odd() && n >= 3) {
    CheckResult c{"lemmas/A4-P4-vanishing N=" + std::to_string(N), true, ""};
    std::vector<NCPoly> args = {NCPoly::atom(Atom::F(n - 1)), tE(n), tE(n + 1),
                                tE(n + 2)};
    if (!evalNCPolyMat(iterP(args), V.dim, img).isZero()) c.pass = false;
    out.push_back(c);
  }
  {
    // The braid images respect the K-B commutation relations.
    CheckResult c{"lemmas/braid-respects-relations N=" + std::to_string(N), true,
                  ""};
    RelativeBraid br(d);
    for (int g : d.orbitReps()) {
      if (N == 1) break;
      for (int jj = 0; jj <= N && c.pass; ++jj)
        for (int ll = 0; ll <= N && c.pass; ++ll) {
          int e = -d.a(jj, ll) + d.a(d.tau(jj), ll);
          NCPoly rel =
              NCPoly::atom(Atom::K(KFam::KK, jj)) * NCPoly::atom(Atom::B(ll)) -
              NCPoly::atom(Atom::B(ll)) * NCPoly::atom(Atom::K(KFam::KK, jj)) *
                  Scalar::qpow(e);
          if (!evalNCPolyMat(br.applyGen(g, rel), V.dim, img).isZero()) {
            c.pass = false;
            c.detail = "generator " + std::to_string(g) + " on KK_" +
                       std::to_string(jj) + " B_" + std::to_string(ll);
          }
        }
    }
    out.push_back(c);
  }
  {
    CheckResult c{"lemmas/braid-compatibility N=" + std::to_string(N), true, ""};
    for (int i = 1; i <= N && c.pass; ++i) {
      TheoremReport r = checkBraidCompatibility(cr, i);
      if (!r.pass) {
        c.pass = false;
        c.detail = r.json();
      }
    }
    out.push_back(c);
  }
  return out;
}

std::vector<CheckResult> dualOracleSuite(CoidealRep& cr) {
  std::vector<CheckResult> out;
  const Rep& V = cr.rep();
  int N = V.d.N();
  for (int i = 1; i <= N; ++i) {
    CheckResult c{"dual-oracle N=" + std::to_string(N) + " i=" + std::to_string(i),
                  true, ""};
    int rmax = (N == 1) ? 0 : 2;
    for (int r = -1; r <= rmax && c.pass; ++r) {
      try {
        if (cr.A(i, r) != cr.oracleA(i, r)) {
          c.pass = false;
          c.detail = "r=" + std::to_string(r);
        }
      } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string("r=") + std::to_string(r) + ": " + e.what();
      }
    }
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {
std::string lweightDataJson(const LWeightData& data) {
  std::ostringstream os;
  os << "[";
  for (size_t k = 0; k < data.size(); ++k) {
    os << (k ? "," : "") << "{\"mult\":" << data[k].mult << ",\"gamma\":[";
    for (size_t i = 0; i < data[k].gamma.size(); ++i) {
      os << (i ? "," : "") << "[";
      for (int m = 0; m <= data[k].gamma[i].order(); ++m)
        os << (m ? "," : "") << "\"" << data[k].gamma[i][m].str() << "\"";
      os << "]";
    }
    os << "]}";
  }
  os << "]";
  return os.str();
}

std::string moduleLabel(const JobConfig::ModuleSpec& spec) {
  switch (spec.kind) {
    case JobConfig::ModuleSpec::Eval:
      return "V(" + spec.a.str() + ")";
    case JobConfig::ModuleSpec::Trivial:
      return "triv";
    case JobConfig::ModuleSpec::Tensor:
      return moduleLabel(spec.factors[0]) + "(x)" + moduleLabel(spec.factors[1]);
  }
  return "?";
}
}  // namespace

RunReport runConfig(const JobConfig& cfg) {
  RunReport out;
  auto add = [&](CheckResult c) {
    out.pass = out.pass && c.pass;
    out.checks.push_back(std::move(c));
  };
  auto guarded = [&](const std::string& id, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add({id, false, std::string(e.what())});
    }
  };
  for (const auto& check : cfg.checks) {
    if (check == "roots") {
      for (auto& c : rootSuite(cfg.N)) add(std::move(c));
    } else if (check == "lemmas") {
      for (auto& c : symbolicLemmaSuite()) add(std::move(c));
      if (!cfg.modules.empty())
        guarded("lemmas/matrix", [&] {
          RepPtr V = buildModule(cfg, cfg.modules[0]);
          CoidealRep cr(V, std::min(cfg.order, 3));
          for (auto& c : matrixLemmaSuite(cr)) add(std::move(c));
        });
    } else if (check == "relations") {
      for (size_t k = 0; k < cfg.modules.size(); ++k) {
        std::string id = "relations/" + moduleLabel(cfg.modules[k]);
        guarded(id, [&] {
          RepPtr V = buildModule(cfg, cfg.modules[k]);
          RelationReport r = verifyRelations(*V);
          add({id, r.pass, r.json()});
        });
      }
    } else if (check == "kolb") {
      for (size_t k = 0; k < cfg.modules.size(); ++k) {
        std::string id = "kolb/" + moduleLabel(cfg.modules[k]);
        guarded(id, [&] {
          RepPtr V = buildModule(cfg, cfg.modules[k]);
          CoidealRep cr(V, 1, {.kolbGate = false});
          RelationReport r = verifyKolb(cr);
          add({id, r.pass, r.json()});
        });
      }
    } else if (check == "dual-oracle") {
      guarded("dual-oracle", [&] {
        if (cfg.modules.empty()) throw ConfigError("dual-oracle: need a module");
        RepPtr V = buildModule(cfg, cfg.modules[0]);
        CoidealRep cr(V, std::max(cfg.order, 3));
        for (auto& c : dualOracleSuite(cr)) add(std::move(c));
      });
    } else if (check == "factorization") {
      for (size_t k = 0; k < cfg.modules.size(); ++k) {
        std::string base = "factorization/" + moduleLabel(cfg.modules[k]);
        guarded(base, [&] {
          RepPtr V = buildModule(cfg, cfg.modules[k]);
          CoidealRep cr(V, cfg.order);
          for (int i = 1; i <= cfg.N; ++i) {
            TheoremReport r = checkFactorization(cr, i, cfg.order);
            add({base + " i=" + std::to_string(i), r.pass, r.json()});
          }
        });
      }
    } else if (check == "coproduct") {
      guarded("coproduct", [&] {
        if (cfg.modules.size() < 2)
          throw ConfigError("coproduct: need two modules");
        RepPtr V = buildModule(cfg, cfg.modules[0]);
        RepPtr W = buildModule(cfg, cfg.modules[1]);
        for (int i = 1; i <= cfg.N; ++i) {
          TheoremReport r = checkCoproduct(V, W, i, cfg.order);
          add({"coproduct i=" + std::to_string(i), r.pass, r.json()});
        }
      });
    } else if (check == "spectrum") {
      guarded("spectrum", [&] {
        if (cfg.modules.empty()) throw ConfigError("spectrum: need a module");
        RepPtr V = buildModule(cfg, cfg.modules[0]);
        CoidealRep cr(V, cfg.order);
        LWeightData data = boundaryQChar(cr, cfg.order);
        add({"spectrum/verify " + moduleLabel(cfg.modules[0]), true,
             lweightDataJson(data)});
        mpq_class v0 = cfg.specialize.value_or(mpq_class(3));
        for (int i = 1; i <= cfg.N; ++i) {
          std::string why;
          bool ok = specializationOracle(cr, i, data, cfg.order, v0, &why);
          add({"spectrum/specialize i=" + std::to_string(i), ok, why});
        }
      });
    } else if (check == "qchar") {
      guarded("qchar", [&] {
        if (cfg.modules.empty()) throw ConfigError("qchar: need a module");
        RepPtr V = buildModule(cfg, cfg.modules[0]);
        LoopData L(V, cfg.order);
        add({"qchar/" + moduleLabel(cfg.modules[0]), true, qcharJson(qchar(L))});
      });
    } else if (check == "boundary-qchar") {
      guarded("boundary-qchar", [&] {
        if (cfg.modules.empty())
          throw ConfigError("boundary-qchar: need a module");
        RepPtr V = buildModule(cfg, cfg.modules[0]);
        CoidealRep cr(V, cfg.order);
        add({"boundary-qchar/" + moduleLabel(cfg.modules[0]), true,
             lweightDataJson(boundaryQChar(cr, cfg.order))});
      });
    } else if (check == "module-action") {
      guarded("module-action", [&] {
        if (cfg.modules.size() < 2)
          throw ConfigError("module-action: need two modules");
        RepPtr V = buildModule(cfg, cfg.modules[0]);
        RepPtr W = buildModule(cfg, cfg.modules[1]);
        TheoremReport r = moduleActionCheck(V, W, cfg.order);
        add({"module-action", r.pass, r.json()});
      });
    } else if (check == "dump-lw") {
      guarded("dump-lw", [&] {
        if (cfg.modules.empty()) throw ConfigError("dump-lw: need a module");
        RepPtr V = buildModule(cfg, cfg.modules[0]);
        CoidealRep cr(V, cfg.order);
        add({"dump-lw/" + moduleLabel(cfg.modules[0]), true, cr.lwDump()});
      });
    } else {
      throw ConfigError("config.checks: unknown check '" + check + "'");
    }
  }
  return out;
}

}  // namespace qsp
