#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsp/charlab.hpp"

namespace qsp {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One verification job: a diagram size, parameters, module list, order and
// a set of checks. Parsed from JSON (see README for the schema).
struct JobConfig {
  int N = 1;
  std::vector<Scalar> u;
  struct ModuleSpec {
    enum Kind { Eval, Trivial, Tensor } kind = Eval;
    Scalar a;
    std::vector<ModuleSpec> factors;
  };
  std::vector<ModuleSpec> modules;
  int order = 6;
  std::vector<std::string> checks;
  std::optional<mpq_class> specialize;

  static JobConfig fromJson(const std::string& text);
};

struct CheckResult {
  std::string id;
  bool pass = true;
  std::string detail;  // JSON payload
};

struct RunReport {
  bool pass = true;
  std::vector<CheckResult> checks;
  std::string json() const;
};

RunReport runConfig(const JobConfig& cfg);

// Suites exposed to both the orchestrator and the acceptance tests.
std::vector<CheckResult> rootSuite(int N);
std::vector<CheckResult> symbolicLemmaSuite();
std::vector<CheckResult> matrixLemmaSuite(CoidealRep& cr);
std::vector<CheckResult> dualOracleSuite(CoidealRep& cr);

RepPtr buildModule(const JobConfig& cfg, const JobConfig::ModuleSpec& spec);

}  // namespace qsp
