#include "qspair.h"

#include <cstring>
#include <string>

#include "qsp/run.hpp"

struct qsp_verifier {
  std::string lastError;
};

namespace {
char* dupString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}
}  // namespace

extern "C" {

qsp_verifier* qsp_verifier_new(void) { return new (std::nothrow) qsp_verifier; }

void qsp_verifier_free(qsp_verifier* v) { delete v; }

qsp_status qsp_verifier_run_json(qsp_verifier* v, const char* config_json,
                                 char** report_json_out) {
  if (!v || !config_json) return QSP_E_INTERNAL;
  v->lastError.clear();
  try {
    qsp::JobConfig cfg = qsp::JobConfig::fromJson(config_json);
    qsp::RunReport rep = qsp::runConfig(cfg);
    if (report_json_out) *report_json_out = dupString(rep.json());
    return rep.pass ? QSP_OK : QSP_E_CHECK;
  } catch (const qsp::ConfigError& e) {
    v->lastError = e.what();
    return QSP_E_CONFIG;
  } catch (const qsp::QspLimitError& e) {
    v->lastError = e.what();
    return QSP_E_LIMIT;
  } catch (const std::exception& e) {
    v->lastError = e.what();
    return QSP_E_INTERNAL;
  }
}

const char* qsp_verifier_last_error(const qsp_verifier* v) {
  return v ? v->lastError.c_str() : "";
}

char* qsp_scalar_canonical(const char* expr) {
  if (!expr) return nullptr;
  auto s = qsp::Scalar::parse(expr);
  if (!s) return nullptr;
  return dupString(s->str());
}

void qsp_string_free(char* s) { std::free(s); }

const char* qsp_version(void) { return "qspair 0.1.0"; }

}  // extern "C"
