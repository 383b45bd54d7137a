/* C interface to the quantum symmetric pair verification engine.
 *
 * All heavy state lives behind the opaque verifier handle; results are
 * returned as JSON strings owned by the library (release them with
 * qsp_string_free). Functions return QSP_OK on success; on QSP_E_CHECK a
 * report is still produced with per-check failures inside.
 */
#ifndef QSPAIR_H
#define QSPAIR_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qsp_verifier qsp_verifier;

typedef enum {
  QSP_OK = 0,
  QSP_E_CHECK = 1,   /* a requested check failed; report_json is valid */
  QSP_E_CONFIG = 2,  /* config did not validate */
  QSP_E_LIMIT = 3,   /* dimension or expression-size cap exceeded */
  QSP_E_INTERNAL = 4
} qsp_status;

qsp_verifier* qsp_verifier_new(void);
void qsp_verifier_free(qsp_verifier* v);

/* Runs a JSON job config and produces a JSON report (see README for the
 * schemas). *report_json_out is set on QSP_OK and QSP_E_CHECK. */
qsp_status qsp_verifier_run_json(qsp_verifier* v, const char* config_json,
                                 char** report_json_out);

/* Message for the most recent error on this verifier (empty on success). */
const char* qsp_verifier_last_error(const qsp_verifier* v);

/* Parses a scalar in the "c*v^k" / "q^k" grammar and returns its canonical
 * form, or NULL on a parse error. */
char* qsp_scalar_canonical(const char* expr);

void qsp_string_free(char* s);
const char* qsp_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QSPAIR_H */
