#pragma once

/* C interface to the Cartan-type superalgebra library. All strings returned
 * through char** out-parameters are heap-allocated and must be released with
 * cartan_free. Functions return CARTAN_OK on success; on failure the
 * out-parameters are untouched and cartan_last_error describes the problem. */

#ifndef CARTAN_API
#define CARTAN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define CARTAN_OK 0
#define CARTAN_ERR_ARGUMENT 1 /* bad config, expression, suite, or manifest */
#define CARTAN_ERR_INTERNAL 2

/* Verification verdicts reported through out_status. */
#define CARTAN_STATUS_PASS 0
#define CARTAN_STATUS_FAIL 1
#define CARTAN_STATUS_INCONCLUSIVE 2

/* One algebra instance. family is one of "W", "S", "H", "K", "HO", "KO",
 * "SHO", "SKO"; lambda is a rational literal like "2/3" (NULL means 0 and is
 * only meaningful for SKO). */
typedef struct cartan_config {
  const char* family;
  int m;
  int n;
  const char* lambda;
} cartan_config;

CARTAN_API const char* cartan_version(void);

CARTAN_API void cartan_free(char* s);

/* Message for the most recent failure in the calling thread. */
CARTAN_API const char* cartan_last_error(void);

/* Evaluates an expression in the config's coordinates and writes the
 * canonical printed form (a polynomial or a vector field). */
CARTAN_API int cartan_eval(const cartan_config* cfg, const char* expr,
                           char** out);

/* Writes the basis of the graded component of the given degree, one element
 * per line. */
CARTAN_API int cartan_basis(const cartan_config* cfg, int degree, char** out);

/* NULL-terminated list of verification suite names; static storage. */
CARTAN_API const char* const* cartan_suite_names(void);

/* Runs one suite and writes its JSON report. samples <= 0 picks the default
 * sample count (500); seed == 0 picks the default seed (7). out_status
 * receives a CARTAN_STATUS_* value. */
CARTAN_API int cartan_run_suite(const cartan_config* cfg, const char* suite,
                                long samples, unsigned long long seed,
                                char** out_json, int* out_status);

/* Runs the full Hom-structure pipeline (the "hom-solve" suite) with an
 * explicit codomain degree cap; codomain_max <= 0 picks the default (2). */
CARTAN_API int cartan_solve_hom(const cartan_config* cfg, int codomain_max,
                                char** out_json, int* out_status);

/* Runs every entry of a JSON manifest and writes the combined report.
 * out_status is PASS only if every entry passed. */
CARTAN_API int cartan_run_manifest(const char* manifest_text, char** out_json,
                                   int* out_status);

#ifdef __cplusplus
}
#endif
