#ifndef FCY_H
#define FCY_H

/*
 * C interface to the form-type Calabi-Yau solver library.
 *
 * All functions return fcy_status unless documented otherwise; on any
 * failure fcy_last_error() carries a human-readable message for the calling
 * thread.  Handles are opaque and owned by the caller via the matching
 * _free function.  A solve that runs to a structured failure (line-search
 * stall, continuation step underflow) still returns FCY_OK; inspect
 * fcy_result_converged and fcy_result_message.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FCY_API __declspec(dllexport)
#else
#define FCY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fcy_problem fcy_problem;
typedef struct fcy_result fcy_result;
typedef struct fcy_field fcy_field;

typedef enum fcy_status {
  FCY_OK = 0,
  FCY_ERR_ARGUMENT = 1,
  FCY_ERR_CONFIG = 2,
  FCY_ERR_SOLVE = 3,
  FCY_ERR_CHECK = 4,
  FCY_ERR_DOMAIN = 5,
  FCY_ERR_IO = 6,
  FCY_ERR_INTERNAL = 7
} fcy_status;

FCY_API const char* fcy_version(void);
FCY_API const char* fcy_last_error(void);
FCY_API void fcy_string_free(char* s);

/* --- problems ------------------------------------------------------- */

/* Parse a flat key=value configuration (unknown keys rejected). */
FCY_API fcy_status fcy_problem_parse(const char* config_text,
                                     fcy_problem** out);
FCY_API fcy_status fcy_problem_load(const char* path, fcy_problem** out);
FCY_API void fcy_problem_free(fcy_problem* p);
FCY_API fcy_status fcy_problem_override_seed(fcy_problem* p, uint64_t seed);
FCY_API fcy_status fcy_problem_override_command(fcy_problem* p,
                                                const char* command);
/* records_dir from the configuration ("" when unset); owned by p. */
FCY_API const char* fcy_problem_records_dir(const fcy_problem* p);

/* --- solving -------------------------------------------------------- */

FCY_API fcy_status fcy_solve(fcy_problem* p, fcy_result** out);

/*
 * Manufactured run: builds the reference solution from the problem's
 * ustar spec, derives compatible data, solves, and reports the
 * gauge-aligned sup-norm recovery error.  Any output pointer may be NULL.
 */
FCY_API fcy_status fcy_manufacture(fcy_problem* p, fcy_result** out,
                                   fcy_field** ustar_out, fcy_field** f_out,
                                   double* recovery_sup_error);

FCY_API void fcy_result_free(fcy_result* r);
FCY_API int fcy_result_converged(const fcy_result* r);
FCY_API double fcy_result_constant(const fcy_result* r);
FCY_API double fcy_result_residual_sup(const fcy_result* r);
FCY_API double fcy_result_oscillation(const fcy_result* r);
FCY_API double fcy_result_min_eigenvalue(const fcy_result* r);
FCY_API const char* fcy_result_message(const fcy_result* r);
/* Self-describing JSON record (config echo + outcome); owned by r. */
FCY_API const char* fcy_result_record(const fcy_result* r);
/* Convergence history CSV (t,iter,residual_sup,min_eig,constant). */
FCY_API const char* fcy_result_history_csv(const fcy_result* r);
FCY_API size_t fcy_result_history_size(const fcy_result* r);
FCY_API fcy_status fcy_result_history_row(const fcy_result* r, size_t i,
                                          double* t, int* iter,
                                          double* residual_sup,
                                          double* min_eig, double* constant);
FCY_API fcy_status fcy_result_solution(const fcy_result* r, fcy_field** out);

/* --- fields --------------------------------------------------------- */

/* Field files live as <base>.json + <base>.f64 (little-endian doubles). */
FCY_API fcy_status fcy_field_read(const char* basepath, fcy_field** out);
FCY_API fcy_status fcy_field_write(const fcy_field* f, const char* basepath);
FCY_API void fcy_field_free(fcy_field* f);
FCY_API int fcy_field_dimension(const fcy_field* f); /* complex dim n */
FCY_API int fcy_field_samples(const fcy_field* f);   /* N per real axis */
FCY_API int fcy_field_is_real(const fcy_field* f);
/* Number of stored doubles (points, or 2x points when complex). */
FCY_API size_t fcy_field_size(const fcy_field* f);
FCY_API fcy_status fcy_field_values(const fcy_field* f, double* buf,
                                    size_t cap);

/* --- checks --------------------------------------------------------- */

/*
 * Property self-test (forms identities, oracle agreement, inequality
 * audits with negative controls, linearization finite-difference check,
 * kernel/range checks).  Returns FCY_OK when everything passes and
 * FCY_ERR_CHECK when some line fails; *report_json (if non-NULL) receives
 * a malloc'd JSON report either way -- release with fcy_string_free.
 */
FCY_API fcy_status fcy_selftest(uint64_t seed, char** report_json);

/*
 * Base-change equivalence: solves the problem from the flat base and from
 * the potential-shifted base (psi spec of the problem), compares the final
 * Psi_u fields.  FCY_ERR_CHECK on disagreement.
 */
FCY_API fcy_status fcy_equivalence(fcy_problem* p, char** report_json);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FCY_H */
