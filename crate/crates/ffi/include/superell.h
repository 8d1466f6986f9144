#ifndef SUPERELL_H
#define SUPERELL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SeBoundKind {
  SE_BOUND_KIND_SUPER = 0,
  SE_BOUND_KIND_HYPER = 1,
  SE_BOUND_KIND_ST = 2,
} SeBoundKind;

typedef enum SeStatus {
  SE_STATUS_OK = 0,
  SE_STATUS_NULL_POINTER = 1,
  SE_STATUS_INVALID_UTF8 = 2,
  SE_STATUS_INVALID_INPUT = 3,
  SE_STATUS_HYPOTHESIS = 4,
  SE_STATUS_VERIFICATION_FAILED = 5,
  SE_STATUS_PANIC = 6,
} SeStatus;

// A parsed run configuration.
typedef struct SeConfig SeConfig;

// The outcome of [`se_run`].
typedef struct SeReport SeReport;

// Numeric invariants for a bound evaluation.
//
// The three big integers are decimal strings; NULL means 1.
typedef struct SeBoundInputs {
  uint32_t n;
  uint32_t m;
  uint32_t d;
  uint32_t s;
  uint32_t t;
  const char *abs_disc;
  const char *q_s;
  const char *p_s;
  double h_hat;
} SeBoundInputs;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL.
//
// The pointer stays valid until the next call into this library on the same thread.
const char *se_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void se_string_free(char *s);

// Evaluate one of the theorem bounds and write its natural logarithm to `out_log`.
//
// # Safety
// `inputs` and `out_log` must be valid pointers; the strings inside
// `inputs` must be NULL or NUL-terminated. `out_json`, if not NULL, receives
// a string describing the bound terms that the caller frees with [`se_string_free`].
enum SeStatus se_theorem_bound(enum SeBoundKind kind,
                               const struct SeBoundInputs *inputs,
                               double *out_log,
                               char **out_json);

// Parse a TOML run configuration.
//
// # Safety
// `toml` must be a NUL-terminated string and `out` a valid pointer. On
// success `*out` owns a handle to release with [`se_config_free`].
enum SeStatus se_config_from_toml(const char *toml, struct SeConfig **out);

// Override the worker count of a configuration. Zero restores the default.
//
// # Safety
// `config` must be a live handle from [`se_config_from_toml`].
enum SeStatus se_config_set_workers(struct SeConfig *config, uint32_t workers);

// # Safety
// `config` must be NULL or a handle from [`se_config_from_toml`] not yet freed.
void se_config_free(struct SeConfig *config);

// Run the configured mode. A failed verification still produces a report
// and returns [`SeStatus::VerificationFailed`].
//
// # Safety
// `config` must be a live handle and `out` a valid pointer. On success or
// verification failure `*out` owns a handle to release with [`se_report_free`].
enum SeStatus se_run(const struct SeConfig *config, struct SeReport **out);

// The report as a JSON document, owned by the report.
//
// # Safety
// `report` must be NULL or a live handle from [`se_run`].
const char *se_report_json(const struct SeReport *report);

// The process exit code the command-line tool would return for this report.
//
// # Safety
// `report` must be NULL or a live handle from [`se_run`].
int32_t se_report_exit_code(const struct SeReport *report);

// # Safety
// `report` must be NULL or a handle from [`se_run`] not yet freed.
void se_report_free(struct SeReport *report);

// Parse, run and serialize in one call.
//
// # Safety
// `toml` must be a NUL-terminated string and `out_json` a valid pointer.
// The returned string is freed with [`se_string_free`].
enum SeStatus se_run_toml(const char *toml, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SUPERELL_H */
