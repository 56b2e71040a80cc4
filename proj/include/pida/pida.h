#ifndef PIDA_PIDA_H
#define PIDA_PIDA_H

/*
 * C interface to the iterative double auction library.
 *
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function. Strings returned through `char**` are NUL-terminated JSON
 * owned by the caller and released with pida_string_free. Every function
 * returning pida_status leaves its out-parameters untouched on failure (except
 * pida_verify, which also writes its report on PIDA_ERR_AUDIT) and records a
 * message retrievable with pida_last_error() on the same thread.
 */

#include <stdint.h>

#if defined(PIDA_BUILDING_LIBRARY)
#define PIDA_API __attribute__((visibility("default")))
#else
#define PIDA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pida_status {
  PIDA_OK = 0,
  PIDA_ERR_ARGUMENT = 1,   /* null pointer or unknown option */
  PIDA_ERR_PARSE = 2,      /* malformed JSON or wrong document shape */
  PIDA_ERR_VALIDATION = 3, /* well-formed input breaking a model invariant */
  PIDA_ERR_AUDIT = 4,      /* verify found a violated property */
  PIDA_ERR_INTERNAL = 5    /* arithmetic overflow or unexpected failure */
} pida_status;

typedef struct pida_instance pida_instance;
typedef struct pida_outcome pida_outcome;

PIDA_API const char* pida_version(void);
/* Message of the last failed call on this thread; "" if none. */
PIDA_API const char* pida_last_error(void);
PIDA_API void pida_string_free(char* s);

/* Instance documents: {"header": {...}, "sellers": [...], "buyers": [...]}. */
PIDA_API pida_status pida_instance_from_json(const char* json, pida_instance** out);
/* Generator options as JSON, e.g. {"group": 1, "seed": 7}. */
PIDA_API pida_status pida_instance_generate(const char* options_json, pida_instance** out);
PIDA_API pida_status pida_instance_to_json(const pida_instance* instance, char** out);
PIDA_API pida_status pida_instance_fingerprint(const pida_instance* instance, char** out);
PIDA_API int32_t pida_instance_buyer_count(const pida_instance* instance);
PIDA_API int32_t pida_instance_seller_count(const pida_instance* instance);
PIDA_API void pida_instance_free(pida_instance* instance);

/* Runs the auction; config_json may be NULL for defaults. */
PIDA_API pida_status pida_run_auction(const pida_instance* instance, const char* config_json, pida_outcome** out);
PIDA_API int32_t pida_outcome_rounds(const pida_outcome* outcome);
PIDA_API int32_t pida_outcome_trade_count(const pida_outcome* outcome);
/* 1 when the auction stopped on identical consecutive reports, 0 on the round cap. */
PIDA_API int32_t pida_outcome_terminated_by_t1(const pida_outcome* outcome);
/*
 * Full result document: instance reference, config echo, outcome, metrics.
 * `instance_path` may be NULL. `with_optimum` is 0 (skip), 1 (exact welfare
 * optimum) or -1 (only when the market is small enough to solve quickly).
 */
PIDA_API pida_status pida_outcome_result_json(const pida_outcome* outcome, const char* instance_path,
                                              int include_trace, int with_optimum, int timing, char** out);
PIDA_API void pida_outcome_free(pida_outcome* outcome);

/* Truthful-market winner determination: {"solver": "exact"|"sa", "sa": {...}, "seed": n}. */
PIDA_API pida_status pida_solve(const pida_instance* instance, const char* params_json, char** out);
/* kind is "fcfs" or "greedy"; seed only affects fcfs arrival ties. */
PIDA_API pida_status pida_baseline(const pida_instance* instance, const char* kind, uint64_t seed, char** out);
/* Audits a result document; PIDA_ERR_AUDIT when any check fails (report still written). */
PIDA_API pida_status pida_verify(const pida_instance* instance, const char* result_json, char** report);
/* Experiment sweep; see the README for the suite document. */
PIDA_API pida_status pida_bench(const char* suite_json, int timing, char** out);
/* {"role": "buyer"|"seller", "id": n, "samples": k, "seed": s, "config": {...}} */
PIDA_API pida_status pida_deviate(const pida_instance* instance, const char* params_json, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PIDA_PIDA_H */
