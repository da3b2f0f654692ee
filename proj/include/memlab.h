/* memlab: weak memory model laboratory, C API.
 *
 * Opaque handles over the C++ core. Every constructor-style call hands
 * back an owned handle the caller must release with the matching *_free.
 * Calls that can fail return a memlab_status; the message for the most
 * recent failure on the calling thread is available via
 * memlab_last_error(). Strings returned as char* are owned by the
 * caller and released with memlab_string_free().
 */

#ifndef MEMLAB_H
#define MEMLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct memlab_test memlab_test;
typedef struct memlab_model memlab_model;
typedef struct memlab_report memlab_report;

typedef enum memlab_status {
  MEMLAB_OK = 0,
  MEMLAB_ERR_PARSE = 1,
  MEMLAB_ERR_UNKNOWN_PRODUCT = 2,
  MEMLAB_ERR_BAD_FEATURE = 3,
  MEMLAB_ERR_IO = 4,
  MEMLAB_ERR_INVALID_ARGUMENT = 5,
  MEMLAB_ERR_INTERNAL = 6
} memlab_status;

typedef enum memlab_verdict {
  MEMLAB_VERDICT_PASS = 0,
  MEMLAB_VERDICT_FAIL = 1,
  MEMLAB_VERDICT_UNKNOWN = 2
} memlab_verdict;

typedef enum memlab_format {
  MEMLAB_FORMAT_TEXT = 0,
  MEMLAB_FORMAT_JSON = 1
} memlab_format;

typedef struct memlab_options {
  uint64_t max_states;     /* 0 keeps the default of 1000000 */
  int dedup;               /* nonzero: skip already-visited states */
  uint64_t random_seed;    /* used when random_samples > 0 */
  uint64_t random_samples; /* > 0 switches to random-walk sampling */
} memlab_options;

const char* memlab_version(void);

/* Message for the most recent failing call on this thread; valid until
 * the next failing call. Never NULL. */
const char* memlab_last_error(void);

void memlab_string_free(char* s);

/* Fills in the defaults: exhaustive, dedup on, 1000000 state cap. */
void memlab_options_init(memlab_options* opts);

/* ---- litmus tests ---- */

memlab_status memlab_test_parse(const char* text, memlab_test** out);
memlab_status memlab_test_load(const char* path, memlab_test** out);
void memlab_test_free(memlab_test* test);

const char* memlab_test_name(const memlab_test* test);
int memlab_test_thread_count(const memlab_test* test);
int memlab_test_access_count(const memlab_test* test);
size_t memlab_test_assertion_count(const memlab_test* test);

/* Assertion `index` as text, e.g. "exists T0:r1=0 /\ T1:r2=0". NULL on
 * bad index. */
char* memlab_test_assertion(const memlab_test* test, size_t index);

/* Canonical litmus text; re-parsing it reproduces the same test. */
char* memlab_test_format(const memlab_test* test);

/* ---- memory models ---- */

/* Catalog products: SC, IBM370, TSO, PSO (case-insensitive). */
memlab_status memlab_model_product(const char* name, memlab_model** out);

/* Comma-separated feature list out of WR, WW, RR, RW, ReadEarly. */
memlab_status memlab_model_features(const char* comma_list,
                                    memlab_model** out);
void memlab_model_free(memlab_model* model);
const char* memlab_model_name(const memlab_model* model);

/* ---- exploration ---- */

/* Enumerates reachable final states of `test` under `model`. `opts` may
 * be NULL for the defaults. */
memlab_status memlab_explore(const memlab_test* test,
                             const memlab_model* model,
                             const memlab_options* opts,
                             memlab_report** out);

/* Reference interleaving semantics; the report holds the complete
 * sequentially consistent outcome set. */
memlab_status memlab_oracle(const memlab_test* test, memlab_report** out);

void memlab_report_free(memlab_report* report);

size_t memlab_report_outcome_count(const memlab_report* report);

/* Canonical one-line rendering of outcome `index`, e.g.
 * "T0:r1=0 T1:r2=0 | v=1 w=1". NULL on bad index. */
char* memlab_report_outcome(const memlab_report* report,
                            const memlab_test* test, size_t index);

/* {"registers": {...}, "memory": {...}} for outcome `index`. */
char* memlab_report_outcome_json(const memlab_report* report,
                                 const memlab_test* test, size_t index);

uint64_t memlab_report_states_visited(const memlab_report* report);
uint64_t memlab_report_dedup_hits(const memlab_report* report);

/* 1 when the outcome set is the complete reachable set. */
int memlab_report_complete(const memlab_report* report);

size_t memlab_report_invariant_violations(const memlab_report* report);
char* memlab_report_invariant_violation(const memlab_report* report,
                                        size_t index);

/* Head-progress and branch-depth check failures; zero on healthy runs. */
uint64_t memlab_report_progress_violations(const memlab_report* report);

/* Verdict for assertion `index` of `test` against this report. */
memlab_verdict memlab_report_assertion_verdict(const memlab_report* report,
                                               const memlab_test* test,
                                               size_t index);

/* 0 all assertions pass, 1 some fail, 3 inconclusive. */
int memlab_report_exit_code(const memlab_report* report,
                            const memlab_test* test);

/* ---- rendering ---- */

memlab_status memlab_render_run(const memlab_test* test,
                                const memlab_model* model,
                                const memlab_report* report,
                                memlab_format format, char** out);

/* Explores `test` under every model and renders the comparison table. */
memlab_status memlab_render_compare(const memlab_test* test,
                                    const memlab_model* const* models,
                                    size_t model_count,
                                    const memlab_options* opts,
                                    memlab_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* MEMLAB_H */
