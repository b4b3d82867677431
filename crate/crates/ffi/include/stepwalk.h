#ifndef STEPWALK_H
#define STEPWALK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum SwStatus {
  SW_STATUS_OK = 0,
  SW_STATUS_NULL_POINTER = 1,
  SW_STATUS_INVALID_UTF8 = 2,
  SW_STATUS_INVALID_INPUT = 3,
  SW_STATUS_BUDGET_EXCEEDED = 4,
  SW_STATUS_NETWORK = 5,
  SW_STATUS_POSTCONDITION = 6,
  SW_STATUS_IO = 7,
  SW_STATUS_PANIC = 8,
} SwStatus;

/**
 * Opaque walk constraint.
 */
typedef struct SwConstraint SwConstraint;

/**
 * Opaque finite step set.
 */
typedef struct SwStepSet SwStepSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string. Do not free.
 */
const char *sw_version(void);

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *sw_last_error(void);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void sw_string_free(char *s);

/**
 * Build a step set from `len` points stored as interleaved `x, y` pairs.
 *
 * # Safety
 * `xy` must point to `2 * len` readable integers (it may be null when `len` is 0).
 */
enum SwStatus sw_stepset_new(const int64_t *xy, size_t len, struct SwStepSet **out);

/**
 * Build a step set from a JSON array of `[x, y]` pairs.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum SwStatus sw_stepset_from_json(const char *json, struct SwStepSet **out);

/**
 * Number of distinct steps, or 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle.
 */
size_t sw_stepset_len(const struct SwStepSet *set);

/**
 * # Safety
 * `set` must be null or a handle not yet freed.
 */
void sw_stepset_free(struct SwStepSet *set);

/**
 * Parse a constraint: a name such as `quadrant` or `below-diagonal`,
 * `halfplanes:a,b;c,d`, or a JSON object.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SwStatus sw_constraint_parse(const char *text, struct SwConstraint **out);

/**
 * # Safety
 * `c` must be null or a handle not yet freed.
 */
void sw_constraint_free(struct SwConstraint *c);

/**
 * Classify `set` under `constraint` (null means the whole plane). Searches are cut
 * at `bound` steps. Writes a JSON report to `*out`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum SwStatus sw_classify(const struct SwStepSet *set,
                          const struct SwConstraint *constraint,
                          size_t bound,
                          char **out);

/**
 * Count walks from the origin to `(x, y)`. `max_len` of 0 means no length bound.
 * Writes `{"kind": ..., "value": ...}` to `*out`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum SwStatus sw_count(const struct SwStepSet *set,
                       const struct SwConstraint *constraint,
                       int64_t x,
                       int64_t y,
                       size_t max_len,
                       char **out);

/**
 * Run a complete job given as JSON, the same format the command line accepts
 * with `--job`. Writes the JSON result to `*out`. Output files named in the job
 * are not written.
 *
 * # Safety
 * `job` must be a NUL-terminated string; `out` must be writable.
 */
enum SwStatus sw_run_job(const char *job, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEPWALK_H */
