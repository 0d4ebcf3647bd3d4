#ifndef ROOMMATE_H
#define ROOMMATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call. The first four values match the exit
 * statuses of the command-line tool.
 */
typedef enum RmStatus {
  RM_STATUS_OK = 0,
  /**
   * Malformed or invalid input, or a precondition not met.
   */
  RM_STATUS_VALIDATION = 1,
  /**
   * The integer search exhausted its node budget.
   */
  RM_STATUS_RESOURCE_EXHAUSTED = 2,
  RM_STATUS_IO = 3,
  RM_STATUS_NULL_POINTER = 4,
  RM_STATUS_INVALID_UTF8 = 5,
  /**
   * A Rust panic was caught at the boundary.
   */
  RM_STATUS_PANIC = 6,
} RmStatus;

typedef struct RmInstance RmInstance;

typedef struct RmVerdict RmVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or NULL after a
 * successful call. Valid until the next call into this library.
 */
const char *rm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *rm_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void rm_string_free(char *s);

/**
 * Parses an instance document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum RmStatus rm_instance_from_json(const char *json, struct RmInstance **out);

/**
 * Reads and parses an instance file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum RmStatus rm_instance_from_file(const char *path, struct RmInstance **out);

/**
 * # Safety
 * `inst` must be NULL or a handle from this library not yet freed.
 */
void rm_instance_free(struct RmInstance *inst);

/**
 * Number of types, or 0 for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
size_t rm_instance_num_types(const struct RmInstance *inst);

/**
 * Total number of individuals, or 0 for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
uint64_t rm_instance_population(const struct RmInstance *inst);

/**
 * Whether partners' roles are interchangeable. False for a NULL handle.
 *
 * # Safety
 * `inst` must be NULL or a live handle.
 */
bool rm_instance_is_exchangeable(const struct RmInstance *inst);

/**
 * Serializes the instance back to its JSON document form.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_instance_to_json(const struct RmInstance *inst, char **out);

/**
 * New instance with every count multiplied by `factor`.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_instance_clone(const struct RmInstance *inst,
                                uint64_t factor,
                                struct RmInstance **out);

/**
 * New exchangeable instance with surplus `max(Φ_xy, Φ_yx)`.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_instance_symmetrize(const struct RmInstance *inst, struct RmInstance **out);

/**
 * Decides stability with the default search budget.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_decide_stability(const struct RmInstance *inst, struct RmVerdict **out);

/**
 * Decides stability, failing with `RM_STATUS_RESOURCE_EXHAUSTED` once the
 * integer search visits more than `node_limit` nodes.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_decide_stability_with_limit(const struct RmInstance *inst,
                                             uint64_t node_limit,
                                             struct RmVerdict **out);

/**
 * # Safety
 * `v` must be NULL or a handle from this library not yet freed.
 */
void rm_verdict_free(struct RmVerdict *v);

/**
 * False for a NULL handle.
 *
 * # Safety
 * `v` must be NULL or a live handle.
 */
bool rm_verdict_is_stable(const struct RmVerdict *v);

/**
 * Integer optimum as an exact `p/q` string.
 *
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_verdict_w_p(const struct RmVerdict *v, char **out);

/**
 * Fractional optimum as an exact `p/q` string.
 *
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_verdict_w_f(const struct RmVerdict *v, char **out);

/**
 * `w_f − w_p` as an exact `p/q` string.
 *
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_verdict_gap(const struct RmVerdict *v, char **out);

/**
 * Full stability report (same layout as the command-line tool, without
 * provenance).
 *
 * # Safety
 * `v` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_verdict_to_json(const struct RmVerdict *v, char **out);

/**
 * Removal plan (removed individuals, compensation, reduced verdict) as JSON.
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
enum RmStatus rm_stabilize_to_json(const struct RmInstance *inst, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ROOMMATE_H */
