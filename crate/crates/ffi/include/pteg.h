#ifndef PTEG_H
#define PTEG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PtegSemantics {
  PTEG_SEMANTICS_LOOSE = 0,
  PTEG_SEMANTICS_STRICT = 1,
} PtegSemantics;

/**
 * Result of every fallible call.
 */
typedef enum PtegStatus {
  PTEG_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PTEG_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  PTEG_STATUS_INVALID_UTF8 = 2,
  /**
   * A document or number could not be parsed or failed validation.
   */
  PTEG_STATUS_INVALID_INPUT = 3,
  /**
   * The net has no consistent trajectory, so no witness exists.
   */
  PTEG_STATUS_INCONSISTENT = 4,
  /**
   * The operation is undefined for this argument (for example a Kleene
   * star of a matrix with `+inf` entries).
   */
  PTEG_STATUS_UNSUPPORTED = 5,
  /**
   * The library panicked; this is a bug.
   */
  PTEG_STATUS_INTERNAL = 6,
} PtegStatus;

/**
 * A square matrix over the extended reals.
 */
typedef struct PtegMatrix PtegMatrix;

/**
 * A parsed P-time event graph.
 */
typedef struct PtegNet PtegNet;

/**
 * The outcome of a consistency check.
 */
typedef struct PtegReport PtegReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null. Valid
 * until the next call into the library from the same thread; do not free.
 */
const char *pteg_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *pteg_version(void);

/**
 * Frees a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void pteg_string_free(char *s);

/**
 * Parses a net document (`{"transitions": [...], "places": [...]}`).
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` valid for a write.
 */
enum PtegStatus pteg_net_from_json(const char *json, struct PtegNet **out);

/**
 * # Safety
 * `net` must be null or a handle from `pteg_net_from_json`, not yet freed.
 */
void pteg_net_free(struct PtegNet *net);

/**
 * Number of transitions of `net`, 0 if `net` is null.
 *
 * # Safety
 * `net` must be null or a live handle.
 */
size_t pteg_net_transition_count(const struct PtegNet *net);

/**
 * Serializes `net` back to its JSON document.
 *
 * # Safety
 * `net` must be a live handle and `out` valid for a write.
 */
enum PtegStatus pteg_net_to_json(const struct PtegNet *net, char **out);

/**
 * Decides consistency of `net` under `semantics`.
 *
 * # Safety
 * `net` must be a live handle and `out` valid for a write.
 */
enum PtegStatus pteg_check(const struct PtegNet *net,
                           enum PtegSemantics semantics,
                           struct PtegReport **out);

/**
 * # Safety
 * `report` must be null or a handle from `pteg_check`, not yet freed.
 */
void pteg_report_free(struct PtegReport *report);

/**
 * Whether the checked net is consistent; false if `report` is null.
 *
 * # Safety
 * `report` must be null or a live handle.
 */
bool pteg_report_is_consistent(const struct PtegReport *report);

/**
 * The report as JSON, with its certificate (1-based indices).
 *
 * # Safety
 * `report` must be a live handle and `out` valid for a write.
 */
enum PtegStatus pteg_report_to_json(const struct PtegReport *report, char **out);

/**
 * Earliest schedule of the first `length` firings as a trajectory
 * document. `t0` is a decimal or `p/q` string; null means 0. Returns
 * `PTEG_STATUS_INCONSISTENT` when no consistent trajectory exists.
 *
 * # Safety
 * `net` must be a live handle, `t0` null or a nul-terminated string, and
 * `out` valid for a write.
 */
enum PtegStatus pteg_witness_json(const struct PtegNet *net,
                                  enum PtegSemantics semantics,
                                  size_t length,
                                  const char *t0,
                                  char **out);

/**
 * Checks a trajectory document against `net`. Writes the number of
 * violations to `violations` and, when `details` is not null, a JSON array
 * describing them.
 *
 * # Safety
 * `net` must be a live handle, `trajectory` a nul-terminated string,
 * `violations` valid for a write, and `details` null or valid for a write.
 */
enum PtegStatus pteg_validate_json(const struct PtegNet *net,
                                   enum PtegSemantics semantics,
                                   const char *trajectory,
                                   size_t *violations,
                                   char **details);

/**
 * Parses a matrix document (`{"n": ..., "entries": [[...]]}`).
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` valid for a write.
 */
enum PtegStatus pteg_matrix_from_json(const char *json, struct PtegMatrix **out);

/**
 * # Safety
 * `m` must be null or a matrix handle from this library, not yet freed.
 */
void pteg_matrix_free(struct PtegMatrix *m);

/**
 * Dimension of `m`, 0 if `m` is null.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t pteg_matrix_dim(const struct PtegMatrix *m);

/**
 * Entry `(row, col)` (0-based) as a string: a rational, `inf` or `-inf`.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for a write.
 */
enum PtegStatus pteg_matrix_entry(const struct PtegMatrix *m, size_t row, size_t col, char **out);

/**
 * Kleene star `A* = E ⊕ A ⊕ A² ⊕ ...`; entries reached through a positive
 * circuit are `+inf`. Matrices with `+inf` entries are rejected.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for a write.
 */
enum PtegStatus pteg_matrix_kleene_star(const struct PtegMatrix *m, struct PtegMatrix **out);

/**
 * Writes whether `m` has no positive circuit, i.e. whether `x ≥ A ⊗ x`
 * has a real solution.
 *
 * # Safety
 * `m` must be a live handle and `out` valid for a write.
 */
enum PtegStatus pteg_matrix_in_nonegset(const struct PtegMatrix *m, bool *out);

/**
 * # Safety
 * `m` must be a live handle and `out` valid for a write.
 */
enum PtegStatus pteg_matrix_to_json(const struct PtegMatrix *m, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PTEG_H */
