#ifndef HPDUAL_H
#define HPDUAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero values match the CLI exit codes where both exist.
 */
typedef enum HpStatus {
  HP_STATUS_OK = 0,
  HP_STATUS_INTERNAL = 1,
  HP_STATUS_INVALID_INPUT = 2,
  HP_STATUS_NOT_NORMAL = 3,
  HP_STATUS_INSUFFICIENT_TRUNCATION = 4,
  HP_STATUS_NULL_POINTER = 5,
  HP_STATUS_OUT_OF_RANGE = 6,
} HpStatus;

/**
 * Which matrix of a duality run to read.
 */
typedef enum HpMatrix {
  HP_MATRIX_M1 = 0,
  HP_MATRIX_M2 = 1,
  HP_MATRIX_PRODUCT = 2,
} HpMatrix;

/**
 * Opaque result of solving all systems at one `n` and checking `M1 M2 = I`.
 */
typedef struct HpDuality HpDuality;

/**
 * Opaque tuple of series.
 */
typedef struct HpTuple HpTuple;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread; empty after a
 * success. Valid until the next call into this library on the same thread.
 */
const char *hp_last_error(void);

/**
 * Library version, a static string.
 */
const char *hp_version(void);

/**
 * Parses a tuple document.
 *
 * # Safety
 * `json` must be NULL or a valid NUL-terminated string; `out` must be NULL or
 * point to writable storage for one pointer.
 */
enum HpStatus hp_tuple_from_json(const char *json, struct HpTuple **out);

/**
 * Seeded random tuple of `m + 1` series with `num_coeffs` coefficients.
 *
 * # Safety
 * `out` must be NULL or point to writable storage for one pointer.
 */
enum HpStatus hp_tuple_random(uint64_t seed,
                              size_t m,
                              size_t num_coeffs,
                              uint32_t height,
                              struct HpTuple **out);

/**
 * `m` of the tuple (it has `m + 1` series); 0 for NULL.
 *
 * # Safety
 * `tuple` must be NULL or a live handle from this library.
 */
size_t hp_tuple_m(const struct HpTuple *tuple);

/**
 * Serializes the tuple as a document accepted by [`hp_tuple_from_json`].
 *
 * # Safety
 * `tuple` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum HpStatus hp_tuple_to_json(const struct HpTuple *tuple, char **out);

/**
 * # Safety
 * `tuple` must be NULL or a handle not yet freed.
 */
void hp_tuple_free(struct HpTuple *tuple);

/**
 * Normality verdicts of the `2(m+1)` systems used at `n`, as JSON. Returns
 * `Ok` whether or not the tuple is in general position; read
 * `general_position_at_n` from the document.
 *
 * # Safety
 * `tuple` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum HpStatus hp_normality_json(const struct HpTuple *tuple, size_t n, char **out);

/**
 * Solves every type I and type II system at `n` and checks `M1 M2 = I`.
 * `NotNormal` is returned when some system is degenerate.
 *
 * # Safety
 * `tuple` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum HpStatus hp_duality_run(const struct HpTuple *tuple, size_t n, struct HpDuality **out);

/**
 * Whether `M1 M2` is exactly the identity; false for NULL.
 *
 * # Safety
 * `run` must be NULL or a live handle.
 */
bool hp_duality_holds(const struct HpDuality *run);

/**
 * Matrix dimension `m + 1`; 0 for NULL.
 *
 * # Safety
 * `run` must be NULL or a live handle.
 */
size_t hp_duality_dim(const struct HpDuality *run);

/**
 * One matrix entry as text, ascending powers, e.g. `"1 - 1*z"`.
 *
 * # Safety
 * `run` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum HpStatus hp_duality_entry(const struct HpDuality *run,
                               enum HpMatrix which,
                               size_t row,
                               size_t col,
                               char **out);

/**
 * Full run as JSON: solutions, residual orders, `M1`, `M2`, product,
 * determinants and per-entry verdicts. Rationals are strings.
 *
 * # Safety
 * `run` must be NULL or a live handle; `out` must be NULL or writable.
 */
enum HpStatus hp_duality_to_json(const struct HpDuality *run, char **out);

/**
 * # Safety
 * `run` must be NULL or a handle not yet freed.
 */
void hp_duality_free(struct HpDuality *run);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void hp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HPDUAL_H */
