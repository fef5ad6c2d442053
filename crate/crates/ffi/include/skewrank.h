#ifndef SKEWRANK_H
#define SKEWRANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SkStatus {
  SK_STATUS_OK = 0,
  SK_STATUS_NULL_POINTER = 1,
  SK_STATUS_INVALID_UTF8 = 2,
  SK_STATUS_PARSE = 3,
  SK_STATUS_INVALID_FIELD = 4,
  SK_STATUS_UNSUPPORTED_FIELD = 5,
  SK_STATUS_DIMENSION_MISMATCH = 6,
  SK_STATUS_OUT_OF_RANGE = 7,
  SK_STATUS_NO_SKEWIFIER = 8,
  SK_STATUS_NON_CONSTANT_RANK = 9,
  SK_STATUS_BUFFER_TOO_SMALL = 10,
  SK_STATUS_FAILED = 11,
  SK_STATUS_PANIC = 12,
} SkStatus;

typedef enum SkVerdict {
  SK_VERDICT_CERTIFIED = 0,
  SK_VERDICT_EVIDENCE_ONLY = 1,
  SK_VERDICT_REFUTED = 2,
} SkVerdict;

/**
 * Opaque matrix of linear forms.
 */
typedef struct SkMatrix SkMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *sk_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *sk_version(void);

/**
 * # Safety
 * `s` must be null or a pointer returned by this library.
 */
void sk_string_free(char *s);

/**
 * Parses a matrix file in the JSON interchange format.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum SkStatus sk_matrix_from_json(const char *json, struct SkMatrix **out);

/**
 * Loads a bundled matrix (`westwick10` or `appendix14`).
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum SkStatus sk_matrix_from_corpus(const char *name, struct SkMatrix **out);

/**
 * # Safety
 * `m` must be null or a handle returned by this library, freed at most once.
 */
void sk_matrix_free(struct SkMatrix *m);

/**
 * Matrix size `n` and number of variables `d`.
 *
 * # Safety
 * `m` must be a valid handle; `n` and `d` valid pointers.
 */
enum SkStatus sk_matrix_shape(const struct SkMatrix *m, size_t *n, size_t *d);

/**
 * # Safety
 * `m` must be a valid handle and `out` a valid pointer.
 */
enum SkStatus sk_matrix_is_skew(const struct SkMatrix *m, bool *out);

/**
 * Canonical JSON of the matrix. Free the result with `sk_string_free`.
 *
 * # Safety
 * `m` must be a valid handle and `out` a valid pointer.
 */
enum SkStatus sk_matrix_to_json(const struct SkMatrix *m, char **out);

/**
 * Smallest even `r` whose principal `(r+2)`-sub-Pfaffians all vanish.
 *
 * # Safety
 * `m` must be a valid handle and `out` a valid pointer.
 */
enum SkStatus sk_rank_upper_bound(const struct SkMatrix *m, size_t *out);

/**
 * Certifies constant rank `rank`. `prime = 0` selects the default prime.
 * `certificate` may be null; otherwise it receives the certificate JSON.
 *
 * # Safety
 * `m` must be a valid handle, `verdict` a valid pointer and `certificate`
 * null or a valid pointer.
 */
enum SkStatus sk_certify(const struct SkMatrix *m,
                         size_t rank,
                         size_t samples,
                         uint64_t prime,
                         bool exact,
                         uint64_t seed,
                         enum SkVerdict *verdict,
                         char **certificate);

/**
 * Minimal indices of the pencil on the line spanned by the integer points
 * `p` and `q` (each of length `len`). Writes at most `capacity` indices to
 * `indices` and their number to `count`; `BufferTooSmall` if they do not fit.
 *
 * # Safety
 * `p`, `q` must point to `len` integers, `indices` to `capacity` slots.
 */
enum SkStatus sk_line_indices(const struct SkMatrix *m,
                              const int64_t *p,
                              const int64_t *q,
                              size_t len,
                              size_t *indices,
                              size_t capacity,
                              size_t *count);

/**
 * Finds an invertible `delta` with `delta * m` skew and returns the product
 * as a new handle.
 *
 * # Safety
 * `m` must be a valid handle and `out` a valid pointer.
 */
enum SkStatus sk_skewify(const struct SkMatrix *m, uint64_t seed, struct SkMatrix **out);

/**
 * Numerology report for constant rank `rank` as JSON.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum SkStatus sk_numerology_json(int64_t rank, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEWRANK_H */
