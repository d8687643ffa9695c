#ifndef PIPEDREAM_H
#define PIPEDREAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum PdCode {
  PD_CODE_LEHMER = 0,
  PD_CODE_RAJCHGOT = 1,
} PdCode;

typedef enum PdStatus {
  PD_STATUS_OK = 0,
  PD_STATUS_NULL_POINTER = 1,
  PD_STATUS_INVALID_UTF8 = 2,
  PD_STATUS_PARSE = 3,
  PD_STATUS_INVALID_BPD = 4,
  PD_STATUS_NOT_VEXILLARY = 5,
  PD_STATUS_OUT_OF_RANGE = 6,
  PD_STATUS_BUFFER_TOO_SMALL = 7,
  PD_STATUS_INTERNAL = 8,
} PdStatus;

/**
 * Opaque pipe dream handle.
 */
typedef struct PdBpd PdBpd;

/**
 * Opaque permutation handle.
 */
typedef struct PdPermutation PdPermutation;

/**
 * Opaque polynomial handle.
 */
typedef struct PdPolynomial PdPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next `pd_*` call on the same thread.
 */
const char *pd_last_error(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void pd_string_free(char *s);

/**
 * Parses "2,1,4,3" or "2143".
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PdStatus pd_permutation_parse(const char *text, struct PdPermutation **out);

/**
 * # Safety
 * `p` must come from this library and not have been freed. NULL is ignored.
 */
void pd_permutation_free(struct PdPermutation *p);

/**
 * Comma-separated one-line notation.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_permutation_to_string(const struct PdPermutation *p, char **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_permutation_size(const struct PdPermutation *p, size_t *out);

/**
 * Number of inversions.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_permutation_length(const struct PdPermutation *p, size_t *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_permutation_is_vexillary(const struct PdPermutation *p, bool *out);

/**
 * Copies a code into `buf`, which must hold at least n entries. `len`
 * receives n either way, so callers may size the buffer with a first
 * call.
 *
 * # Safety
 * `p` must be a live handle; `buf` must hold `cap` entries (or be NULL
 * when `cap` is 0); `len` must be writable.
 */
enum PdStatus pd_permutation_code(const struct PdPermutation *p,
                                  enum PdCode which,
                                  size_t *buf,
                                  size_t cap,
                                  size_t *len);

/**
 * Degree of the Grothendieck polynomial from the Rajchgot code.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_psw_degree(const struct PdPermutation *p, size_t *out);

/**
 * Degree from the vexillary shape formula; `PD_STATUS_NOT_VEXILLARY`
 * otherwise.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_rrw_degree(const struct PdPermutation *p, size_t *out);

/**
 * Number of bumpless pipe dreams of the permutation.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_pipes_count(const struct PdPermutation *p, size_t *out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_grothendieck(const struct PdPermutation *p, struct PdPolynomial **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_schubert(const struct PdPermutation *p, struct PdPolynomial **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed. NULL is ignored.
 */
void pd_polynomial_free(struct PdPolynomial *f);

/**
 * Total degree; −1 for the zero polynomial.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_polynomial_degree(const struct PdPolynomial *f, int64_t *out);

/**
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_polynomial_term_count(const struct PdPolynomial *f, size_t *out);

/**
 * Text form, e.g. "x1 + x2 - x1*x2".
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_polynomial_to_string(const struct PdPolynomial *f, char **out);

/**
 * JSON array of `{"coeff": int, "exp": [int]}` in graded-lex order.
 *
 * # Safety
 * `f` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_polynomial_to_json(const struct PdPolynomial *f, char **out);

/**
 * Parses a pipe dream from ASCII rows or from `{"n":..,"rows":[..]}`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PdStatus pd_bpd_parse(const char *text, struct PdBpd **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_bpd_rothe(const struct PdPermutation *p, struct PdBpd **out);

/**
 * # Safety
 * `b` must come from this library and not have been freed. NULL is ignored.
 */
void pd_bpd_free(struct PdBpd *b);

/**
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_bpd_permutation(const struct PdBpd *b, struct PdPermutation **out);

/**
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_bpd_is_reduced(const struct PdBpd *b, bool *out);

/**
 * ASCII rows, one per line; with `resolved`, redundant crossings are
 * drawn as bumps.
 *
 * # Safety
 * `b` must be a live handle; `out` must be writable.
 */
enum PdStatus pd_bpd_render(const struct PdBpd *b, bool resolved, char **out);

/**
 * Checks a named property ("elbow-bound", "up-by-one", ...) over S_n.
 * `failures` receives the number of permutations that violate it.
 *
 * # Safety
 * `property` must be a NUL-terminated string; `failures` must be writable.
 */
enum PdStatus pd_verify(const char *property,
                        size_t n,
                        bool vexillary_only,
                        size_t threads,
                        size_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PIPEDREAM_H */
