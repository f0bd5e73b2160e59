#ifndef FANODIST_H
#define FANODIST_H

#pragma once

/* Generated by cbindgen from fanodist-ffi. Do not edit. */

#include <stdint.h>
#include <stddef.h>

// Result of every fallible call.
typedef enum FdStatus {
  FD_STATUS_OK = 0,
  FD_STATUS_NULL_POINTER,
  FD_STATUS_INVALID_UTF8,
  FD_STATUS_PARSE,
  FD_STATUS_NOT_SKEW,
  FD_STATUS_DIMENSION,
  FD_STATUS_VARCOUNT_MISMATCH,
  FD_STATUS_ODD_SIZE,
  FD_STATUS_ZERO_MATRIX,
  FD_STATUS_ZERO_FORM,
  FD_STATUS_INVALID_WEIGHTS,
  FD_STATUS_HYPOTHESIS,
  FD_STATUS_SIZE_LIMIT,
  FD_STATUS_DEGENERATE,
  FD_STATUS_INVALID_ARGUMENT,
  FD_STATUS_PANIC,
} FdStatus;

// Opaque twisted differential form.
typedef struct FdForm FdForm;

// Opaque skew-symmetric matrix.
typedef struct FdSkewMatrix FdSkewMatrix;

// Position of a skew matrix in the secant stratification.
typedef struct FdStratum {
  size_t rank;
  size_t class_k;
  size_t stratum;
  size_t vanished_pfaffian_size;
} FdStratum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer is
// valid until the next call into this library on the same thread.
const char *fd_last_error(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void fd_string_free(char *s);

// Parses a skew matrix from JSON (array of rows of rational strings or
// integers).
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum FdStatus fd_skew_from_json(const char *json, struct FdSkewMatrix **out);

// Builds a skew matrix from `size * size` row-major integers.
//
// # Safety
// `entries` must point to `size * size` readable values; `out` must be
// writable.
enum FdStatus fd_skew_from_ints(size_t size, const int64_t *entries, struct FdSkewMatrix **out);

// # Safety
// `m` must be null or a handle from this library, not yet freed.
void fd_skew_free(struct FdSkewMatrix *m);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum FdStatus fd_skew_size(const struct FdSkewMatrix *m, size_t *out);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum FdStatus fd_skew_rank(const struct FdSkewMatrix *m, size_t *out);

// Pfaffian as a rational string such as `"-3/7"`.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum FdStatus fd_skew_pfaffian(const struct FdSkewMatrix *m, char **out);

// # Safety
// `m` must be a live handle; `out` must be writable.
enum FdStatus fd_class_via_rank(const struct FdSkewMatrix *m, struct FdStratum *out);

// `ω = Σ a_ij (z_i dz_j − z_j dz_i)`.
//
// # Safety
// `m` must be a live handle; `out` must be writable.
enum FdStatus fd_form_from_skew(const struct FdSkewMatrix *m, struct FdForm **out);

// Parses a form in the text grammar, e.g. `z0 dz1 - z1 dz0`.
//
// # Safety
// `text` must be a nul-terminated string; `out` must be writable.
enum FdStatus fd_form_parse(const char *text, size_t dim, struct FdForm **out);

// # Safety
// `w` must be null or a handle from this library, not yet freed.
void fd_form_free(struct FdForm *w);

// # Safety
// `w` must be a live handle; `out` must be writable.
enum FdStatus fd_form_to_string(const struct FdForm *w, char **out);

// Class of a 1-form; `-1` for the zero form.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum FdStatus fd_form_class(const struct FdForm *w, int64_t *out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum FdStatus fd_form_wedge(const struct FdForm *a, const struct FdForm *b, struct FdForm **out);

// Exterior derivative.
//
// # Safety
// `w` must be a live handle; `out` must be writable.
enum FdStatus fd_form_d(const struct FdForm *w, struct FdForm **out);

// `h^p(Pⁿ, Ω^q(t))` as a decimal string.
//
// # Safety
// `out` must be writable.
enum FdStatus fd_bott(int64_t n, int64_t p, int64_t q, int64_t t, char **out);

// `h⁰(P(a), Ω̄^q(t))` as a decimal string.
//
// # Safety
// `weights` must point to `len` readable values; `out` must be writable.
enum FdStatus fd_wps_h0(const uint32_t *weights, size_t len, int64_t q, int64_t t, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FANODIST_H */
