#ifndef TRIANGLE_FORGE_H
#define TRIANGLE_FORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes for every fallible call.
typedef enum TfStatus {
  TF_STATUS_OK = 0,
  TF_STATUS_NULL_POINTER = 1,
  TF_STATUS_INVALID_UTF8 = 2,
  TF_STATUS_PARSE = 3,
  TF_STATUS_INVALID_ARGUMENT = 4,
  TF_STATUS_HYPOTHESIS_NOT_MET = 5,
  TF_STATUS_INTERNAL = 6,
} TfStatus;

// Which construction of the weighted Delannoy triangle to run.
typedef enum TfDelannoyMethod {
  TF_DELANNOY_METHOD_RECURSION = 0,
  TF_DELANNOY_METHOD_CONVOLUTION = 1,
  TF_DELANNOY_METHOD_SERIES = 2,
} TfDelannoyMethod;

// Finite-support sequence handle.
typedef struct TfSeq TfSeq;

// Triangle handle.
typedef struct TfTriangle TfTriangle;

// Two-sided sequence handle.
typedef struct TfTwoSided TfTwoSided;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next call into this library on the same thread.
const char *tf_last_error_message(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void tf_string_free(char *s);

// Parses `offset:v0,v1,...` or `zero`.
//
// # Safety
// `literal` must be a NUL-terminated string; `out` must be writable.
enum TfStatus tf_seq_parse(const char *literal, struct TfSeq **out);

// # Safety
// `seq` must be NULL or a handle from this library that has not been freed.
void tf_seq_free(struct TfSeq *seq);

// # Safety
// `seq` must be a live handle; `out` must be writable.
enum TfStatus tf_seq_to_string(const struct TfSeq *seq, char **out);

// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum TfStatus tf_seq_conv(const struct TfSeq *a, const struct TfSeq *b, struct TfSeq **out);

// # Safety
// `q` must be a live handle; `out` must be writable.
enum TfStatus tf_seq_conv_power(const struct TfSeq *q, uint32_t k, struct TfSeq **out);

// # Safety
// `seq` must be a live handle; `out` must be writable.
enum TfStatus tf_seq_is_log_concave(const struct TfSeq *seq, bool *out);

// # Safety
// `seq` must be a live handle; `out` must be writable.
enum TfStatus tf_seq_is_unimodal(const struct TfSeq *seq, bool *out);

// Seeded positive log-concave sequence of length `len`.
//
// # Safety
// `ratio_bound` must be a NUL-terminated rational; `out` must be writable.
enum TfStatus tf_seq_random_log_concave(size_t len,
                                        uint64_t seed,
                                        const char *ratio_bound,
                                        struct TfSeq **out);

// Parses `L<ratio>|<core>|R<ratio>`.
//
// # Safety
// `literal` must be a NUL-terminated string; `out` must be writable.
enum TfStatus tf_tail_parse(const char *literal, struct TfTwoSided **out);

// # Safety
// `s` must be NULL or a handle from this library that has not been freed.
void tf_tail_free(struct TfTwoSided *s);

// # Safety
// `s` must be a live handle; `out` must be writable.
enum TfStatus tf_tail_is_log_concave(const struct TfTwoSided *s, bool *out);

// Writes `finite <value>` or `divergent <+inf|-inf|both>` for the
// convolution term at `p`.
//
// # Safety
// `a`, `b` must be live handles; `out` must be writable.
enum TfStatus tf_tail_convolution_term(const struct TfTwoSided *a,
                                       const struct TfTwoSided *b,
                                       int64_t p,
                                       char **out);

// Weighted Delannoy triangle with rows `0..=depth`.
//
// # Safety
// `b`, `c`, `d` must be NUL-terminated rationals; `out` must be writable.
enum TfStatus tf_triangle_delannoy(enum TfDelannoyMethod method,
                                   const char *b,
                                   const char *c,
                                   const char *d,
                                   uint32_t depth,
                                   struct TfTriangle **out);

// `T(n,k) = (a * q^{*(n-k)})_k`.
//
// # Safety
// `a`, `q` must be live handles; `out` must be writable.
enum TfStatus tf_triangle_convolution_array(const struct TfSeq *a,
                                            const struct TfSeq *q,
                                            uint32_t depth,
                                            struct TfTriangle **out);

// # Safety
// `out` must be writable.
enum TfStatus tf_triangle_pascal(uint32_t depth, struct TfTriangle **out);

// Reads the triangle JSON document produced by `tf_triangle_to_json`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum TfStatus tf_triangle_from_json(const char *json, struct TfTriangle **out);

// # Safety
// `t` must be NULL or a handle from this library that has not been freed.
void tf_triangle_free(struct TfTriangle *t);

// Index of the last row.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum TfStatus tf_triangle_depth(const struct TfTriangle *t, size_t *out);

// Entry `T(n,k)` as text; zero outside the triangle.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum TfStatus tf_triangle_entry(const struct TfTriangle *t, size_t n, int64_t k, char **out);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum TfStatus tf_triangle_to_json(const struct TfTriangle *t, char **out);

// # Safety
// `t` must be a live handle; `out` must be writable.
enum TfStatus tf_triangle_to_csv(const struct TfTriangle *t, char **out);

// Checks every row for log-concavity. `report_json` may be NULL.
//
// # Safety
// `t` must be a live handle; `passed` must be writable; `report_json` must
// be NULL or writable.
enum TfStatus tf_verify_rows_log_concave(const struct TfTriangle *t,
                                         bool *passed,
                                         char **report_json);

// `c_n^2 >= d_{n-1} b_{n+1}` over `1 <= k <= max_k`, `1 <= n <= max_n`.
// Fails with `HypothesisNotMet` if `a` or `q` is not log-concave.
//
// # Safety
// `a`, `q` must be live handles; `passed` must be writable; `report_json`
// must be NULL or writable.
enum TfStatus tf_verify_lemma31(const struct TfSeq *a,
                                const struct TfSeq *q,
                                uint32_t max_k,
                                uint32_t max_n,
                                bool *passed,
                                char **report_json);

// Pairing inequality over `[-window, window]^2`; a negative window selects
// one covering both supports.
//
// # Safety
// `a`, `b` must be live handles; `passed` must be writable; `report_json`
// must be NULL or writable.
enum TfStatus tf_verify_menon_pairing(const struct TfSeq *a,
                                      const struct TfSeq *b,
                                      int64_t window,
                                      bool *passed,
                                      char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRIANGLE_FORGE_H */
