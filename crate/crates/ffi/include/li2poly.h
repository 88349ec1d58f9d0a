#ifndef LI2POLY_H
#define LI2POLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by all functions.
 */
typedef enum Li2Status {
  LI2_STATUS_OK = 0,
  LI2_STATUS_NULL_POINTER = 1,
  LI2_STATUS_INVALID_ARGUMENT = 2,
  LI2_STATUS_PARSE = 3,
  LI2_STATUS_INFEASIBLE = 4,
  LI2_STATUS_UNBOUNDED = 5,
  LI2_STATUS_NOT_POINTED = 6,
  LI2_STATUS_REDUNDANT = 7,
  LI2_STATUS_NOT_SIMPLE = 8,
  LI2_STATUS_CAP_EXCEEDED = 9,
  LI2_STATUS_OVERFLOW = 10,
  LI2_STATUS_BUFFER_TOO_SMALL = 11,
  LI2_STATUS_INVALID_UTF8 = 12,
  LI2_STATUS_PANIC = 13,
} Li2Status;

/**
 * Opaque polytope handle.
 */
typedef struct Li2Polytope Li2Polytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after a
 * success. Valid until the next call into this library on the same thread.
 */
const char *li2_last_error_message(void);

/**
 * Parses an H-representation from a NUL-terminated string.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum Li2Status li2_polytope_parse(const char *text, struct Li2Polytope **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum Li2Status li2_polytope_pstar(uint32_t n, uint32_t d, struct Li2Polytope **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum Li2Status li2_polytope_dual_cyclic(uint32_t n, uint32_t d, struct Li2Polytope **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum Li2Status li2_polytope_prism3(uint32_t n, struct Li2Polytope **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum Li2Status li2_polytope_polygon(uint32_t m, struct Li2Polytope **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not be used afterwards.
 */
void li2_polytope_free(struct Li2Polytope *p);

/**
 * Ambient dimension, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t li2_polytope_dim(const struct Li2Polytope *p);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `p` must be null or a live handle.
 */
size_t li2_polytope_num_constraints(const struct Li2Polytope *p);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum Li2Status li2_polytope_is_bounded(const struct Li2Polytope *p, bool *out);

/**
 * Serializes to the H-representation text format. Release the result with
 * [`li2_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum Li2Status li2_polytope_to_hrep(const struct Li2Polytope *p, char **out);

/**
 * # Safety
 * `s` must be null or come from this library.
 */
void li2_string_free(char *s);

/**
 * Enumerates faces and writes `f_0 .. f_d` to `buf`.
 *
 * # Safety
 * `p` must be a live handle, `buf` must hold `cap` values, `len` must be valid.
 */
enum Li2Status li2_polytope_f_vector(const struct Li2Polytope *p,
                                     int64_t *buf,
                                     size_t cap,
                                     size_t *len);

/**
 * Indegree h-vector `h_0 .. h_d` under the objective drawn for `seed`.
 *
 * # Safety
 * As for [`li2_polytope_f_vector`].
 */
enum Li2Status li2_polytope_h_vector(const struct Li2Polytope *p,
                                     uint64_t seed,
                                     int64_t *buf,
                                     size_t cap,
                                     size_t *len);

/**
 * Number of `k`-faces of the dual cyclic polytope `c*(n, d)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum Li2Status li2_fk_dual_cyclic(uint32_t n, uint32_t d, uint32_t k, int64_t *out);

/**
 * Number of `k`-faces of `P*(n, d)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum Li2Status li2_fk_pstar(uint32_t n, uint32_t d, uint32_t k, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LI2POLY_H */
