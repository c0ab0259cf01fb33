#ifndef SQBETTI_H
#define SQBETTI_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SQ_EXCLUSION_SUCCESSOR = 0,
  SQ_EXCLUSION_PREDECESSOR = 1,
} SqExclusion;

typedef enum {
  SQ_STATUS_OK = 0,
  SQ_STATUS_NULL_POINTER = 1,
  SQ_STATUS_INVALID_ARGUMENT = 2,
  SQ_STATUS_OVERFLOW = 3,
  SQ_STATUS_COMPUTATION_FAILED = 4,
  SQ_STATUS_PANIC = 5,
} SqStatus;

/**
 * Opaque result of a localization run.
 */
typedef struct SqAssembly SqAssembly;

/**
 * Opaque polynomial in `t` with integer coefficients.
 */
typedef struct SqPolynomial SqPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next `sq_*` call on the same thread.
 */
const char *sq_last_error_message(void);

/**
 * Poincaré polynomial of the `n = 1` space of degree `d`.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
SqStatus sq_genus1_poincare(uint32_t d, SqPolynomial **out);

/**
 * Localization run for `Q̄₁(ℙⁿ⁻¹, d)` with default weights and smoothing.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
SqStatus sq_assemble(uint32_t n, uint32_t d, SqExclusion exclusion, SqAssembly **out);

/**
 * Copy of the assembled Poincaré polynomial.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for a pointer write.
 */
SqStatus sq_assembly_poincare(const SqAssembly *a, SqPolynomial **out);

/**
 * Number of fixed loci, Type A and Type B together.
 *
 * # Safety
 * `a` must be a live handle and `out` valid for a write.
 */
SqStatus sq_assembly_locus_count(const SqAssembly *a, uintptr_t *out);

/**
 * JSON report of the run. Free the string with [`sq_string_free`].
 *
 * # Safety
 * `a` must be a live handle and `out` valid for a pointer write.
 */
SqStatus sq_assembly_to_json(const SqAssembly *a, char **out);

/**
 * # Safety
 * `a` must be null or a handle from [`sq_assemble`] not yet freed.
 */
void sq_assembly_free(SqAssembly *a);

/**
 * Degree of the polynomial, or -1 for the zero polynomial.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for a write.
 */
SqStatus sq_polynomial_degree(const SqPolynomial *p, int64_t *out);

/**
 * Coefficient of `t^i`; `SQ_STATUS_OVERFLOW` if it does not fit in `i64`.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for a write.
 */
SqStatus sq_polynomial_coeff_i64(const SqPolynomial *p, uintptr_t i, int64_t *out);

/**
 * Coefficients as a JSON array of decimal strings.
 *
 * # Safety
 * `p` must be a live handle and `out` valid for a pointer write.
 */
SqStatus sq_polynomial_to_json(const SqPolynomial *p, char **out);

/**
 * # Safety
 * `p` must be null or a polynomial handle not yet freed.
 */
void sq_polynomial_free(SqPolynomial *p);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sq_string_free(char *s);

/**
 * Number of bracelets with `d` beads, `i` of them black.
 *
 * # Safety
 * `out` must be valid for a write.
 */
SqStatus sq_bracelet_count(uint64_t d, uint64_t i, uint64_t *out);

/**
 * # Safety
 * `out` must be valid for a write.
 */
SqStatus sq_is_fano(uint32_t n, uint32_t d, bool *out);

/**
 * Canonical class `K = (cj_num/cj_den) D_j + (cb_num/cb_den) D_b`, reduced.
 *
 * # Safety
 * All four out-pointers must be valid for writes.
 */
SqStatus sq_canonical_class(uint32_t n,
                            uint32_t d,
                            int64_t *cj_num,
                            int64_t *cj_den,
                            int64_t *cb_num,
                            int64_t *cb_den);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQBETTI_H */
