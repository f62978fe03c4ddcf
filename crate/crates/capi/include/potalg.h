#ifndef POTALG_H
#define POTALG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum PwStatus {
  PwOk = 0,
  PwInvalidArgument = 1,
  PwParseError = 2,
  PwPreconditionFailed = 3,
  PwBufferTooSmall = 4,
  PwNullPointer = 5,
  PwInternalError = 6,
} PwStatus;

/**
 * Opaque potential handle. Create with one of the pw_potential_* constructors
 * and release with pw_potential_free.
 */
typedef struct PwPotential PwPotential;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *pw_last_error(void);

/**
 * Parses a potential from the text grammar. `modulus` 0 selects the
 * rationals, otherwise a prime field. `n` 0 means infer from the text.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum PwStatus pw_potential_parse(const char *text,
                                 uint64_t modulus,
                                 uintptr_t n,
                                 struct PwPotential **out);

/**
 * Builtin potential with k >= n (one term per permutation).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PwStatus pw_potential_builtin_kgen(uintptr_t n,
                                        uintptr_t k,
                                        uint64_t modulus,
                                        struct PwPotential **out);

/**
 * Builtin potential with n > k >= 3.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PwStatus pw_potential_builtin_ngtk(uintptr_t n,
                                        uintptr_t k,
                                        uint64_t modulus,
                                        struct PwPotential **out);

/**
 * Seeded random potential over a prime field (modulus must be a prime).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum PwStatus pw_potential_random(uintptr_t n,
                                  uintptr_t k,
                                  uintptr_t m,
                                  uint64_t modulus,
                                  uint64_t seed,
                                  struct PwPotential **out);

/**
 * Releases a handle. Passing NULL is a no-op.
 *
 * # Safety
 * `p` must come from a pw_potential_* constructor and not be freed twice.
 */
void pw_potential_free(struct PwPotential *p);

/**
 * Writes n, k, m of the potential.
 *
 * # Safety
 * All pointers must be valid.
 */
enum PwStatus pw_potential_shape(const struct PwPotential *p,
                                 uintptr_t *n,
                                 uintptr_t *k,
                                 uintptr_t *m);

/**
 * Graded dimensions dim (A_F)_j for j = 0..=D (homogeneous potentials only).
 * `written` receives the number of coefficients (D + 1).
 *
 * # Safety
 * `out` must point to at least `capacity` u64 slots.
 */
enum PwStatus pw_graded_dims(const struct PwPotential *p,
                             uintptr_t d,
                             uint64_t *out,
                             uintptr_t capacity,
                             uintptr_t *written);

/**
 * Truncation dimensions dim A^(j); `written` receives the reported length,
 * which for nonhomogeneous potentials is D - (m - k) + 1.
 *
 * # Safety
 * `out` must point to at least `capacity` u64 slots.
 */
enum PwStatus pw_truncation_dims(const struct PwPotential *p,
                                 uintptr_t d,
                                 uint64_t *out,
                                 uintptr_t capacity,
                                 uintptr_t *written);

/**
 * Coefficients of the GSV lower bound (1-t)^{-1}(1-nt+nt^{k-1}-t^k)^{-1}.
 *
 * # Safety
 * `out` must point to at least `capacity` u64 slots.
 */
enum PwStatus pw_gsv_bound(uintptr_t n,
                           uintptr_t k,
                           uintptr_t d,
                           uint64_t *out,
                           uintptr_t capacity,
                           uintptr_t *written);

/**
 * Coefficients of the minimal series (1-nt+nt^{k-1}-t^k)^{-1}.
 *
 * # Safety
 * `out` must point to at least `capacity` u64 slots.
 */
enum PwStatus pw_rational_series(uintptr_t n,
                                 uintptr_t k,
                                 uintptr_t d,
                                 uint64_t *out,
                                 uintptr_t capacity,
                                 uintptr_t *written);

/**
 * Growth classification: 0 excluded case (2,3), 1 at least cubic, 2
 * exponential (written to `class`).
 *
 * # Safety
 * `class` must be a valid pointer.
 */
enum PwStatus pw_classify_growth(uintptr_t n, uintptr_t k, int *class_);

/**
 * Sets `injective` to 1 iff left multiplication by x1 is injective in every
 * checked degree below D, and `first_failure` to the first failing degree
 * (or to D when there is none).
 *
 * # Safety
 * `injective` and `first_failure` must be valid pointers.
 */
enum PwStatus pw_check_left_injectivity(const struct PwPotential *p,
                                        uintptr_t d,
                                        int *injective,
                                        uintptr_t *first_failure);

/**
 * Sets `minimal` to 1 iff the graded Hilbert series matches the minimal
 * series up to degree D (homogeneous potentials only).
 *
 * # Safety
 * `minimal` must be a valid pointer.
 */
enum PwStatus pw_check_minimal_series(const struct PwPotential *p, uintptr_t d, int *minimal);

/**
 * Sets `is_zero` to 1 iff the key syzygy sum_j [x_j, dF/dx_j] vanishes.
 *
 * # Safety
 * `is_zero` must be a valid pointer.
 */
enum PwStatus pw_key_syzygy_is_zero(const struct PwPotential *p, int *is_zero);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POTALG_H */
