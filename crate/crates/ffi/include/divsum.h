#ifndef DIVSUM_H
#define DIVSUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum DivsumStatus {
  DIVSUM_STATUS_OK = 0,
  DIVSUM_STATUS_NULL_POINTER = 1,
  DIVSUM_STATUS_PARSE = 2,
  DIVSUM_STATUS_INADMISSIBLE = 3,
  DIVSUM_STATUS_INVALID_ARGUMENT = 4,
  DIVSUM_STATUS_NUMERIC = 5,
  DIVSUM_STATUS_PANIC = 6,
} DivsumStatus;

/**
 * Opaque generating function `f(z) = num(z) / den(z)`.
 */
typedef struct DivsumGf DivsumGf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a generating function from ascending coefficient lists such as
 * `"0,1"` and `"1,1"`; `den_roots` (`"root^mult;..."`) may be null.
 *
 * # Safety
 * String arguments must be null or NUL-terminated; `out` must be valid for writes.
 */
enum DivsumStatus divsum_gf_new(const char *num,
                                const char *den,
                                const char *den_roots,
                                struct DivsumGf **out);

/**
 * Releases a handle from [`divsum_gf_new`]; null is ignored.
 *
 * # Safety
 * `gf` must be null or a live handle not freed before.
 */
void divsum_gf_free(struct DivsumGf *gf);

/**
 * Whether the function meets the method's pole conditions.
 *
 * # Safety
 * `gf` must be a live handle; `out` must be valid for writes.
 */
enum DivsumStatus divsum_gf_is_admissible(const struct DivsumGf *gf, bool *out);

/**
 * `Σ n^k a_n` for an admissible function, `k ≥ 1`.
 *
 * `*exact_out` receives null when pole positions were only known numerically.
 *
 * # Safety
 * `gf` must be a live handle; non-null outputs must be valid for writes.
 */
enum DivsumStatus divsum_regularized_sum(const struct DivsumGf *gf,
                                         uint32_t k,
                                         char **exact_out,
                                         double *re_out,
                                         double *im_out);

/**
 * `1^k - 2^k + 3^k - ...`.
 *
 * # Safety
 * Non-null outputs must be valid for writes.
 */
enum DivsumStatus divsum_alternating_sum(uint32_t k,
                                         char **exact_out,
                                         double *re_out,
                                         double *im_out);

/**
 * `1^k + 2^k + 3^k + ...`.
 *
 * # Safety
 * Non-null outputs must be valid for writes.
 */
enum DivsumStatus divsum_natural_sum(uint32_t k, char **exact_out, double *re_out, double *im_out);

/**
 * `Σ ε^n n^k` for an exact `ε` such as `"-1/2"` or `"3/5+4/5i"`.
 *
 * # Safety
 * `eps` must be NUL-terminated; non-null outputs must be valid for writes.
 */
enum DivsumStatus divsum_apostol_sum(uint32_t k,
                                     const char *eps,
                                     char **exact_out,
                                     double *re_out,
                                     double *im_out);

/**
 * `B_m` (with `B_1 = -1/2`) as an exact string.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DivsumStatus divsum_bernoulli(uint32_t m, char **out);

/**
 * `E_k(0)` as an exact string.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum DivsumStatus divsum_euler_at_zero(uint32_t k, char **out);

/**
 * `B_m(ε)`, the Apostol–Bernoulli number, as an exact string (`ε ≠ 1`).
 *
 * # Safety
 * `eps` must be NUL-terminated; `out` must be valid for writes.
 */
enum DivsumStatus divsum_apostol_bernoulli(uint32_t m, const char *eps, char **out);

/**
 * Extrapolated `lim_{r→1⁻} (z d/dz)^k f (r)` over increasing radii in `(0, 1)`.
 *
 * # Safety
 * `gf` must be a live handle; `radii` must point to `len` doubles; non-null
 * outputs must be valid for writes.
 */
enum DivsumStatus divsum_abel_value(const struct DivsumGf *gf,
                                    uint32_t k,
                                    const double *radii,
                                    size_t len,
                                    double *re_out,
                                    double *im_out,
                                    double *error_out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not freed before.
 */
void divsum_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null.
 *
 * The pointer stays valid until the next library call on the same thread.
 */
const char *divsum_last_error_message(void);

/**
 * Library version, a static string.
 */
const char *divsum_ffi_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIVSUM_H */
