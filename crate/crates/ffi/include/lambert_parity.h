#pragma once

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum LpStatus {
  LP_STATUS_OK = 0,
  LP_STATUS_NULL_POINTER = 1,
  LP_STATUS_INVALID_ARGUMENT = 2,
  LP_STATUS_UNKNOWN_NAME = 3,
  LP_STATUS_INVALID_ORDER = 4,
  LP_STATUS_NOT_A_UNIT = 5,
  LP_STATUS_INDEX_OUT_OF_RANGE = 6,
  LP_STATUS_OVERFLOW = 7,
  LP_STATUS_UNSUPPORTED = 8,
  LP_STATUS_SIGN_RESOLUTION = 9,
  LP_STATUS_INTERNAL = 10,
} LpStatus;

typedef enum LpParity {
  LP_PARITY_ODD = 0,
  LP_PARITY_EVEN = 1,
  /**
   * The zero series.
   */
  LP_PARITY_ODD_AND_EVEN = 2,
  LP_PARITY_NEITHER = 3,
} LpParity;

/**
 * Outcome of a single identity check.
 */
typedef enum LpIdentityStatus {
  LP_IDENTITY_STATUS_VERIFIED = 0,
  LP_IDENTITY_STATUS_VERIFIED_WITH_SIGN_FLIP = 1,
  LP_IDENTITY_STATUS_FAILED = 2,
} LpIdentityStatus;

/**
 * Opaque truncated power series.
 */
typedef struct LpSeries LpSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *lp_version(void);

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call on the same thread; empty if nothing has failed yet.
 */
const char *lp_last_error_message(void);

/**
 * Builds a named series (`"Y_DEF"`, `"PHI"`, ...) truncated at `order`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LpStatus lp_series_named(const char *name, size_t order, struct LpSeries **out);

/**
 * Series with the given `len` coefficients; its order is `len`.
 *
 * # Safety
 * `coeffs` must point to `len` readable values and `out` must be valid.
 */
enum LpStatus lp_series_from_i64(const int64_t *coeffs, size_t len, struct LpSeries **out);

/**
 * # Safety
 * `s` must be null or a handle from this library not yet freed.
 */
void lp_series_free(struct LpSeries *s);

/**
 * Truncation order, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live handle.
 */
size_t lp_series_order(const struct LpSeries *s);

/**
 * Coefficient of `q^index`; `LP_STATUS_OVERFLOW` if it does not fit.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_series_coeff_i64(const struct LpSeries *s, size_t index, int64_t *out);

/**
 * Coefficient of `q^index` in decimal. Free with `lp_string_free`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_series_coeff_string(const struct LpSeries *s, size_t index, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void lp_string_free(char *s);

/**
 * `a * b` at the smaller of the two orders.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum LpStatus lp_series_mul(const struct LpSeries *a,
                            const struct LpSeries *b,
                            struct LpSeries **out);

/**
 * `c1 * a + c2 * b` at the smaller of the two orders.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum LpStatus lp_series_linear_combine(int64_t c1,
                                       const struct LpSeries *a,
                                       int64_t c2,
                                       const struct LpSeries *b,
                                       struct LpSeries **out);

/**
 * Multiplicative inverse; needs constant term `+1` or `-1`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_series_invert(const struct LpSeries *s, struct LpSeries **out);

/**
 * `f(-q)`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_series_compose_sign(const struct LpSeries *s, struct LpSeries **out);

/**
 * `f(q^t)` for `t >= 1`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_series_compose_power(const struct LpSeries *s, size_t t, struct LpSeries **out);

/**
 * `q^k f(q)` at the same order.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_series_shift(const struct LpSeries *s, size_t k, struct LpSeries **out);

/**
 * Writes 1 to `out` if both series have the same order and coefficients.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum LpStatus lp_series_equal(const struct LpSeries *a, const struct LpSeries *b, int32_t *out);

/**
 * Classifies the series. For `LP_PARITY_NEITHER`, `first_violation` gets
 * the smallest index breaking both parities; otherwise it is left alone.
 * `first_violation` may be null.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum LpStatus lp_series_parity(const struct LpSeries *s,
                               enum LpParity *out,
                               size_t *first_violation);

/**
 * Checks one identity (`"I4"` or `"I4_LEMMA1"`) through `q^(order-1)`.
 *
 * # Safety
 * `identity` must be a NUL-terminated string and `out` a valid pointer.
 */
enum LpStatus lp_verify(const char *identity, size_t order, enum LpIdentityStatus *out);

/**
 * JSON array of report records for one identity, or for the whole suite
 * when `identity` is null. Free with `lp_string_free`.
 *
 * # Safety
 * `identity` must be null or a NUL-terminated string; `out` must be valid.
 */
enum LpStatus lp_verify_json(const char *identity, size_t order, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
