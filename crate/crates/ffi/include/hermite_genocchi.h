#ifndef HERMITE_GENOCCHI_H
#define HERMITE_GENOCCHI_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HgNormalizerMethod {
  HG_NORMALIZER_METHOD_SERIES = 0,
  HG_NORMALIZER_METHOD_HOMOGENEOUS_REDUCTION = 1,
  HG_NORMALIZER_METHOD_LATTICE_BRUTEFORCE = 2,
} HgNormalizerMethod;

typedef enum HgStatus {
  HG_STATUS_OK = 0,
  HG_STATUS_NULL_POINTER = 1,
  HG_STATUS_INVALID_UTF8 = 2,
  HG_STATUS_USAGE = 3,
  HG_STATUS_SINGULAR_DENOMINATOR = 4,
  HG_STATUS_RANGE = 5,
  HG_STATUS_INVALID_PARAMETER = 6,
  HG_STATUS_DIVERGENT_SUM = 7,
  HG_STATUS_TAIL_NOT_CONVERGED = 8,
  HG_STATUS_UNDEFINED_HAZARD = 9,
  HG_STATUS_BUFFER_TOO_SMALL = 10,
  HG_STATUS_PANIC = 11,
} HgStatus;

/*
 Opaque handle to a validated distribution with its cached normalizer.
 */
typedef struct HgDistribution HgDistribution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or an empty string. The
 pointer stays valid until the next library call on the same thread.
 */
const char *hg_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed already.
 */
void hg_string_free(char *s);

/*
 Value of `M_n` for the unified family. `alphas` is a comma-separated list;
 scalars are decimals or `p/q` fractions. `precision == 0` selects exact
 rational arithmetic. The value is written to `*out` as a string.

 # Safety
 String arguments must be null-terminated; `out` must be writable.
 */
enum HgStatus hg_family_eval(uint32_t precision,
                             uint32_t k,
                             const char *ln_a,
                             const char *ln_b,
                             const char *ln_c,
                             const char *alphas,
                             const char *x,
                             const char *y,
                             uintptr_t m,
                             uintptr_t n,
                             char **out);

/*
 Runs an identity suite given as JSON (null for the bundled default) and
 writes the report array as JSON to `*report`. `*passed` is set to whether
 every asserted identity held.

 # Safety
 `suite_json` is null or null-terminated; `report` and `passed` must be
 writable.
 */
enum HgStatus hg_verify_suite(const char *suite_json, char **report, bool *passed);

/*
 Builds a distribution from `{r, m, alphas, gamma, beta, n, epsilon?}` at
 `precision` bits.

 # Safety
 `params_json` must be null-terminated; `out` must be writable.
 */
enum HgStatus hg_distribution_new(const char *params_json,
                                  uint32_t precision,
                                  struct HgDistribution **out);

/*
 # Safety
 `d` is null or a live handle from [`hg_distribution_new`].
 */
void hg_distribution_free(struct HgDistribution *d);

/*
 Number of coordinates `r`, or 0 for a null handle.

 # Safety
 `d` is null or a live handle.
 */
uintptr_t hg_distribution_rank(const struct HgDistribution *d);

/*
 # Safety
 `d` is a live handle, `x` points to `len` values, `out` is writable.
 */
enum HgStatus hg_distribution_pmf(const struct HgDistribution *d,
                                  const uint64_t *x,
                                  uintptr_t len,
                                  double *out);

/*
 `P(X >= x)` componentwise.

 # Safety
 `d` is a live handle, `x` points to `len` values, `out` is writable.
 */
enum HgStatus hg_distribution_reliability(const struct HgDistribution *d,
                                          const uint64_t *x,
                                          uintptr_t len,
                                          double *out);

/*
 Writes the `r` hazard rates at `x` into `out`, which holds `out_len`
 doubles.

 # Safety
 `d` is a live handle, `x` points to `len` values, `out` to `out_len`.
 */
enum HgStatus hg_distribution_hazard(const struct HgDistribution *d,
                                     const uint64_t *x,
                                     uintptr_t len,
                                     double *out,
                                     uintptr_t out_len);

/*
 Marginal `P(X_coord <= x)` by direct summation.

 # Safety
 `d` is a live handle, `out` is writable.
 */
enum HgStatus hg_distribution_cdf(const struct HgDistribution *d,
                                  uintptr_t coord,
                                  uint64_t x,
                                  double *out);

/*
 # Safety
 `d` is a live handle, `mean` and `variance` are writable.
 */
enum HgStatus hg_distribution_mean_variance(const struct HgDistribution *d,
                                            uintptr_t coord,
                                            double *mean,
                                            double *variance);

/*
 Normalizing constant `B` by the chosen method.

 # Safety
 `d` is a live handle, `out` is writable.
 */
enum HgStatus hg_distribution_normalizer(const struct HgDistribution *d,
                                         enum HgNormalizerMethod method,
                                         double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HERMITE_GENOCCHI_H */
