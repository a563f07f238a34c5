#ifndef FORECASTABILITY_H
#define FORECASTABILITY_H

/* Generated with cbindgen:0.27.0 */

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum FcStatus {
  FC_STATUS_OK = 0,
  FC_STATUS_NULL_POINTER = 1,
  FC_STATUS_INVALID_ARGUMENT = 2,
  FC_STATUS_INSUFFICIENT_DATA = 3,
  FC_STATUS_DOMAIN_ERROR = 4,
  FC_STATUS_SINGULAR_SYSTEM = 5,
  FC_STATUS_COVERAGE_ERROR = 6,
  FC_STATUS_DEGENERATE_SAMPLE = 7,
  FC_STATUS_CONFIG_ERROR = 8,
  FC_STATUS_MISSING_HORIZON = 9,
  FC_STATUS_PANIC = 10,
} FcStatus;

/**
 * Opaque forecastability profile.
 */
typedef struct FcProfile FcProfile;

/**
 * Opaque time series.
 */
typedef struct FcSeries FcSeries;

/**
 * Opaque list of per-horizon permutation results.
 */
typedef struct FcSignificance FcSignificance;

/**
 * Estimator settings; obtain defaults from `fc_estimator_config_default`.
 */
typedef struct FcEstimatorConfig {
  size_t k;
  double jitter_scale;
  bool standardize;
  uint64_t seed;
} FcEstimatorConfig;

typedef struct FcLossDecomposition {
  size_t horizon;
  size_t n_eval;
  double expected_loss_nats;
  double marginal_entropy_nats;
  double forecastability_nats;
  double exploitability_nats;
  double exploitation_ratio;
  double approximation_gap_nats;
  bool low_forecastability;
} FcLossDecomposition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or NULL. Valid until
 * the next `fc_*` call on the same thread.
 */
const char *fc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *fc_version(void);

enum FcStatus fc_series_new(const double *values, size_t len, struct FcSeries **out);

size_t fc_series_len(const struct FcSeries *series);

/**
 * Borrowed view of the observations; valid while `series` lives.
 */
const double *fc_series_values(const struct FcSeries *series);

void fc_series_free(struct FcSeries *series);

/**
 * AR(1) sample path; see `fc_simulate_seasonal_ar` for the seasonal model.
 */
enum FcStatus fc_simulate_ar1(double phi,
                              double innovation_variance,
                              size_t n,
                              uint64_t seed,
                              size_t burn_in,
                              struct FcSeries **out);

enum FcStatus fc_simulate_seasonal_ar(double phi,
                                      double seasonal_phi,
                                      size_t period,
                                      double innovation_variance,
                                      size_t n,
                                      uint64_t seed,
                                      size_t burn_in,
                                      struct FcSeries **out);

struct FcEstimatorConfig fc_estimator_config_default(void);

enum FcStatus fc_ar1_profile(double phi,
                             const size_t *horizons,
                             size_t n_horizons,
                             struct FcProfile **out);

enum FcStatus fc_seasonal_ar_profile(double phi,
                                     double seasonal_phi,
                                     size_t period,
                                     size_t lag_order,
                                     const size_t *horizons,
                                     size_t n_horizons,
                                     struct FcProfile **out);

/**
 * Gaussian profile from autocorrelations `rho[0] = rho_1, ..., rho[n_rho-1]`.
 */
enum FcStatus fc_acf_profile(const double *rho,
                             size_t n_rho,
                             size_t lag_order,
                             const size_t *horizons,
                             size_t n_horizons,
                             struct FcProfile **out);

/**
 * KSG profile of `series`. `config` may be NULL for defaults.
 */
enum FcStatus fc_estimate_profile(const struct FcSeries *series,
                                  size_t lag_order,
                                  const size_t *horizons,
                                  size_t n_horizons,
                                  const struct FcEstimatorConfig *config,
                                  struct FcProfile **out);

size_t fc_profile_len(const struct FcProfile *profile);

/**
 * True for estimated profiles, false for analytic ones.
 */
bool fc_profile_is_estimated(const struct FcProfile *profile);

/**
 * Entry `index`: horizon, value in nats and gap flag. `value` is set to NaN
 * at a gap.
 */
enum FcStatus fc_profile_get(const struct FcProfile *profile,
                             size_t index,
                             size_t *horizon,
                             double *value_nats,
                             bool *is_gap);

/**
 * Pair count used at entry `index`; 0 for analytic profiles.
 */
size_t fc_profile_n_effective(const struct FcProfile *profile, size_t index);

void fc_profile_free(struct FcProfile *profile);

/**
 * Writes `n_horizons` truncation-budget values into `delta_nats`.
 */
enum FcStatus fc_finite_window_budget(const struct FcSeries *series,
                                      size_t p_small,
                                      size_t p_large,
                                      const size_t *horizons,
                                      size_t n_horizons,
                                      const struct FcEstimatorConfig *config,
                                      double *delta_nats);

enum FcStatus fc_permutation_test(const struct FcSeries *series,
                                  size_t lag_order,
                                  const size_t *horizons,
                                  size_t n_horizons,
                                  const struct FcEstimatorConfig *config,
                                  size_t replicates,
                                  uint64_t seed,
                                  struct FcSignificance **out);

size_t fc_significance_len(const struct FcSignificance *results);

enum FcStatus fc_significance_get(const struct FcSignificance *results,
                                  size_t index,
                                  size_t *horizon,
                                  double *observed_nats,
                                  double *p_value);

/**
 * Borrowed null statistics of entry `index`; `len` receives their count.
 * NULL if the index is out of range.
 */
const double *fc_significance_null_samples(const struct FcSignificance *results,
                                           size_t index,
                                           size_t *len);

void fc_significance_free(struct FcSignificance *results);

enum FcStatus fc_digamma(double x, double *out);

/**
 * `data` holds `n` row-major points of dimension `dim`.
 */
enum FcStatus fc_kl_entropy(const double *data, size_t n, size_t dim, size_t k, double *out);

enum FcStatus fc_ksg_mutual_information(const double *x,
                                        size_t x_dim,
                                        const double *y,
                                        size_t y_dim,
                                        size_t n,
                                        size_t k,
                                        double *out);

/**
 * Decomposes a probe's loss at `horizon`. `origins[i]` is the forecast
 * origin of `log_densities[i]`; the scored outcome is `series[origins[i] + horizon]`.
 */
enum FcStatus fc_decompose_loss(const struct FcSeries *series,
                                const struct FcProfile *profile,
                                size_t horizon,
                                const size_t *origins,
                                const double *log_densities,
                                size_t n_eval,
                                const struct FcEstimatorConfig *config,
                                struct FcLossDecomposition *out);

enum FcStatus fc_pinsker_bound(double forecastability_nats, double *out);

enum FcStatus fc_fano_bound(double forecastability_nats,
                            double marginal_entropy_nats,
                            size_t alphabet_size,
                            double *min_error,
                            bool *vacuous);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FORECASTABILITY_H */
