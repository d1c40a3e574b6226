#ifndef ATTRLIMITS_H
#define ATTRLIMITS_H

/* Generated by cbindgen from attrlimits-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call in this API.
 */
typedef enum {
  /**
   * Success.
   */
  ATTR_STATUS_OK = 0,
  /**
   * A parameter was outside its mathematical domain.
   */
  ATTR_STATUS_DOMAIN_ERROR = 1,
  /**
   * The dataset holds no records.
   */
  ATTR_STATUS_EMPTY_DATASET = 2,
  /**
   * A p/np record has count > size.
   */
  ATTR_STATUS_COUNT_EXCEEDS_SIZE = 3,
  /**
   * A required pointer was null.
   */
  ATTR_STATUS_NULL_POINTER = 4,
  /**
   * A string argument was not valid UTF-8.
   */
  ATTR_STATUS_INVALID_UTF8 = 5,
  /**
   * A point index was past the end of the chart.
   */
  ATTR_STATUS_INDEX_OUT_OF_RANGE = 6,
} AttrStatus;

/**
 * Distribution selector for fiducial limits and coverage runs.
 */
typedef enum {
  ATTR_DISTRIBUTION_BINOMIAL = 0,
  ATTR_DISTRIBUTION_POISSON = 1,
  ATTR_DISTRIBUTION_GEOMETRIC = 2,
} AttrDistribution;

/**
 * Chart kind selector.
 */
typedef enum {
  ATTR_CHART_KIND_P = 0,
  ATTR_CHART_KIND_NP = 1,
  ATTR_CHART_KIND_C = 2,
  ATTR_CHART_KIND_U = 3,
  ATTR_CHART_KIND_G = 4,
} AttrChartKind;

/**
 * Opaque chart handle.
 */
typedef struct AttrChart AttrChart;

/**
 * Opaque subgroup dataset handle.
 */
typedef struct AttrDataset AttrDataset;

/**
 * A two-sided confidence interval.
 */
typedef struct {
  double lower;
  double upper;
  /**
   * Confidence level, 1 − α.
   */
  double confidence;
} AttrInterval;

/**
 * One charted point on the statistic scale.
 */
typedef struct {
  double statistic;
  double lcl;
  double ucl;
  bool signal;
} AttrChartPoint;

/**
 * Coverage and width tallies from a Monte Carlo run.
 */
typedef struct {
  AttrDistribution distribution;
  double true_param;
  uint64_t n;
  double alpha;
  uint64_t replications;
  uint64_t seed;
  double fiducial_coverage;
  double normal_coverage;
  double mean_width_fiducial;
  double mean_width_normal;
} AttrCoverageReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *attr_status_message(AttrStatus status);

/**
 * Fiducial limits for the binomial parameter from x counts in n trials.
 */
AttrStatus attr_binom_fiducial(uint64_t trials, uint64_t count, double alpha, AttrInterval *out);

/**
 * Fiducial limits for the Poisson mean from total count y over n observations.
 */
AttrStatus attr_poisson_fiducial(uint64_t sample_size,
                                 uint64_t total,
                                 double alpha,
                                 AttrInterval *out);

/**
 * Fiducial limits for the geometric parameter from total failures y over
 * n observations.
 */
AttrStatus attr_geometric_fiducial(uint64_t sample_size,
                                   uint64_t total,
                                   double alpha,
                                   AttrInterval *out);

/**
 * Classical normal-approximation interval for the same observations.
 */
AttrStatus attr_normal_approx_interval(AttrDistribution distribution,
                                       uint64_t statistic,
                                       uint64_t n,
                                       double alpha,
                                       AttrInterval *out);

/**
 * Smallest k with binomial CDF(k) >= xi.
 */
AttrStatus attr_binomial_quantile(double xi, uint64_t n, double p, uint64_t *out);

/**
 * Smallest k with Poisson CDF(k) >= xi; requires mean > 0.
 */
AttrStatus attr_poisson_quantile(double xi, double mean, uint64_t *out);

/**
 * Smallest k with negative binomial CDF(k) >= xi; requires 0 < p <= 1 and
 * size >= 1.
 */
AttrStatus attr_negbinomial_quantile(double xi, uint64_t size, double p, uint64_t *out);

/**
 * Gamma quantile (shape–scale parameterization).
 */
AttrStatus attr_gamma_quantile(double xi, double shape, double scale, double *out);

/**
 * F-distribution quantile.
 */
AttrStatus attr_f_quantile(double xi, double nu1, double nu2, double *out);

/**
 * Known-parameter control limits on the chart's statistic scale.
 */
AttrStatus attr_exact_limits_known(AttrChartKind kind,
                                   double param,
                                   uint64_t size,
                                   double alpha,
                                   double *lcl_out,
                                   double *ucl_out);

/**
 * New empty dataset; release with `attr_dataset_free`.
 */
AttrDataset *attr_dataset_new(void);

/**
 * Append one subgroup record. `subgroup_id` must be a NUL-terminated
 * UTF-8 string; `size` must be >= 1.
 */
AttrStatus attr_dataset_push(AttrDataset *dataset,
                             const char *subgroup_id,
                             uint64_t count,
                             uint64_t size);

/**
 * Number of records currently in the dataset.
 */
size_t attr_dataset_len(const AttrDataset *dataset);

/**
 * Release a dataset handle. A null pointer is ignored.
 */
void attr_dataset_free(AttrDataset *dataset);

/**
 * Build a chart from a dataset. Pass `known_param` as a pointer to the
 * known parameter value, or null to estimate it from the data. On success
 * writes a chart handle that must be released with `attr_chart_free`.
 */
AttrStatus attr_chart_build(const AttrDataset *dataset,
                            AttrChartKind kind,
                            double alpha,
                            const double *known_param,
                            AttrChart **out);

/**
 * Number of points in the chart.
 */
size_t attr_chart_len(const AttrChart *chart);

/**
 * Center line value.
 */
double attr_chart_center(const AttrChart *chart);

/**
 * Two-sided tail probability the limits were built with.
 */
double attr_chart_alpha(const AttrChart *chart);

/**
 * Statistic and limits for the point at `index`.
 */
AttrStatus attr_chart_point(const AttrChart *chart, size_t index, AttrChartPoint *out);

/**
 * Subgroup id of the point at `index`, borrowed from the chart handle;
 * valid until `attr_chart_free`. Null when the index is out of range.
 */
const char *attr_chart_point_id(const AttrChart *chart, size_t index);

/**
 * True when the chart's parameter was pooled from the data.
 */
bool attr_chart_is_estimated(const AttrChart *chart);

/**
 * The charted parameter: the known value, or the pooled point estimate.
 */
double attr_chart_parameter(const AttrChart *chart);

/**
 * Fiducial interval for an estimated parameter. Fails with `DomainError`
 * when the parameter was supplied as known.
 */
AttrStatus attr_chart_estimate_interval(const AttrChart *chart, AttrInterval *out);

/**
 * Release a chart handle. A null pointer is ignored.
 */
void attr_chart_free(AttrChart *chart);

/**
 * Monte Carlo coverage of fiducial vs normal-approximation limits.
 * Bit-identical for identical inputs regardless of thread count.
 */
AttrStatus attr_run_coverage(AttrDistribution distribution,
                             double true_param,
                             uint64_t n,
                             double alpha,
                             uint64_t replications,
                             uint64_t seed,
                             AttrCoverageReport *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ATTRLIMITS_H */
