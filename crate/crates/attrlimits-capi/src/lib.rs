//! C ABI for the `attrlimits` library.
//!
//! Every fallible function returns an [`AttrStatus`] and writes results
//! through out-pointers. Datasets and charts are opaque handles created
//! and released through the paired `_new`/`_build` and `_free` functions.
//! The generated header lands in `include/attrlimits.h`.
//!
//! # Safety
//!
//! Pointer-taking functions are `unsafe` with a uniform contract: every
//! pointer must be null or valid for its declared access, handle pointers
//! must come from this API and not already be freed, and strings must be
//! NUL-terminated. Null is reported as [`AttrStatus::NullPointer`]; any
//! other invalid pointer is undefined behavior, as in any C API.

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr, CString};

use attrlimits::chart::{
    build_chart, exact_limits_known, ChartKind, ChartResult, Dataset, ParameterSource,
    SubgroupRecord,
};
use attrlimits::error::Error;
use attrlimits::fiducial::{
    binom_fiducial, geometric_fiducial, poisson_fiducial, BinomialObservation,
    GeometricObservation, Interval, PoissonObservation,
};
use attrlimits::quantile::{
    binomial_quantile, f_quantile, gamma_quantile, negbinomial_quantile, poisson_quantile,
    FParams, GammaParams, QuantileLevel,
};
use attrlimits::simulation::{normal_approx_interval, run_coverage, DistributionKind};
use attrlimits::special::RealProb;

/// Result of every fallible call in this API.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttrStatus {
    /// Success.
    Ok = 0,
    /// A parameter was outside its mathematical domain.
    DomainError = 1,
    /// The dataset holds no records.
    EmptyDataset = 2,
    /// A p/np record has count > size.
    CountExceedsSize = 3,
    /// A required pointer was null.
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// A point index was past the end of the chart.
    IndexOutOfRange = 6,
}

impl From<&Error> for AttrStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain(_) => AttrStatus::DomainError,
            Error::EmptyDataset => AttrStatus::EmptyDataset,
            Error::CountExceedsSize { .. } => AttrStatus::CountExceedsSize,
            Error::Csv { .. } => AttrStatus::DomainError,
        }
    }
}

/// Distribution selector for fiducial limits and coverage runs.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttrDistribution {
    Binomial = 0,
    Poisson = 1,
    Geometric = 2,
}

impl From<AttrDistribution> for DistributionKind {
    fn from(d: AttrDistribution) -> Self {
        match d {
            AttrDistribution::Binomial => DistributionKind::Binomial,
            AttrDistribution::Poisson => DistributionKind::Poisson,
            AttrDistribution::Geometric => DistributionKind::Geometric,
        }
    }
}

/// Chart kind selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttrChartKind {
    P = 0,
    Np = 1,
    C = 2,
    U = 3,
    G = 4,
}

impl From<AttrChartKind> for ChartKind {
    fn from(k: AttrChartKind) -> Self {
        match k {
            AttrChartKind::P => ChartKind::P,
            AttrChartKind::Np => ChartKind::Np,
            AttrChartKind::C => ChartKind::C,
            AttrChartKind::U => ChartKind::U,
            AttrChartKind::G => ChartKind::G,
        }
    }
}

/// A two-sided confidence interval.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttrInterval {
    pub lower: f64,
    pub upper: f64,
    /// Confidence level, 1 − α.
    pub confidence: f64,
}

impl From<Interval> for AttrInterval {
    fn from(iv: Interval) -> Self {
        Self {
            lower: iv.lower,
            upper: iv.upper,
            confidence: iv.confidence,
        }
    }
}

/// One charted point on the statistic scale.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttrChartPoint {
    pub statistic: f64,
    pub lcl: f64,
    pub ucl: f64,
    pub signal: bool,
}

/// Coverage and width tallies from a Monte Carlo run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttrCoverageReport {
    pub distribution: AttrDistribution,
    pub true_param: f64,
    pub n: u64,
    pub alpha: f64,
    pub replications: u64,
    pub seed: u64,
    pub fiducial_coverage: f64,
    pub normal_coverage: f64,
    pub mean_width_fiducial: f64,
    pub mean_width_normal: f64,
}

/// Opaque subgroup dataset handle.
pub struct AttrDataset {
    records: Vec<SubgroupRecord>,
}

/// Opaque chart handle.
pub struct AttrChart {
    result: ChartResult,
    ids: Vec<CString>,
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn attr_status_message(status: AttrStatus) -> *const c_char {
    let message: &'static [u8] = match status {
        AttrStatus::Ok => b"ok\0",
        AttrStatus::DomainError => b"parameter outside its mathematical domain\0",
        AttrStatus::EmptyDataset => b"no records\0",
        AttrStatus::CountExceedsSize => b"count exceeds subgroup size\0",
        AttrStatus::NullPointer => b"required pointer was null\0",
        AttrStatus::InvalidUtf8 => b"string argument was not valid UTF-8\0",
        AttrStatus::IndexOutOfRange => b"point index out of range\0",
    };
    message.as_ptr().cast()
}

fn write_interval(result: Result<Interval, Error>, out: *mut AttrInterval) -> AttrStatus {
    if out.is_null() {
        return AttrStatus::NullPointer;
    }
    match result {
        Ok(iv) => {
            unsafe { *out = iv.into() };
            AttrStatus::Ok
        }
        Err(e) => AttrStatus::from(&e),
    }
}

/// Fiducial limits for the binomial parameter from x counts in n trials.
#[no_mangle]
pub unsafe extern "C" fn attr_binom_fiducial(
    trials: u64,
    count: u64,
    alpha: f64,
    out: *mut AttrInterval,
) -> AttrStatus {
    write_interval(
        BinomialObservation::new(trials, count).and_then(|obs| binom_fiducial(obs, alpha)),
        out,
    )
}

/// Fiducial limits for the Poisson mean from total count y over n observations.
#[no_mangle]
pub unsafe extern "C" fn attr_poisson_fiducial(
    sample_size: u64,
    total: u64,
    alpha: f64,
    out: *mut AttrInterval,
) -> AttrStatus {
    write_interval(
        PoissonObservation::new(sample_size, total).and_then(|obs| poisson_fiducial(obs, alpha)),
        out,
    )
}

/// Fiducial limits for the geometric parameter from total failures y over
/// n observations.
#[no_mangle]
pub unsafe extern "C" fn attr_geometric_fiducial(
    sample_size: u64,
    total: u64,
    alpha: f64,
    out: *mut AttrInterval,
) -> AttrStatus {
    write_interval(
        GeometricObservation::new(sample_size, total)
            .and_then(|obs| geometric_fiducial(obs, alpha)),
        out,
    )
}

/// Classical normal-approximation interval for the same observations.
#[no_mangle]
pub unsafe extern "C" fn attr_normal_approx_interval(
    distribution: AttrDistribution,
    statistic: u64,
    n: u64,
    alpha: f64,
    out: *mut AttrInterval,
) -> AttrStatus {
    write_interval(
        normal_approx_interval(distribution.into(), statistic, n, alpha),
        out,
    )
}

/// Smallest k with binomial CDF(k) >= xi.
#[no_mangle]
pub unsafe extern "C" fn attr_binomial_quantile(xi: f64, n: u64, p: f64, out: *mut u64) -> AttrStatus {
    if out.is_null() {
        return AttrStatus::NullPointer;
    }
    let (Ok(level), Ok(p)) = (QuantileLevel::new(xi), RealProb::new(p)) else {
        return AttrStatus::DomainError;
    };
    unsafe { *out = binomial_quantile(level, n, p) };
    AttrStatus::Ok
}

/// Smallest k with Poisson CDF(k) >= xi; requires mean > 0.
#[no_mangle]
pub unsafe extern "C" fn attr_poisson_quantile(xi: f64, mean: f64, out: *mut u64) -> AttrStatus {
    if out.is_null() {
        return AttrStatus::NullPointer;
    }
    let Ok(level) = QuantileLevel::new(xi) else {
        return AttrStatus::DomainError;
    };
    if !mean.is_finite() || mean <= 0.0 {
        return AttrStatus::DomainError;
    }
    unsafe { *out = poisson_quantile(level, mean) };
    AttrStatus::Ok
}

/// Smallest k with negative binomial CDF(k) >= xi; requires 0 < p <= 1 and
/// size >= 1.
#[no_mangle]
pub unsafe extern "C" fn attr_negbinomial_quantile(
    xi: f64,
    size: u64,
    p: f64,
    out: *mut u64,
) -> AttrStatus {
    if out.is_null() {
        return AttrStatus::NullPointer;
    }
    let (Ok(level), Ok(p)) = (QuantileLevel::new(xi), RealProb::new(p)) else {
        return AttrStatus::DomainError;
    };
    if p.value() == 0.0 || size == 0 {
        return AttrStatus::DomainError;
    }
    unsafe { *out = negbinomial_quantile(level, size, p) };
    AttrStatus::Ok
}

/// Gamma quantile (shape–scale parameterization).
#[no_mangle]
pub unsafe extern "C" fn attr_gamma_quantile(
    xi: f64,
    shape: f64,
    scale: f64,
    out: *mut f64,
) -> AttrStatus {
    if out.is_null() {
        return AttrStatus::NullPointer;
    }
    let (Ok(level), Ok(params)) = (QuantileLevel::new(xi), GammaParams::new(shape, scale)) else {
        return AttrStatus::DomainError;
    };
    unsafe { *out = gamma_quantile(level, params) };
    AttrStatus::Ok
}

/// F-distribution quantile.
#[no_mangle]
pub unsafe extern "C" fn attr_f_quantile(xi: f64, nu1: f64, nu2: f64, out: *mut f64) -> AttrStatus {
    if out.is_null() {
        return AttrStatus::NullPointer;
    }
    let (Ok(level), Ok(params)) = (QuantileLevel::new(xi), FParams::new(nu1, nu2)) else {
        return AttrStatus::DomainError;
    };
    unsafe { *out = f_quantile(level, params) };
    AttrStatus::Ok
}

/// Known-parameter control limits on the chart's statistic scale.
#[no_mangle]
pub unsafe extern "C" fn attr_exact_limits_known(
    kind: AttrChartKind,
    param: f64,
    size: u64,
    alpha: f64,
    lcl_out: *mut f64,
    ucl_out: *mut f64,
) -> AttrStatus {
    if lcl_out.is_null() || ucl_out.is_null() {
        return AttrStatus::NullPointer;
    }
    match exact_limits_known(kind.into(), param, size, alpha) {
        Ok((lcl, ucl)) => {
            unsafe {
                *lcl_out = lcl;
                *ucl_out = ucl;
            }
            AttrStatus::Ok
        }
        Err(e) => AttrStatus::from(&e),
    }
}

/// New empty dataset; release with `attr_dataset_free`.
#[no_mangle]
pub extern "C" fn attr_dataset_new() -> *mut AttrDataset {
    Box::into_raw(Box::new(AttrDataset {
        records: Vec::new(),
    }))
}

/// Append one subgroup record. `subgroup_id` must be a NUL-terminated
/// UTF-8 string; `size` must be >= 1.
#[no_mangle]
pub unsafe extern "C" fn attr_dataset_push(
    dataset: *mut AttrDataset,
    subgroup_id: *const c_char,
    count: u64,
    size: u64,
) -> AttrStatus {
    if dataset.is_null() || subgroup_id.is_null() {
        return AttrStatus::NullPointer;
    }
    let id = match unsafe { CStr::from_ptr(subgroup_id) }.to_str() {
        Ok(s) => s.to_string(),
        Err(_) => return AttrStatus::InvalidUtf8,
    };
    if size == 0 {
        return AttrStatus::DomainError;
    }
    unsafe { &mut *dataset }
        .records
        .push(SubgroupRecord { id, count, size });
    AttrStatus::Ok
}

/// Number of records currently in the dataset.
#[no_mangle]
pub unsafe extern "C" fn attr_dataset_len(dataset: *const AttrDataset) -> usize {
    if dataset.is_null() {
        return 0;
    }
    unsafe { &*dataset }.records.len()
}

/// Release a dataset handle. A null pointer is ignored.
#[no_mangle]
pub unsafe extern "C" fn attr_dataset_free(dataset: *mut AttrDataset) {
    if !dataset.is_null() {
        drop(unsafe { Box::from_raw(dataset) });
    }
}

/// Build a chart from a dataset. Pass `known_param` as a pointer to the
/// known parameter value, or null to estimate it from the data. On success
/// writes a chart handle that must be released with `attr_chart_free`.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_build(
    dataset: *const AttrDataset,
    kind: AttrChartKind,
    alpha: f64,
    known_param: *const f64,
    out: *mut *mut AttrChart,
) -> AttrStatus {
    if dataset.is_null() || out.is_null() {
        return AttrStatus::NullPointer;
    }
    let records = unsafe { &*dataset }.records.clone();
    let data = match Dataset::new(records) {
        Ok(d) => d,
        Err(e) => return AttrStatus::from(&e),
    };
    let param = if known_param.is_null() {
        None
    } else {
        Some(unsafe { *known_param })
    };
    match build_chart(&data, kind.into(), alpha, param) {
        Ok(result) => {
            let ids = result
                .points
                .iter()
                .map(|p| CString::new(p.id.as_str()).expect("ids from C strings have no NUL"))
                .collect();
            unsafe { *out = Box::into_raw(Box::new(AttrChart { result, ids })) };
            AttrStatus::Ok
        }
        Err(e) => AttrStatus::from(&e),
    }
}

/// Number of points in the chart.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_len(chart: *const AttrChart) -> usize {
    if chart.is_null() {
        return 0;
    }
    unsafe { &*chart }.result.points.len()
}

/// Center line value.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_center(chart: *const AttrChart) -> f64 {
    if chart.is_null() {
        return f64::NAN;
    }
    unsafe { &*chart }.result.center
}

/// Two-sided tail probability the limits were built with.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_alpha(chart: *const AttrChart) -> f64 {
    if chart.is_null() {
        return f64::NAN;
    }
    unsafe { &*chart }.result.alpha
}

/// Statistic and limits for the point at `index`.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_point(
    chart: *const AttrChart,
    index: usize,
    out: *mut AttrChartPoint,
) -> AttrStatus {
    if chart.is_null() || out.is_null() {
        return AttrStatus::NullPointer;
    }
    let chart = unsafe { &*chart };
    let Some(p) = chart.result.points.get(index) else {
        return AttrStatus::IndexOutOfRange;
    };
    unsafe {
        *out = AttrChartPoint {
            statistic: p.statistic,
            lcl: p.lcl,
            ucl: p.ucl,
            signal: p.signal,
        };
    }
    AttrStatus::Ok
}

/// Subgroup id of the point at `index`, borrowed from the chart handle;
/// valid until `attr_chart_free`. Null when the index is out of range.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_point_id(chart: *const AttrChart, index: usize) -> *const c_char {
    if chart.is_null() {
        return std::ptr::null();
    }
    match unsafe { &*chart }.ids.get(index) {
        Some(id) => id.as_ptr(),
        None => std::ptr::null(),
    }
}

/// True when the chart's parameter was pooled from the data.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_is_estimated(chart: *const AttrChart) -> bool {
    if chart.is_null() {
        return false;
    }
    matches!(
        unsafe { &*chart }.result.parameter_source,
        ParameterSource::Estimated { .. }
    )
}

/// The charted parameter: the known value, or the pooled point estimate.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_parameter(chart: *const AttrChart) -> f64 {
    if chart.is_null() {
        return f64::NAN;
    }
    match &unsafe { &*chart }.result.parameter_source {
        ParameterSource::Known(v) => *v,
        ParameterSource::Estimated { point, .. } => *point,
    }
}

/// Fiducial interval for an estimated parameter. Fails with `DomainError`
/// when the parameter was supplied as known.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_estimate_interval(
    chart: *const AttrChart,
    out: *mut AttrInterval,
) -> AttrStatus {
    if chart.is_null() || out.is_null() {
        return AttrStatus::NullPointer;
    }
    match &unsafe { &*chart }.result.parameter_source {
        ParameterSource::Estimated { interval, .. } => {
            unsafe { *out = (*interval).into() };
            AttrStatus::Ok
        }
        ParameterSource::Known(_) => AttrStatus::DomainError,
    }
}

/// Release a chart handle. A null pointer is ignored.
#[no_mangle]
pub unsafe extern "C" fn attr_chart_free(chart: *mut AttrChart) {
    if !chart.is_null() {
        drop(unsafe { Box::from_raw(chart) });
    }
}

/// Monte Carlo coverage of fiducial vs normal-approximation limits.
/// Bit-identical for identical inputs regardless of thread count.
#[no_mangle]
pub unsafe extern "C" fn attr_run_coverage(
    distribution: AttrDistribution,
    true_param: f64,
    n: u64,
    alpha: f64,
    replications: u64,
    seed: u64,
    out: *mut AttrCoverageReport,
) -> AttrStatus {
    if out.is_null() {
        return AttrStatus::NullPointer;
    }
    match run_coverage(
        distribution.into(),
        true_param,
        n,
        alpha,
        replications,
        seed,
    ) {
        Ok(report) => {
            unsafe {
                *out = AttrCoverageReport {
                    distribution,
                    true_param: report.true_param,
                    n: report.n,
                    alpha: report.alpha,
                    replications: report.replications,
                    seed: report.seed,
                    fiducial_coverage: report.fiducial_coverage,
                    normal_coverage: report.normal_coverage,
                    mean_width_fiducial: report.mean_width_fiducial,
                    mean_width_normal: report.mean_width_normal,
                };
            }
            AttrStatus::Ok
        }
        Err(e) => AttrStatus::from(&e),
    }
}
