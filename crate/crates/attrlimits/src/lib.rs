//! Exact and fiducial control limits for attribute count data.
//!
//! Attribute (count) quality data is typically modeled by the binomial,
//! Poisson or geometric distribution. This crate computes:
//!
//! - **Exact control limits** when the distribution parameter is known, as
//!   quantiles of the underlying discrete distribution ([`quantile`]).
//! - **Fiducial limits** when the parameter is estimated from data, by
//!   inverting the relation between the tail probabilities and the
//!   parameter ([`fiducial`]), with independent tail-inversion oracles for
//!   every closed form.
//! - **Control charts** (p, np, c, u and g) built on those limits
//!   ([`chart`]).
//! - **Monte Carlo coverage studies** comparing the fiducial limits with
//!   the classical normal-approximation limits ([`simulation`]).
//!
//! The `attrlimits` binary exposes all of this as `limits`, `chart` and
//! `simulate` subcommands; [`cli`] holds its ingestion and rendering code.

pub mod chart;
pub mod cli;
pub mod error;
pub mod fiducial;
pub mod quantile;
pub mod simulation;
pub mod special;

pub use chart::{build_chart, exact_limits_known, ChartKind, ChartPoint, ChartResult, Dataset,
    ParameterSource, SubgroupRecord, DEFAULT_CHART_ALPHA};
pub use error::{Error, Result};
pub use fiducial::{
    binom_fiducial, binom_fiducial_oracle, geometric_fiducial, geometric_fiducial_oracle,
    geometric_upper_candidates, poisson_fiducial, poisson_fiducial_oracle, BinomialObservation,
    GeometricObservation, GeometricUpperCandidates, Interval, PoissonObservation,
};
pub use quantile::{
    binomial_quantile, f_quantile, gamma_quantile, negbinomial_quantile, poisson_quantile,
    FParams, GammaParams, QuantileLevel,
};
pub use simulation::{
    normal_approx_interval, run_coverage, CoverageReport, DistributionKind,
};
pub use special::{ln_gamma, reg_inc_beta, reg_inc_gamma_lower, RealProb};
