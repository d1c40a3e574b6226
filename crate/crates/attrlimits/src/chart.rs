//! Attribute control charts: p, np, c, u and g.
//!
//! With a known parameter, the limits for each point are exact quantiles of
//! the relevant discrete distribution at that subgroup's size. With an
//! estimated parameter, the pooled point estimate drives the plug-in
//! limits and the pooled fiducial interval is attached as
//! `ParameterSource::Estimated` metadata rather than widening the limits.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fiducial::{
    binom_fiducial, check_alpha, geometric_fiducial, poisson_fiducial, tail_levels,
    BinomialObservation, GeometricObservation, Interval, PoissonObservation,
};
use crate::quantile::{binomial_quantile, negbinomial_quantile, poisson_quantile};
use crate::special::RealProb;

/// Two-sided tail probability matching the classical three-sigma limits.
pub const DEFAULT_CHART_ALPHA: f64 = 0.0027;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChartKind {
    /// Fraction nonconforming (binomial, scaled by subgroup size).
    P,
    /// Count nonconforming (binomial).
    Np,
    /// Defect count (Poisson).
    C,
    /// Defects per unit (Poisson, scaled by subgroup size).
    U,
    /// Failures between successes (geometric / negative binomial).
    G,
}

impl ChartKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChartKind::P => "p",
            ChartKind::Np => "np",
            ChartKind::C => "c",
            ChartKind::U => "u",
            ChartKind::G => "g",
        }
    }
}

impl FromStr for ChartKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p" => Ok(ChartKind::P),
            "np" => Ok(ChartKind::Np),
            "c" => Ok(ChartKind::C),
            "u" => Ok(ChartKind::U),
            "g" => Ok(ChartKind::G),
            other => Err(Error::Domain(format!(
                "unknown chart kind {other:?}; expected one of p, np, c, u, g"
            ))),
        }
    }
}

/// One subgroup: an identifier, the observed count and the subgroup size.
/// For g charts, `size` is the number of geometric observations pooled
/// into the subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupRecord {
    pub id: String,
    pub count: u64,
    pub size: u64,
}

/// An ordered collection of subgroup records.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dataset {
    records: Vec<SubgroupRecord>,
}

impl Dataset {
    pub fn new(records: Vec<SubgroupRecord>) -> Result<Self> {
        for r in &records {
            if r.size == 0 {
                return Err(Error::Domain(format!(
                    "subgroup {:?}: size must be >= 1",
                    r.id
                )));
            }
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[SubgroupRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Where the charted parameter came from.
#[derive(Debug, Clone, PartialEq)]
pub enum ParameterSource {
    /// Supplied by the caller and treated as the true value.
    Known(f64),
    /// Pooled from the data; the fiducial interval quantifies the
    /// estimate's uncertainty.
    Estimated { point: f64, interval: Interval },
}

/// One plotted point with its limits on the chart's statistic scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartPoint {
    pub id: String,
    pub statistic: f64,
    pub lcl: f64,
    pub ucl: f64,
    pub signal: bool,
}

/// A complete control chart.
///
/// For the count-scale kinds (np, c, g) with varying subgroup sizes the
/// center line uses the mean subgroup size; with equal sizes it is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartResult {
    pub kind: ChartKind,
    pub center: f64,
    pub alpha: f64,
    pub points: Vec<ChartPoint>,
    pub parameter_source: ParameterSource,
}

fn validate_param(kind: ChartKind, param: f64) -> Result<f64> {
    match kind {
        ChartKind::P | ChartKind::Np => {
            RealProb::new(param)
                .map_err(|_| Error::Domain(format!("p must lie in [0, 1], got {param}")))?;
        }
        ChartKind::C | ChartKind::U => {
            if !param.is_finite() || param < 0.0 {
                return Err(Error::Domain(format!(
                    "rate must be finite and >= 0, got {param}"
                )));
            }
        }
        ChartKind::G => {
            RealProb::new(param)
                .map_err(|_| Error::Domain(format!("p must lie in (0, 1], got {param}")))?;
            if param == 0.0 {
                return Err(Error::Domain("g-chart p must be positive".into()));
            }
        }
    }
    Ok(param)
}

/// Control limits under a known parameter, as distribution quantiles at
/// α/2 and 1 − α/2, on the chart's plotting scale (p and u divide by the
/// subgroup size).
pub fn exact_limits_known(
    kind: ChartKind,
    param: f64,
    size: u64,
    alpha: f64,
) -> Result<(f64, f64)> {
    if size == 0 {
        return Err(Error::Domain("subgroup size must be >= 1".into()));
    }
    let alpha = check_alpha(alpha)?;
    let param = validate_param(kind, param)?;
    let (lo_level, hi_level) = tail_levels(alpha);
    match kind {
        ChartKind::P | ChartKind::Np => {
            let p = RealProb::new(param).expect("validated");
            let lcl = binomial_quantile(lo_level, size, p) as f64;
            let ucl = binomial_quantile(hi_level, size, p) as f64;
            if kind == ChartKind::P {
                Ok((lcl / size as f64, ucl / size as f64))
            } else {
                Ok((lcl, ucl))
            }
        }
        ChartKind::C | ChartKind::U => {
            let mean = param * size as f64;
            let (lcl, ucl) = if mean == 0.0 {
                (0.0, 0.0)
            } else {
                (
                    poisson_quantile(lo_level, mean) as f64,
                    poisson_quantile(hi_level, mean) as f64,
                )
            };
            if kind == ChartKind::U {
                Ok((lcl / size as f64, ucl / size as f64))
            } else {
                Ok((lcl, ucl))
            }
        }
        ChartKind::G => {
            let p = RealProb::new(param).expect("validated");
            Ok((
                negbinomial_quantile(lo_level, size, p) as f64,
                negbinomial_quantile(hi_level, size, p) as f64,
            ))
        }
    }
}

/// Build a control chart from subgroup records.
///
/// With `known_param` the limits treat it as the true value. Otherwise the
/// parameter is pooled from the data (count/size totals for p, np, c and
/// u; the per-record geometric estimate for g), per-point limits plug the
/// pooled estimate into the exact quantile limits, and the pooled fiducial
/// interval rides along in `parameter_source`.
pub fn build_chart(
    data: &Dataset,
    kind: ChartKind,
    alpha: f64,
    known_param: Option<f64>,
) -> Result<ChartResult> {
    let alpha = check_alpha(alpha)?;
    let records = data.records();
    if records.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if matches!(kind, ChartKind::P | ChartKind::Np) {
        for r in records {
            if r.count > r.size {
                return Err(Error::CountExceedsSize {
                    subgroup: r.id.clone(),
                    count: r.count,
                    size: r.size,
                });
            }
        }
    }
    let total_count: u64 = records.iter().map(|r| r.count).sum();
    let total_size: u64 = records.iter().map(|r| r.size).sum();
    let mean_size = total_size as f64 / records.len() as f64;

    let (param, parameter_source) = match known_param {
        Some(value) => (validate_param(kind, value)?, ParameterSource::Known(value)),
        None => match kind {
            ChartKind::P | ChartKind::Np => {
                let point = total_count as f64 / total_size as f64;
                let interval =
                    binom_fiducial(BinomialObservation::new(total_size, total_count)?, alpha)?;
                (point, ParameterSource::Estimated { point, interval })
            }
            ChartKind::C | ChartKind::U => {
                let point = total_count as f64 / total_size as f64;
                let interval =
                    poisson_fiducial(PoissonObservation::new(total_size, total_count)?, alpha)?;
                (point, ParameterSource::Estimated { point, interval })
            }
            ChartKind::G => {
                let m = records.len() as u64;
                let point = m as f64 / (m + total_count) as f64;
                let interval =
                    geometric_fiducial(GeometricObservation::new(m, total_count)?, alpha)?;
                (point, ParameterSource::Estimated { point, interval })
            }
        },
    };

    let center = match kind {
        ChartKind::P => param,
        ChartKind::Np => param * mean_size,
        ChartKind::C => param * mean_size,
        ChartKind::U => param,
        ChartKind::G => mean_size * (1.0 - param) / param,
    };

    let mut points = Vec::with_capacity(records.len());
    for r in records {
        let (lcl, ucl) = exact_limits_known(kind, param, r.size, alpha)?;
        let statistic = match kind {
            ChartKind::P | ChartKind::U => r.count as f64 / r.size as f64,
            ChartKind::Np | ChartKind::C | ChartKind::G => r.count as f64,
        };
        let signal = statistic < lcl || statistic > ucl;
        points.push(ChartPoint {
            id: r.id.clone(),
            statistic,
            lcl,
            ucl,
            signal,
        });
    }

    Ok(ChartResult {
        kind,
        center,
        alpha,
        points,
        parameter_source,
    })
}
