//! Fiducial (equal-tails) confidence limits for the binomial, Poisson and
//! geometric parameters, with independent tail-inversion oracles.
//!
//! Each closed form places probability α/2 in each tail. The `*_oracle`
//! functions solve the defining tail equations directly — tail sums by
//! direct summation, roots by bisection — and exist to validate the closed
//! forms; the test suite sweeps both and requires agreement to 1e-9.
//!
//! α may be arbitrarily small (down to the resolution of f64), but levels
//! below about 1e-12 are precision-limited: the quantile inversions bottom
//! out at the double-precision noise floor.

use crate::error::{Error, Result};
use crate::quantile::{f_quantile, gamma_quantile, FParams, GammaParams, QuantileLevel};

/// A two-sided confidence interval for a distribution parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
    /// Confidence level, 1 − α.
    pub confidence: f64,
}

impl Interval {
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// x nonconforming units observed in n trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialObservation {
    trials: u64,
    count: u64,
}

impl BinomialObservation {
    pub fn new(trials: u64, count: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::Domain("binomial trials must be >= 1".into()));
        }
        if count > trials {
            return Err(Error::Domain(format!(
                "binomial count {count} exceeds trials {trials}"
            )));
        }
        Ok(Self { trials, count })
    }

    pub fn trials(self) -> u64 {
        self.trials
    }

    pub fn count(self) -> u64 {
        self.count
    }
}

/// Total count y over a sample of n Poisson observations; the total is
/// itself Poisson with mean n·λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoissonObservation {
    sample_size: u64,
    total: u64,
}

impl PoissonObservation {
    pub fn new(sample_size: u64, total: u64) -> Result<Self> {
        if sample_size == 0 {
            return Err(Error::Domain("poisson sample size must be >= 1".into()));
        }
        Ok(Self { sample_size, total })
    }

    pub fn sample_size(self) -> u64 {
        self.sample_size
    }

    pub fn total(self) -> u64 {
        self.total
    }
}

/// Total failure count y over a sample of n geometric observations, each
/// counting failures before the first success; the total is negative
/// binomial with size n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometricObservation {
    sample_size: u64,
    total: u64,
}

impl GeometricObservation {
    pub fn new(sample_size: u64, total: u64) -> Result<Self> {
        if sample_size == 0 {
            return Err(Error::Domain("geometric sample size must be >= 1".into()));
        }
        Ok(Self { sample_size, total })
    }

    pub fn sample_size(self) -> u64 {
        self.sample_size
    }

    pub fn total(self) -> u64 {
        self.total
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha >= 1.0 {
        return Err(Error::Domain(format!(
            "alpha must lie strictly in (0, 1), got {alpha}"
        )));
    }
    Ok(alpha)
}

/// Quantile levels α/2 and 1 − α/2, clamped away from 0 and 1 so that
/// subnormal α stays representable.
pub(crate) fn tail_levels(alpha: f64) -> (QuantileLevel, QuantileLevel) {
    let lo = (0.5 * alpha).max(1e-300);
    let hi = (1.0 - 0.5 * alpha).min(1.0 - 1e-16);
    (
        QuantileLevel::new(lo).expect("lower tail level lies in (0, 1)"),
        QuantileLevel::new(hi).expect("upper tail level lies in (0, 1)"),
    )
}

/// Fiducial limits for the binomial parameter p via F quantiles.
///
/// The lower limit is 0 when x = 0 and the upper limit is 1 when x = n.
pub fn binom_fiducial(obs: BinomialObservation, alpha: f64) -> Result<Interval> {
    let alpha = check_alpha(alpha)?;
    let n = obs.trials();
    let x = obs.count();
    let (lo_level, hi_level) = tail_levels(alpha);
    let lower = if x == 0 {
        0.0
    } else {
        let fq = f_quantile(
            lo_level,
            FParams::new(2.0 * x as f64, 2.0 * (n - x + 1) as f64)?,
        );
        1.0 / (1.0 + (n - x + 1) as f64 / (x as f64 * fq))
    };
    let upper = if x == n {
        1.0
    } else {
        let fq = f_quantile(
            hi_level,
            FParams::new(2.0 * (x + 1) as f64, 2.0 * (n - x) as f64)?,
        );
        1.0 / (1.0 + (n - x) as f64 / ((x + 1) as f64 * fq))
    };
    Ok(Interval {
        lower,
        upper,
        confidence: 1.0 - alpha,
    })
}

/// Tail-inversion oracle for `binom_fiducial`: solves the equal-tail
/// equations by bisection on p, with tail sums computed by direct
/// summation using exact binomial coefficients.
pub fn binom_fiducial_oracle(obs: BinomialObservation, alpha: f64) -> Result<Interval> {
    let alpha = check_alpha(alpha)?;
    let n = obs.trials();
    let x = obs.count();
    let target = 0.5 * alpha;
    // P(X >= x; p) increases with p: small p makes seeing x or more unlikely.
    let lower = if x == 0 {
        0.0
    } else {
        bisect_unit(|p| binom_upper_tail(n, x, p), target, true)
    };
    // P(X <= x; p) decreases with p.
    let upper = if x == n {
        1.0
    } else {
        bisect_unit(|p| binom_lower_tail(n, x, p), target, false)
    };
    Ok(Interval {
        lower,
        upper,
        confidence: 1.0 - alpha,
    })
}

/// Fiducial limits for the Poisson mean λ (per observation) via gamma
/// quantiles. The lower limit is 0 when y = 0.
pub fn poisson_fiducial(obs: PoissonObservation, alpha: f64) -> Result<Interval> {
    let alpha = check_alpha(alpha)?;
    let n = obs.sample_size() as f64;
    let y = obs.total();
    let (lo_level, hi_level) = tail_levels(alpha);
    let lower = if y == 0 {
        0.0
    } else {
        gamma_quantile(lo_level, GammaParams::new(y as f64, 2.0)?) / (2.0 * n)
    };
    let upper = gamma_quantile(hi_level, GammaParams::new((y + 1) as f64, 2.0)?) / (2.0 * n);
    Ok(Interval {
        lower,
        upper,
        confidence: 1.0 - alpha,
    })
}

/// Tail-inversion oracle for `poisson_fiducial`: bisection in λ on a
/// geometrically expanded bracket, Poisson tails by direct summation.
pub fn poisson_fiducial_oracle(obs: PoissonObservation, alpha: f64) -> Result<Interval> {
    let alpha = check_alpha(alpha)?;
    let n = obs.sample_size() as f64;
    let y = obs.total();
    let target = 0.5 * alpha;
    let hi0 = 2.0 * (y + 1) as f64 / n;
    // P(Y >= y; λ) = 1 − CDF(y − 1; nλ) increases with λ; no positive
    // solution exists at y = 0, where the convention pins the limit at 0.
    let lower = if y == 0 {
        0.0
    } else {
        solve_rate(|lam| 1.0 - poisson_cdf(y - 1, n * lam), target, hi0, true)
    };
    // P(Y <= y; λ) decreases with λ.
    let upper = solve_rate(|lam| poisson_cdf(y, n * lam), target, hi0, false);
    Ok(Interval {
        lower,
        upper,
        confidence: 1.0 - alpha,
    })
}

/// Fiducial limits for the geometric parameter p via F quantiles.
///
/// The upper limit is 1 when y = 0. The F-based closed form for the upper
/// limit circulates in two algebraic variants that differ by an outer
/// reciprocal; only one of them is a probability. This adopts the variant
/// validated against `geometric_fiducial_oracle` (see
/// [`geometric_upper_candidates`], which exposes both for re-validation).
pub fn geometric_fiducial(obs: GeometricObservation, alpha: f64) -> Result<Interval> {
    let alpha = check_alpha(alpha)?;
    let n = obs.sample_size();
    let y = obs.total();
    let (_, hi_level) = tail_levels(alpha);
    let fq = f_quantile(
        hi_level,
        FParams::new(2.0 * (y + 1) as f64, 2.0 * n as f64)?,
    );
    let lower = 1.0 / (1.0 + (y + 1) as f64 / n as f64 * fq);
    let upper = if y == 0 {
        1.0
    } else {
        geometric_upper_candidates(obs, alpha)?.ratio
    };
    Ok(Interval {
        lower,
        upper,
        confidence: 1.0 - alpha,
    })
}

/// The two algebraic readings of the F-based closed form for the geometric
/// upper limit, with F the 1 − α/2 quantile on (2n, 2y) degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricUpperCandidates {
    /// nF / (y + nF); always in [0, 1]. The adopted form.
    pub ratio: f64,
    /// (y + nF) / (nF), the reciprocal reading; exceeds 1 whenever y ≥ 1.
    pub reciprocal: f64,
}

/// Both candidate upper-limit forms, for validation against the oracle.
/// Requires y ≥ 1; at y = 0 the second degree of freedom vanishes and the
/// convention `upper = 1` applies instead.
pub fn geometric_upper_candidates(
    obs: GeometricObservation,
    alpha: f64,
) -> Result<GeometricUpperCandidates> {
    let alpha = check_alpha(alpha)?;
    let n = obs.sample_size();
    let y = obs.total();
    if y == 0 {
        return Err(Error::Domain(
            "upper-limit candidates need y >= 1; at y = 0 the upper limit is 1".into(),
        ));
    }
    let (_, hi_level) = tail_levels(alpha);
    let fq = f_quantile(hi_level, FParams::new(2.0 * n as f64, 2.0 * y as f64)?);
    let nf = n as f64 * fq;
    let ratio = nf / (y as f64 + nf);
    Ok(GeometricUpperCandidates {
        ratio,
        reciprocal: 1.0 / ratio,
    })
}

/// Tail-inversion oracle for `geometric_fiducial`, on the negative
/// binomial distribution of the total failure count.
pub fn geometric_fiducial_oracle(obs: GeometricObservation, alpha: f64) -> Result<Interval> {
    let alpha = check_alpha(alpha)?;
    let n = obs.sample_size();
    let y = obs.total();
    let target = 0.5 * alpha;
    // Small p inflates the failure count, so P(Y <= y; p) increases with p
    // and P(Y >= y; p) decreases; both are probed before bisecting.
    let lower_tail = |p: f64| nb_lower_tail(n, y, p);
    assert!(
        lower_tail(1e-9) <= lower_tail(1.0 - 1e-9),
        "negative binomial lower tail must increase in p"
    );
    let lower = bisect_unit(lower_tail, target, true);
    let upper = if y == 0 {
        // P(Y >= 0; p) = 1 for every p: no solution, upper limit 1.
        1.0
    } else {
        let upper_tail = |p: f64| 1.0 - nb_lower_tail(n, y - 1, p);
        assert!(
            upper_tail(1e-9) >= upper_tail(1.0 - 1e-9),
            "negative binomial upper tail must decrease in p"
        );
        bisect_unit(upper_tail, target, false)
    };
    Ok(Interval {
        lower,
        upper,
        confidence: 1.0 - alpha,
    })
}

// --- tail sums by direct summation ---------------------------------------

// Exact binomial coefficient; exact in f64 through n = 56.
fn binom_coeff(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c
}

// P(X >= x) for X ~ Binomial(n, p).
fn binom_upper_tail(n: u64, x: u64, p: f64) -> f64 {
    (x..=n)
        .map(|i| binom_coeff(n, i) * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32))
        .sum()
}

// P(X <= x) for X ~ Binomial(n, p).
fn binom_lower_tail(n: u64, x: u64, p: f64) -> f64 {
    (0..=x.min(n))
        .map(|i| binom_coeff(n, i) * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32))
        .sum()
}

// P(X <= k) for X ~ Poisson(mu).
fn poisson_cdf(k: u64, mu: f64) -> f64 {
    let mut term = (-mu).exp();
    let mut cum = term;
    for i in 1..=k {
        term *= mu / i as f64;
        cum += term;
    }
    cum
}

// P(Y <= k) for Y negative binomial (size n, counting failures).
fn nb_lower_tail(n: u64, k: u64, p: f64) -> f64 {
    if p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    let mut term = if n <= i32::MAX as u64 {
        p.powi(n as i32)
    } else {
        (n as f64 * p.ln()).exp()
    };
    let mut cum = term;
    for i in 1..=k {
        term = term * (n + i - 1) as f64 / i as f64 * (1.0 - p);
        cum += term;
    }
    cum
}

// --- root finders ---------------------------------------------------------

// Bisection on [0, 1] for g(p) = target, to |Δp| <= 1e-12.
fn bisect_unit(g: impl Fn(f64) -> f64, target: f64, increasing: bool) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    for _ in 0..200 {
        if hi - lo <= 1e-12 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let below = g(mid) < target;
        if below == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// Bisection in a nonnegative rate for g(rate) = target; the bracket starts
// at [0, hi0] and the top is doubled until g crosses the target. Relative
// tolerance 1e-12.
fn solve_rate(g: impl Fn(f64) -> f64, target: f64, hi0: f64, increasing: bool) -> f64 {
    let mut lo = 0.0f64;
    let mut hi = hi0.max(1e-12);
    for _ in 0..200 {
        let v = g(hi);
        let crossed = if increasing { v >= target } else { v <= target };
        if crossed {
            break;
        }
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..500 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-12 * (1.0 + mid) {
            break;
        }
        let below = g(mid) < target;
        if below == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
