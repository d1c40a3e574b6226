//! Monte Carlo coverage studies: fiducial limits versus the classical
//! normal-approximation limits.
//!
//! Every replicate draws its variates from its own counter-keyed stream,
//! so a report depends only on the inputs, never on thread scheduling.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc;

use crate::error::{Error, Result};
use crate::fiducial::{
    binom_fiducial, check_alpha, geometric_fiducial, poisson_fiducial, BinomialObservation,
    GeometricObservation, Interval, PoissonObservation,
};
use crate::quantile::standard_normal_quantile;
use crate::special::ln_gamma_raw;

/// The three attribute-data models the simulator understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistributionKind {
    Binomial,
    Poisson,
    Geometric,
}

impl DistributionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DistributionKind::Binomial => "binomial",
            DistributionKind::Poisson => "poisson",
            DistributionKind::Geometric => "geometric",
        }
    }
}

impl FromStr for DistributionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "binom" | "binomial" => Ok(DistributionKind::Binomial),
            "poisson" => Ok(DistributionKind::Poisson),
            "geom" | "geometric" => Ok(DistributionKind::Geometric),
            other => Err(Error::Domain(format!(
                "unknown distribution {other:?}; expected binom, poisson or geom"
            ))),
        }
    }
}

/// Empirical coverage and width statistics from one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub distribution: DistributionKind,
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

/// Classical large-sample interval from the central limit theorem, clamped
/// to the parameter's natural range.
///
/// Binomial: p̂ ± z·sqrt(p̂(1 − p̂)/n). Poisson: λ̂ ± z·sqrt(λ̂/n).
/// Geometric: p̂ = n/(n + y) with delta-method variance p̂²(1 − p̂)/n.
/// At a boundary observation (x = 0 or x = n) the binomial interval
/// degenerates to zero width — the known failure the fiducial limits fix.
pub fn normal_approx_interval(
    distribution: DistributionKind,
    statistic: u64,
    n: u64,
    alpha: f64,
) -> Result<Interval> {
    if n == 0 {
        return Err(Error::Domain("sample size must be >= 1".into()));
    }
    let alpha = check_alpha(alpha)?;
    let z = standard_normal_quantile((1.0 - 0.5 * alpha).min(1.0 - 1e-16));
    let nf = n as f64;
    let (center, se, floor, ceil) = match distribution {
        DistributionKind::Binomial => {
            if statistic > n {
                return Err(Error::Domain(format!(
                    "binomial count {statistic} exceeds trials {n}"
                )));
            }
            let p_hat = statistic as f64 / nf;
            (p_hat, (p_hat * (1.0 - p_hat) / nf).sqrt(), 0.0, 1.0)
        }
        DistributionKind::Poisson => {
            let lambda_hat = statistic as f64 / nf;
            (lambda_hat, (lambda_hat / nf).sqrt(), 0.0, f64::INFINITY)
        }
        DistributionKind::Geometric => {
            let p_hat = nf / (nf + statistic as f64);
            (p_hat, (p_hat * p_hat * (1.0 - p_hat) / nf).sqrt(), 0.0, 1.0)
        }
    };
    Ok(Interval {
        lower: (center - z * se).max(floor),
        upper: (center + z * se).min(ceil),
        confidence: 1.0 - alpha,
    })
}

/// Draw `replications` sufficient statistics from the true distribution,
/// compute both interval types for each, and tally coverage of
/// `true_param` and mean widths.
///
/// Reports are bit-identical for identical inputs regardless of how many
/// threads run the replicates.
pub fn run_coverage(
    distribution: DistributionKind,
    true_param: f64,
    n: u64,
    alpha: f64,
    replications: u64,
    seed: u64,
) -> Result<CoverageReport> {
    let threads = std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1);
    run_coverage_with_threads(distribution, true_param, n, alpha, replications, seed, threads)
}

const CHUNK: u64 = 4096;

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    fiducial_hits: u64,
    normal_hits: u64,
    fiducial_width: f64,
    normal_width: f64,
}

pub(crate) fn run_coverage_with_threads(
    distribution: DistributionKind,
    true_param: f64,
    n: u64,
    alpha: f64,
    replications: u64,
    seed: u64,
    threads: usize,
) -> Result<CoverageReport> {
    if n == 0 {
        return Err(Error::Domain("sample size must be >= 1".into()));
    }
    if replications == 0 {
        return Err(Error::Domain("replications must be >= 1".into()));
    }
    let alpha = check_alpha(alpha)?;
    match distribution {
        DistributionKind::Binomial | DistributionKind::Geometric => {
            if !true_param.is_finite() || true_param <= 0.0 || true_param >= 1.0 {
                return Err(Error::Domain(format!(
                    "probability parameter must lie strictly in (0, 1), got {true_param}"
                )));
            }
        }
        DistributionKind::Poisson => {
            if !true_param.is_finite() || true_param <= 0.0 {
                return Err(Error::Domain(format!(
                    "poisson mean must be positive, got {true_param}"
                )));
            }
        }
    }

    let n_chunks = replications.div_ceil(CHUNK);
    let mut partials: Vec<Tally> = vec![Tally::default(); n_chunks as usize];
    let workers = threads.clamp(1, n_chunks as usize);
    if workers == 1 {
        for (index, slot) in partials.iter_mut().enumerate() {
            *slot = run_chunk(
                distribution,
                true_param,
                n,
                alpha,
                seed,
                index as u64,
                replications,
            );
        }
    } else {
        let next = AtomicU64::new(0);
        let (tx, rx) = mpsc::channel::<(u64, Tally)>();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                let tx = tx.clone();
                let next = &next;
                scope.spawn(move || loop {
                    let index = next.fetch_add(1, Ordering::Relaxed);
                    if index >= n_chunks {
                        break;
                    }
                    let tally = run_chunk(
                        distribution,
                        true_param,
                        n,
                        alpha,
                        seed,
                        index,
                        replications,
                    );
                    if tx.send((index, tally)).is_err() {
                        break;
                    }
                });
            }
            drop(tx);
            for (index, tally) in rx {
                partials[index as usize] = tally;
            }
        });
    }

    // Fold in fixed chunk order so the float sums do not depend on how
    // chunks were scheduled.
    let mut total = Tally::default();
    for t in &partials {
        total.fiducial_hits += t.fiducial_hits;
        total.normal_hits += t.normal_hits;
        total.fiducial_width += t.fiducial_width;
        total.normal_width += t.normal_width;
    }
    let reps = replications as f64;
    Ok(CoverageReport {
        distribution,
        true_param,
        n,
        alpha,
        replications,
        seed,
        fiducial_coverage: total.fiducial_hits as f64 / reps,
        normal_coverage: total.normal_hits as f64 / reps,
        mean_width_fiducial: total.fiducial_width / reps,
        mean_width_normal: total.normal_width / reps,
    })
}

#[allow(clippy::too_many_arguments)]
fn run_chunk(
    distribution: DistributionKind,
    true_param: f64,
    n: u64,
    alpha: f64,
    seed: u64,
    chunk_index: u64,
    replications: u64,
) -> Tally {
    let start = chunk_index * CHUNK;
    let end = ((chunk_index + 1) * CHUNK).min(replications);
    // The sufficient statistic takes few distinct values, so intervals are
    // memoized per chunk; recomputation elsewhere yields identical values.
    let mut cache: HashMap<u64, (Interval, Interval)> = HashMap::new();
    let mut tally = Tally::default();
    for replicate in start..end {
        let mut rng = ReplicateRng::new(seed, replicate);
        let statistic = draw_statistic(distribution, true_param, n, &mut rng);
        let (fiducial, normal) = *cache.entry(statistic).or_insert_with(|| {
            intervals_for(distribution, n, statistic, alpha)
        });
        if fiducial.contains(true_param) {
            tally.fiducial_hits += 1;
        }
        if normal.contains(true_param) {
            tally.normal_hits += 1;
        }
        tally.fiducial_width += fiducial.width();
        tally.normal_width += normal.width();
    }
    tally
}

fn intervals_for(
    distribution: DistributionKind,
    n: u64,
    statistic: u64,
    alpha: f64,
) -> (Interval, Interval) {
    let fiducial = match distribution {
        DistributionKind::Binomial => binom_fiducial(
            BinomialObservation::new(n, statistic).expect("drawn statistic is valid"),
            alpha,
        ),
        DistributionKind::Poisson => poisson_fiducial(
            PoissonObservation::new(n, statistic).expect("drawn statistic is valid"),
            alpha,
        ),
        DistributionKind::Geometric => geometric_fiducial(
            GeometricObservation::new(n, statistic).expect("drawn statistic is valid"),
            alpha,
        ),
    }
    .expect("validated inputs");
    let normal =
        normal_approx_interval(distribution, statistic, n, alpha).expect("validated inputs");
    (fiducial, normal)
}

fn draw_statistic(
    distribution: DistributionKind,
    true_param: f64,
    n: u64,
    rng: &mut ReplicateRng,
) -> u64 {
    match distribution {
        DistributionKind::Binomial => draw_binomial(n, true_param, rng),
        DistributionKind::Poisson => draw_poisson(n as f64 * true_param, rng),
        DistributionKind::Geometric => (0..n).map(|_| draw_geometric(true_param, rng)).sum(),
    }
}

// Inversion by CDF scan for small n, Bernoulli summation otherwise.
fn draw_binomial(n: u64, p: f64, rng: &mut ReplicateRng) -> u64 {
    if n <= 64 {
        let u = rng.next_open01();
        let q = 1.0 - p;
        let mut pmf = q.powi(n as i32);
        let mut cum = pmf;
        let mut k = 0u64;
        let ratio = p / q;
        while cum < u && k < n {
            k += 1;
            pmf *= (n - k + 1) as f64 / k as f64 * ratio;
            cum += pmf;
        }
        k
    } else {
        (0..n).filter(|_| rng.next_open01() < p).count() as u64
    }
}

// Product-of-uniforms method for small means; for large means, rejection
// beneath a Cauchy envelope (a normal envelope cannot dominate the Poisson
// tail, so the heavy-tailed hat is used instead).
fn draw_poisson(mean: f64, rng: &mut ReplicateRng) -> u64 {
    if mean <= 30.0 {
        let limit = (-mean).exp();
        let mut k = 0u64;
        let mut product = rng.next_open01();
        while product > limit {
            k += 1;
            product *= rng.next_open01();
        }
        k
    } else {
        let sq = (2.0 * mean).sqrt();
        let ln_mean = mean.ln();
        let g = mean * ln_mean - ln_gamma_raw(mean + 1.0);
        loop {
            let mut y;
            let mut em;
            loop {
                y = (std::f64::consts::PI * rng.next_open01()).tan();
                em = sq * y + mean;
                if em >= 0.0 {
                    break;
                }
            }
            em = em.floor();
            let t = 0.9 * (1.0 + y * y) * (em * ln_mean - ln_gamma_raw(em + 1.0) - g).exp();
            if rng.next_open01() <= t {
                return em as u64;
            }
        }
    }
}

// Failures before the first success: floor(ln U / ln(1 − p)).
fn draw_geometric(p: f64, rng: &mut ReplicateRng) -> u64 {
    if p == 1.0 {
        return 0;
    }
    (rng.next_open01().ln() / (1.0 - p).ln()).floor() as u64
}

/// A splitmix64 stream whose starting state is keyed by (seed, replicate),
/// so replicate streams are independent of scheduling.
pub(crate) struct ReplicateRng {
    state: u64,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl ReplicateRng {
    pub(crate) fn new(seed: u64, replicate: u64) -> Self {
        let keyed = seed.wrapping_add(GOLDEN.wrapping_mul(replicate.wrapping_add(1)));
        Self { state: mix(keyed) }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix(self.state)
    }

    /// Uniform on the open interval (0, 1).
    fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }
}
