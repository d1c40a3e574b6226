//! Quantile functions.
//!
//! Continuous quantiles (gamma, F) invert their CDFs by bracketed Newton
//! iteration with a bisection safeguard. Discrete quantiles (binomial,
//! Poisson, negative binomial) follow the smallest-`k` convention
//! `Q(ξ) = min{k : CDF(k) ≥ ξ}`: small cases walk the CDF with stable pmf
//! ratio recurrences, large ones binary-search the beta/gamma-backed CDF.

use crate::error::{Error, Result};
use crate::special::{
    ln_beta_raw, ln_gamma_raw, reg_inc_beta_raw, reg_inc_gamma_lower_raw,
    reg_inc_gamma_upper_raw, RealProb,
};

/// A quantile level ξ, strictly between 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QuantileLevel(f64);

impl QuantileLevel {
    pub fn new(xi: f64) -> Result<Self> {
        if !xi.is_finite() || xi <= 0.0 || xi >= 1.0 {
            return Err(Error::Domain(format!(
                "quantile level must lie strictly in (0, 1), got {xi}"
            )));
        }
        Ok(Self(xi))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Shape–scale gamma parameters; the mean is `shape * scale`, so shape y
/// with scale 2 is chi-square with 2y degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    shape: f64,
    scale: f64,
}

impl GammaParams {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        if !shape.is_finite() || shape <= 0.0 || !scale.is_finite() || scale <= 0.0 {
            return Err(Error::Domain(format!(
                "gamma parameters must be positive, got shape = {shape}, scale = {scale}"
            )));
        }
        Ok(Self { shape, scale })
    }

    pub fn shape(self) -> f64 {
        self.shape
    }

    pub fn scale(self) -> f64 {
        self.scale
    }
}

/// Degrees of freedom of an F distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FParams {
    nu1: f64,
    nu2: f64,
}

impl FParams {
    pub fn new(nu1: f64, nu2: f64) -> Result<Self> {
        if !nu1.is_finite() || nu1 <= 0.0 || !nu2.is_finite() || nu2 <= 0.0 {
            return Err(Error::Domain(format!(
                "F degrees of freedom must be positive, got nu1 = {nu1}, nu2 = {nu2}"
            )));
        }
        Ok(Self { nu1, nu2 })
    }

    pub fn nu1(self) -> f64 {
        self.nu1
    }

    pub fn nu2(self) -> f64 {
        self.nu2
    }
}

/// Stop when the CDF residual at the iterate is this small.
const INV_CDF_TOL: f64 = 1e-13;
/// Stop when the bracket has collapsed to this width relative to the
/// iterate. Quantiles of very small shapes sit many orders of magnitude
/// below 1, so the width criterion must scale with the root.
const INV_BRACKET_TOL: f64 = 1e-14;
/// Iteration cap for continuous inversion.
const INV_MAX_ITER: usize = 200;

/// Quantile of the gamma distribution with the given shape and scale.
///
/// Returns q with |CDF(q) − ξ| well inside 1e-12. Bracketed Newton with a
/// bisection fallback; the initial bracket (0, 64·shape·scale] is doubled
/// until it contains the root.
pub fn gamma_quantile(xi: QuantileLevel, params: GammaParams) -> f64 {
    let a = params.shape();
    let b = params.scale();
    let xi = xi.value();
    let mut lo = 0.0_f64;
    let mut hi = 64.0 * a * b;
    while reg_inc_gamma_lower_raw(a, hi / b) < xi {
        lo = hi;
        hi *= 2.0;
    }
    let ln_gamma_a = ln_gamma_raw(a);
    let pdf = |q: f64| ((a - 1.0) * (q / b).ln() - q / b - ln_gamma_a).exp() / b;
    let mut q = a * b;
    if !(q > lo && q < hi) {
        q = 0.5 * (lo + hi);
    }
    for _ in 0..INV_MAX_ITER {
        let f = reg_inc_gamma_lower_raw(a, q / b) - xi;
        if f >= 0.0 {
            hi = q;
        } else {
            lo = q;
        }
        let d = pdf(q);
        if f.abs() <= INV_CDF_TOL {
            // One polishing Newton step; quadratic convergence puts the
            // residual near the evaluation noise floor.
            if d.is_finite() && d > 0.0 {
                let next = q - f / d;
                if next > lo && next < hi {
                    return next;
                }
            }
            return q;
        }
        let mut next = if d.is_finite() && d > 0.0 {
            q - f / d
        } else {
            f64::NAN
        };
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        q = next;
        if hi - lo <= INV_BRACKET_TOL * q {
            return q;
        }
    }
    q
}

/// Quantile of the F distribution with `nu1` and `nu2` degrees of freedom.
///
/// Inverts the incomplete beta and maps through q = ν₂ y / (ν₁ (1 − y)).
/// Upper levels invert the mirrored beta so 1 − y is formed directly
/// rather than by subtraction.
pub fn f_quantile(xi: QuantileLevel, params: FParams) -> f64 {
    let n1 = params.nu1();
    let n2 = params.nu2();
    let xi = xi.value();
    if xi <= 0.5 {
        let y = beta_quantile_raw(xi, 0.5 * n1, 0.5 * n2);
        n2 * y / (n1 * (1.0 - y))
    } else {
        let z = beta_quantile_raw(1.0 - xi, 0.5 * n2, 0.5 * n1);
        n2 * (1.0 - z) / (n1 * z)
    }
}

// Beta CDF inversion on (0, 1); same Newton/bisection scheme as the gamma.
fn beta_quantile_raw(xi: f64, a: f64, b: f64) -> f64 {
    debug_assert!(xi > 0.0 && xi < 1.0);
    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    let ln_beta = ln_beta_raw(a, b);
    let pdf = |y: f64| ((a - 1.0) * y.ln() + (b - 1.0) * (-y).ln_1p() - ln_beta).exp();
    let mut y = a / (a + b);
    for _ in 0..INV_MAX_ITER {
        let f = reg_inc_beta_raw(y, a, b) - xi;
        if f >= 0.0 {
            hi = y;
        } else {
            lo = y;
        }
        let d = pdf(y);
        if f.abs() <= INV_CDF_TOL {
            if d.is_finite() && d > 0.0 {
                let next = y - f / d;
                if next > lo && next < hi {
                    return next;
                }
            }
            return y;
        }
        let mut next = if d.is_finite() && d > 0.0 {
            y - f / d
        } else {
            f64::NAN
        };
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        y = next;
        if hi - lo <= 1e-15 * y {
            return y;
        }
    }
    y
}

/// Standard normal quantile through the incomplete-gamma machinery:
/// Φ(z) = (1 + P(1/2, z²/2)) / 2 for z ≥ 0.
pub(crate) fn standard_normal_quantile(prob: f64) -> f64 {
    debug_assert!(prob > 0.0 && prob < 1.0);
    if prob == 0.5 {
        return 0.0;
    }
    let pmax = prob.max(1.0 - prob);
    // 2·pmax − 1 can round up to 1 when prob is within an ulp of 1.
    let level = (2.0 * pmax - 1.0).min(1.0 - 1e-16);
    let u = gamma_quantile(
        QuantileLevel::new(level).expect("level lies in (0, 1)"),
        GammaParams::new(0.5, 1.0).expect("valid gamma parameters"),
    );
    let z = (2.0 * u).sqrt();
    if prob < 0.5 {
        -z
    } else {
        z
    }
}

// Discrete quantiles scan the CDF only while the starting pmf cannot
// underflow and the walk stays short; otherwise they binary-search the
// smooth CDF.
const SCAN_LN_FLOOR: f64 = -700.0;
const SCAN_COST_CAP: f64 = 10_000.0;

fn smallest_k(cdf: &dyn Fn(u64) -> f64, xi: f64, mut hi: u64) -> u64 {
    // Precondition: cdf is nondecreasing and cdf(hi) >= xi.
    if cdf(0) >= xi {
        return 0;
    }
    let mut lo = 0u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if cdf(mid) >= xi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Smallest k with P(X ≤ k) ≥ ξ for X ~ Binomial(n, p).
pub fn binomial_quantile(xi: QuantileLevel, n: u64, p: RealProb) -> u64 {
    let xi = xi.value();
    let p = p.value();
    if n == 0 || p == 0.0 {
        return 0;
    }
    if p == 1.0 {
        return n;
    }
    let q = 1.0 - p;
    let nf = n as f64;
    if nf <= SCAN_COST_CAP && nf * q.ln() > SCAN_LN_FLOOR {
        let mut pmf = q.powi(n as i32);
        let mut cum = pmf;
        let mut k = 0u64;
        let ratio = p / q;
        while cum < xi && k < n {
            k += 1;
            // Multiply before dividing: the binomial coefficient recurrence
            // stays exact in f64, so dyadic p gives exact CDF values.
            pmf = pmf * (n - k + 1) as f64 / k as f64 * ratio;
            let next = cum + pmf;
            if next == cum {
                break; // increments below f64 resolution
            }
            cum = next;
        }
        k
    } else {
        // P(X <= k) = I_{1-p}(n - k, k + 1).
        let cdf = |k: u64| {
            if k >= n {
                1.0
            } else {
                reg_inc_beta_raw(q, (n - k) as f64, (k + 1) as f64)
            }
        };
        smallest_k(&cdf, xi, n)
    }
}

/// Smallest k with P(X ≤ k) ≥ ξ for X ~ Poisson(mean).
pub fn poisson_quantile(xi: QuantileLevel, mean: f64) -> u64 {
    assert!(
        mean.is_finite() && mean > 0.0,
        "poisson_quantile requires mean > 0"
    );
    let xi = xi.value();
    if mean <= 700.0 {
        let mut pmf = (-mean).exp();
        let mut cum = pmf;
        let mut k = 0u64;
        while cum < xi {
            k += 1;
            pmf *= mean / k as f64;
            let next = cum + pmf;
            if next == cum {
                break;
            }
            cum = next;
        }
        k
    } else {
        // P(X <= k) = Q(k + 1, mean).
        let cdf = |k: u64| reg_inc_gamma_upper_raw((k + 1) as f64, mean);
        let mut hi = (mean + 10.0 * mean.sqrt() + 10.0) as u64;
        while cdf(hi) < xi {
            hi *= 2;
        }
        smallest_k(&cdf, xi, hi)
    }
}

/// Smallest k with P(Y ≤ k) ≥ ξ for Y negative binomial with the given
/// size, counting failures before the size-th success. Requires p > 0.
pub fn negbinomial_quantile(xi: QuantileLevel, size: u64, p: RealProb) -> u64 {
    let xi = xi.value();
    let p = p.value();
    assert!(size >= 1, "negbinomial_quantile requires size >= 1");
    assert!(p > 0.0, "negbinomial_quantile requires p > 0");
    if p == 1.0 {
        return 0;
    }
    let nf = size as f64;
    let mean = nf * (1.0 - p) / p;
    if nf * p.ln() > SCAN_LN_FLOOR && mean <= SCAN_COST_CAP {
        let mut pmf = if size <= i32::MAX as u64 {
            p.powi(size as i32)
        } else {
            (nf * p.ln()).exp()
        };
        let mut cum = pmf;
        let mut k = 0u64;
        while cum < xi {
            k += 1;
            pmf = pmf * (size + k - 1) as f64 / k as f64 * (1.0 - p);
            let next = cum + pmf;
            if next == cum {
                break;
            }
            cum = next;
        }
        k
    } else {
        // P(Y <= k) = I_p(size, k + 1).
        let cdf = |k: u64| reg_inc_beta_raw(p, nf, (k + 1) as f64);
        let mut hi = (mean + 10.0 * mean.max(1.0).sqrt() + 10.0) as u64;
        while cdf(hi) < xi {
            hi *= 2;
        }
        smallest_k(&cdf, xi, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special;

    fn level(xi: f64) -> QuantileLevel {
        QuantileLevel::new(xi).unwrap()
    }

    fn prob(p: f64) -> RealProb {
        RealProb::new(p).unwrap()
    }

    fn gamma_cdf(q: f64, a: f64, b: f64) -> f64 {
        special::reg_inc_gamma_lower(a, q / b).unwrap()
    }

    fn f_cdf(q: f64, n1: f64, n2: f64) -> f64 {
        special::reg_inc_beta(n1 * q / (n1 * q + n2), 0.5 * n1, 0.5 * n2).unwrap()
    }

    // Direct-summation CDFs, used as scan oracles.
    fn binom_coeff(n: u64, k: u64) -> f64 {
        let k = k.min(n - k);
        let mut c = 1.0;
        for i in 0..k {
            c = c * (n - i) as f64 / (i + 1) as f64;
        }
        c
    }

    fn binom_cdf_sum(k: u64, n: u64, p: f64) -> f64 {
        (0..=k.min(n))
            .map(|i| binom_coeff(n, i) * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32))
            .sum()
    }

    fn poisson_cdf_sum(k: u64, mu: f64) -> f64 {
        let mut term = (-mu).exp();
        let mut cum = term;
        for i in 1..=k {
            term *= mu / i as f64;
            cum += term;
        }
        cum
    }

    fn nb_cdf_sum(k: u64, size: u64, p: f64) -> f64 {
        let mut term = p.powi(size as i32);
        let mut cum = term;
        for i in 1..=k {
            term = term * (size + i - 1) as f64 / i as f64 * (1.0 - p);
            cum += term;
        }
        cum
    }

    const XI_GRID: [f64; 9] = [0.001, 0.01, 0.025, 0.05, 0.5, 0.95, 0.975, 0.99, 0.999];

    #[test]
    fn gamma_quantile_exponential_median() {
        // Exponential with scale 2: median = 2 ln 2.
        let q = gamma_quantile(level(0.5), GammaParams::new(1.0, 2.0).unwrap());
        assert!((q - 2.0 * 2.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn gamma_quantile_unit_exponential_at_cdf_of_one() {
        let q = gamma_quantile(
            level(1.0 - (-1.0f64).exp()),
            GammaParams::new(1.0, 1.0).unwrap(),
        );
        assert!((q - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_quantile_matches_chi_square_poisson_duality() {
        // Chi-square with 8 df at 0.975 solves Σ_{k=0}^{3} e^{-q/2}(q/2)^k/k! = 0.025;
        // locate that root by bisection on the direct sum.
        let tail = |q: f64| poisson_cdf_sum(3, q / 2.0);
        let (mut lo, mut hi) = (0.0f64, 100.0f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if tail(mid) > 0.025 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let expected = 0.5 * (lo + hi);
        let q = gamma_quantile(level(0.975), GammaParams::new(4.0, 2.0).unwrap());
        assert!((q - expected).abs() < 1e-9, "q = {q}, expected = {expected}");
    }

    #[test]
    fn gamma_quantile_round_trip() {
        for &(a, b) in &[(0.5, 1.0), (1.0, 2.0), (4.0, 2.0), (41.0, 2.0), (100.0, 0.5)] {
            let params = GammaParams::new(a, b).unwrap();
            for &xi in &XI_GRID {
                let q = gamma_quantile(level(xi), params);
                let back = gamma_cdf(q, a, b);
                assert!(
                    (back - xi).abs() < 1e-12,
                    "a = {a}, b = {b}, xi = {xi}: back = {back}"
                );
            }
        }
    }

    #[test]
    fn f_quantile_median_is_one_for_equal_dfs() {
        for &nu in &[1.0, 2.0, 5.0, 10.0, 33.0] {
            let q = f_quantile(level(0.5), FParams::new(nu, nu).unwrap());
            assert!((q - 1.0).abs() < 1e-12, "nu = {nu}: q = {q}");
        }
    }

    #[test]
    fn f_quantile_closed_form_2_4() {
        // I_y(1, 2) = 0.9 solves to y = 1 - sqrt(0.1), and q = 2y/(1-y).
        let y = 1.0 - 0.1f64.sqrt();
        let expected = 2.0 * y / (1.0 - y);
        let q = f_quantile(level(0.9), FParams::new(2.0, 4.0).unwrap());
        assert!((q - expected).abs() < 1e-11, "q = {q}, expected = {expected}");
        // Independent check: bisection on the F CDF.
        let (mut lo, mut hi) = (0.0f64, 1e3f64);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f_cdf(mid, 2.0, 4.0) < 0.9 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((q - 0.5 * (lo + hi)).abs() < 1e-9);
    }

    #[test]
    fn f_quantile_round_trip() {
        let dfs = [
            (1.0, 1.0),
            (2.0, 4.0),
            (1.0, 7.0),
            (5.0, 3.0),
            (10.0, 10.0),
            (2.0, 40.0),
            (41.0, 10.0),
            (82.0, 20.0),
            (200.0, 100.0),
        ];
        for &(n1, n2) in &dfs {
            let params = FParams::new(n1, n2).unwrap();
            for &xi in &XI_GRID {
                let q = f_quantile(level(xi), params);
                let back = f_cdf(q, n1, n2);
                assert!(
                    (back - xi).abs() < 1e-12,
                    "nu = ({n1}, {n2}), xi = {xi}: back = {back}"
                );
            }
        }
    }

    #[test]
    fn continuous_quantiles_monotone_in_level() {
        let params = GammaParams::new(3.0, 2.0).unwrap();
        let fparams = FParams::new(7.0, 5.0).unwrap();
        let mut prev_g = 0.0;
        let mut prev_f = 0.0;
        for &xi in &XI_GRID {
            let g = gamma_quantile(level(xi), params);
            let f = f_quantile(level(xi), fparams);
            assert!(g >= prev_g && f >= prev_f, "xi = {xi}");
            prev_g = g;
            prev_f = f;
        }
    }

    #[test]
    fn binomial_quantile_examples() {
        // CDF(0) = 0.5 >= 0.5 exactly.
        assert_eq!(binomial_quantile(level(0.5), 1, prob(0.5)), 0);
        // Degenerate at zero.
        assert_eq!(binomial_quantile(level(0.9999), 5, prob(0.0)), 0);
        assert_eq!(binomial_quantile(level(0.0001), 7, prob(1.0)), 7);
    }

    #[test]
    fn binomial_quantile_matches_scan_oracle() {
        let q = binomial_quantile(level(0.95), 20, prob(0.1));
        let mut k = 0;
        while binom_cdf_sum(k, 20, 0.1) < 0.95 {
            k += 1;
        }
        assert_eq!(q, k);
    }

    #[test]
    fn binomial_quantile_galois_on_grid() {
        for n in [1u64, 2, 3, 5, 9, 17, 30] {
            for step in 1..=19u32 {
                let p = step as f64 * 0.05;
                for &xi in &XI_GRID {
                    let k = binomial_quantile(level(xi), n, prob(p));
                    assert!(binom_cdf_sum(k, n, p) >= xi, "n={n} p={p} xi={xi} k={k}");
                    if k > 0 {
                        assert!(
                            binom_cdf_sum(k - 1, n, p) < xi,
                            "n={n} p={p} xi={xi} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn binomial_quantile_large_path_is_consistent() {
        // Forced onto the beta-backed binary search; check the Galois
        // property against the same smooth CDF.
        let n = 50_000u64;
        let p = 0.3;
        let cdf = |k: u64| special::reg_inc_beta(0.7, (n - k) as f64, (k + 1) as f64).unwrap();
        for &xi in &[0.01, 0.5, 0.99] {
            let k = binomial_quantile(level(xi), n, prob(p));
            assert!(cdf(k) >= xi);
            assert!(cdf(k - 1) < xi);
        }
    }

    #[test]
    fn poisson_quantile_examples() {
        assert_eq!(poisson_quantile(level(0.5), 1e-9), 0);
        // CDF(0) = e^{-1} ≈ 0.3679 < 0.37 <= CDF(1).
        assert_eq!(poisson_quantile(level(0.37), 1.0), 1);
        let q = poisson_quantile(level(0.95), 4.0);
        let mut k = 0;
        while poisson_cdf_sum(k, 4.0) < 0.95 {
            k += 1;
        }
        assert_eq!(q, k);
    }

    #[test]
    fn poisson_quantile_galois_on_grid() {
        for &mu in &[0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 30.0] {
            for &xi in &XI_GRID {
                let k = poisson_quantile(level(xi), mu);
                assert!(poisson_cdf_sum(k, mu) >= xi, "mu={mu} xi={xi} k={k}");
                if k > 0 {
                    assert!(poisson_cdf_sum(k - 1, mu) < xi, "mu={mu} xi={xi} k={k}");
                }
            }
        }
    }

    #[test]
    fn poisson_quantile_large_path_is_consistent() {
        let mu = 5_000.0;
        let cdf = |k: u64| 1.0 - special::reg_inc_gamma_lower((k + 1) as f64, mu).unwrap();
        for &xi in &[0.025, 0.5, 0.975] {
            let k = poisson_quantile(level(xi), mu);
            assert!(cdf(k) >= xi - 1e-13);
            assert!(cdf(k - 1) < xi + 1e-13);
        }
    }

    #[test]
    fn negbinomial_quantile_examples() {
        assert_eq!(negbinomial_quantile(level(0.42), 5, prob(1.0)), 0);
        // Geometric CDF(0) = 0.5 >= 0.5 exactly.
        assert_eq!(negbinomial_quantile(level(0.5), 1, prob(0.5)), 0);
        let q = negbinomial_quantile(level(0.99), 3, prob(0.2));
        let mut k = 0;
        while nb_cdf_sum(k, 3, 0.2) < 0.99 {
            k += 1;
        }
        assert_eq!(q, k);
    }

    #[test]
    fn negbinomial_quantile_galois_on_grid() {
        for &size in &[1u64, 2, 3, 5, 10] {
            for step in 1..=9u32 {
                let p = step as f64 * 0.1;
                if size as f64 * (1.0 - p) / p > 30.0 {
                    continue;
                }
                for &xi in &XI_GRID {
                    let k = negbinomial_quantile(level(xi), size, prob(p));
                    assert!(nb_cdf_sum(k, size, p) >= xi, "size={size} p={p} xi={xi}");
                    if k > 0 {
                        assert!(nb_cdf_sum(k - 1, size, p) < xi, "size={size} p={p} xi={xi}");
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_quantiles_monotone_in_level() {
        let mut prev = 0;
        for &xi in &XI_GRID {
            let k = binomial_quantile(level(xi), 40, prob(0.35));
            assert!(k >= prev);
            prev = k;
        }
    }

    #[test]
    fn normal_quantile_known_values() {
        assert_eq!(standard_normal_quantile(0.5), 0.0);
        assert!((standard_normal_quantile(0.975) - 1.959_963_984_540_054).abs() < 1e-9);
        assert!(
            (standard_normal_quantile(0.025) + standard_normal_quantile(0.975)).abs() < 1e-12
        );
        assert!((standard_normal_quantile(0.841_344_746_068_543) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn quantile_level_validates() {
        assert!(QuantileLevel::new(0.0).is_err());
        assert!(QuantileLevel::new(1.0).is_err());
        assert!(QuantileLevel::new(f64::NAN).is_err());
        assert!(QuantileLevel::new(0.5).is_ok());
    }

    #[test]
    fn params_validate() {
        assert!(GammaParams::new(0.0, 1.0).is_err());
        assert!(GammaParams::new(1.0, -1.0).is_err());
        assert!(FParams::new(0.0, 2.0).is_err());
        assert!(FParams::new(2.0, f64::INFINITY).is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn binom_cdf_sum(k: u64, n: u64, p: f64) -> f64 {
        let mut c = 1.0;
        let mut cum = 0.0;
        for i in 0..=k.min(n) {
            if i > 0 {
                c = c * (n - i + 1) as f64 / i as f64;
            }
            cum += c * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32);
        }
        cum
    }

    proptest! {
        #[test]
        fn gamma_round_trip(
            xi in 0.001f64..0.999,
            a in 0.1f64..80.0,
            b in 0.1f64..10.0,
        ) {
            let q = gamma_quantile(
                QuantileLevel::new(xi).unwrap(),
                GammaParams::new(a, b).unwrap(),
            );
            let back = crate::special::reg_inc_gamma_lower(a, q / b).unwrap();
            prop_assert!((back - xi).abs() < 1e-12);
        }

        #[test]
        fn f_round_trip(
            xi in 0.001f64..0.999,
            n1 in 0.5f64..150.0,
            n2 in 0.5f64..150.0,
        ) {
            let q = f_quantile(QuantileLevel::new(xi).unwrap(), FParams::new(n1, n2).unwrap());
            let x = n1 * q / (n1 * q + n2);
            let back = crate::special::reg_inc_beta(x, 0.5 * n1, 0.5 * n2).unwrap();
            prop_assert!((back - xi).abs() < 1e-12);
        }

        #[test]
        fn binomial_galois(
            xi in 0.001f64..0.999,
            n in 1u64..60,
            p in 0.01f64..0.99,
        ) {
            let k = binomial_quantile(
                QuantileLevel::new(xi).unwrap(),
                n,
                RealProb::new(p).unwrap(),
            );
            prop_assert!(binom_cdf_sum(k, n, p) >= xi);
            if k > 0 {
                prop_assert!(binom_cdf_sum(k - 1, n, p) < xi);
            }
        }
    }
}
