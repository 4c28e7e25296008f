//! Spectral evaluation of bounded-height Dyck path counts.
//!
//! The adjacency matrix of the path graph on `n` vertices has
//! eigenvalues `2 cos(pi k / (n+1))`, `k = 1..n`, with eigenvector
//! entries proportional to `sin(pi k l / (n+1))`. Expanding the `(1,1)`
//! entry of its `2N`-th power gives
//!
//! ```text
//! |D_{2N,n}| = sum_{s=1..n} (2/(n+1)) sin^2(pi s/(n+1)) (2 cos(pi s/(n+1)))^{2N}
//! ```
//!
//! evaluated here in direct floating point ([`spectral_count`], exact in
//! expectation but range-limited by `4^N`) and in log space
//! ([`log_spectral_ratio`], no range limit). The per-mode weight
//! `sin^2 cos^{2N}` is symmetric under `s -> n+1-s`, and for `N` much
//! larger than `n^2` the `s = 1` mode dominates the whole sum.

use crate::error::{Error, Result};
use crate::numeric::{self, log_sum_exp};

/// Largest half-length accepted by the direct sum: beyond this,
/// `(2 cos)^2N` can exceed `f64::MAX / 2^64` and the result would be
/// meaningless. Log-space evaluation has no such limit.
pub const MAX_DIRECT_HALF_LENGTH: u64 = 480;

/// Slack for [`gaussian_cosine_bound_holds`]: the inequality is strict
/// away from zero but the two sides agree to fourth order near it, so a
/// few ulps absorb evaluation roundoff.
pub const COSINE_BOUND_SLACK: f64 = 4.0 * f64::EPSILON;

/// Eigenvalues `2 cos(pi k/(n+1))`, `k = 1..n`, of the path-graph
/// adjacency matrix on `n >= 1` vertices, in strictly decreasing order.
pub fn path_graph_eigenvalues(n: u64) -> Vec<f64> {
    let denom = (n + 1) as f64;
    (1..=n)
        .map(|k| 2.0 * (std::f64::consts::PI * k as f64 / denom).cos())
        .collect()
}

/// Whether mode `s` is the exact middle mode (eigenvalue zero), which
/// exists only for odd `n`.
fn is_zero_mode(n: u64, s: u64) -> bool {
    2 * s == n + 1
}

/// Per-mode weight `sin^2(pi s/(n+1)) cos^{2N}(pi s/(n+1))`, the
/// contribution of mode `s` to `|D_{2N,n}| / 4^N` up to the `2/(n+1)`
/// normalization. Symmetric in `s` and `n+1-s`; underflows to zero
/// harmlessly for large `N`.
pub fn mode_weight(half_length: u64, n: u64, s: u64) -> f64 {
    let theta = std::f64::consts::PI * s as f64 / (n + 1) as f64;
    let sin2 = theta.sin().powi(2);
    if is_zero_mode(n, s) {
        // cos is exactly zero, so the power is 0 for N >= 1 and 1 for N = 0.
        return if half_length == 0 { sin2 } else { 0.0 };
    }
    sin2 * theta.cos().abs().powi(2 * half_length as i32)
}

/// `ln` of [`mode_weight`]; `-inf` where the weight vanishes.
pub fn log_mode_weight(half_length: u64, n: u64, s: u64) -> f64 {
    let theta = std::f64::consts::PI * s as f64 / (n + 1) as f64;
    let log_sin2 = 2.0 * theta.sin().ln();
    if is_zero_mode(n, s) {
        return if half_length == 0 {
            log_sin2
        } else {
            f64::NEG_INFINITY
        };
    }
    log_sin2 + 2.0 * half_length as f64 * theta.cos().abs().ln()
}

/// The spectral sum for `|D_{2N,n}|` with its per-mode terms retained.
#[derive(Debug, Clone)]
pub struct SpectralCount {
    half_length: u64,
    height_cap: u64,
    terms: Vec<f64>,
    total: f64,
}

impl SpectralCount {
    /// Evaluates the sum for `n = height_cap >= 1` vertices. Symmetric
    /// modes `s` and `n+1-s` carry identical terms and are added as one
    /// doubled term, largest first.
    pub fn new(half_length: u64, height_cap: u64) -> Result<Self> {
        assert!(height_cap >= 1, "height cap must be positive");
        if half_length > MAX_DIRECT_HALF_LENGTH {
            return Err(Error::FloatRangeExceeded {
                half_length,
                max: MAX_DIRECT_HALF_LENGTH,
            });
        }
        let n = height_cap;
        let denom = (n + 1) as f64;
        let normalization = 2.0 / denom;
        let exponent = 2 * half_length as i32;
        let term_at = |s: u64| -> f64 {
            if is_zero_mode(n, s) {
                let sin2 = (std::f64::consts::PI * s as f64 / denom).sin().powi(2);
                return if half_length == 0 {
                    normalization * sin2
                } else {
                    0.0
                };
            }
            let theta = std::f64::consts::PI * s as f64 / denom;
            normalization * theta.sin().powi(2) * (2.0 * theta.cos().abs()).powi(exponent)
        };

        let mut terms = vec![0.0; n as usize];
        let mut total = 0.0;
        // Modes come in mirror pairs of equal magnitude; s ascending is
        // decreasing magnitude since cos falls on (0, pi/2).
        for s in 1..=n / 2 {
            let t = term_at(s);
            terms[s as usize - 1] = t;
            terms[(n - s) as usize] = t;
            total += 2.0 * t;
        }
        if n % 2 == 1 {
            let mid = (n + 1) / 2;
            let t = term_at(mid);
            terms[mid as usize - 1] = t;
            total += t;
        }
        Ok(SpectralCount {
            half_length,
            height_cap,
            terms,
            total,
        })
    }

    pub fn half_length(&self) -> u64 {
        self.half_length
    }

    pub fn height_cap(&self) -> u64 {
        self.height_cap
    }

    /// Per-mode terms indexed by `s - 1`; all nonnegative.
    pub fn terms(&self) -> &[f64] {
        &self.terms
    }

    /// The full sum, equal to `|D_{2N,n}|` up to floating roundoff.
    pub fn total(&self) -> f64 {
        self.total
    }
}

/// `|D_{2N,n}|` through the eigendecomposition, as a float. Agrees with
/// the exact integer count to nearly machine precision; errors with
/// [`Error::FloatRangeExceeded`] when `4^N` is out of f64 range.
pub fn spectral_count(half_length: u64, height_cap: u64) -> Result<f64> {
    SpectralCount::new(half_length, height_cap).map(|s| s.total)
}

/// `ln(|D_{2N,n}| / C_N)` evaluated entirely in log space: a
/// log-sum-exp over the modes minus `ln C_N` via log-gamma. Valid for
/// any `N`, `n >= 1`; returns `-inf` when the count is zero (`n = 1`,
/// `N >= 1`).
pub fn log_spectral_ratio(half_length: u64, height_cap: u64) -> f64 {
    let n = height_cap;
    let denom = (n + 1) as f64;
    let log_normalization = (2.0 / denom).ln();
    let two_n = 2.0 * half_length as f64;
    let mut logs = Vec::with_capacity(n as usize);
    for s in 1..=n {
        if is_zero_mode(n, s) && half_length > 0 {
            continue;
        }
        let theta = std::f64::consts::PI * s as f64 / denom;
        let log_power = if is_zero_mode(n, s) {
            0.0
        } else {
            two_n * (2.0 * theta.cos().abs()).ln()
        };
        logs.push(log_normalization + 2.0 * theta.sin().ln() + log_power);
    }
    log_sum_exp(&logs) - numeric::ln_catalan(half_length)
}

/// Checks `cos(x) <= exp(-x^2/2)` at every grid point, the bound that
/// turns truncated spectral sums into Gaussian tails. Points must lie in
/// `[0, pi/2]`; returns whether the bound held everywhere within
/// [`COSINE_BOUND_SLACK`].
pub fn gaussian_cosine_bound_holds(grid: &[f64]) -> Result<bool> {
    for &x in grid {
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&x) {
            return Err(Error::OutOfDomain {
                what: "cosine bound grid point",
                requirement: "0 <= x <= pi/2",
                value: x,
            });
        }
        if x.cos() > (-x * x / 2.0).exp() + COSINE_BOUND_SLACK {
            return Ok(false);
        }
    }
    Ok(true)
}
