//! Deviation rates of the maximum height, with finite-size diagnostics.
//!
//! Three regimes of the tail behaviour of the maximum are covered, each
//! as a normalized log-probability compared against its limiting rate:
//!
//! * lower tail at cap `n` with `N >> n^2`: `(n+1)^2/N * ln P(max < n)`
//!   approaches `-pi^2` ([`moderate_rate`]);
//! * upper tail at threshold `x*n` with `n <= N <= n^2`:
//!   `N/(2n^2) * ln P(max > m)` tracked against `-x^2`
//!   ([`gaussian_rate`]);
//! * upper tail at a threshold proportional to the length, `m = 2Nx`:
//!   `1/(2N) * ln P(max > m)` approaches the rate function
//!   `h(x) = -(x+1/2) ln(1+2x) - (1/2-x) ln(1-2x)` ([`cramer_rate`]).
//!
//! Probabilities come from exact big-integer counts wherever they fit,
//! and from the log-space spectral ratio in the moderate regime where
//! they do not. Every diagnostic reports the integer threshold actually
//! used and whether the inputs sit inside the regime the limit is
//! proved for.

use crate::error::{Error, Result};
use crate::exact::{catalan, count_bounded, count_midpoint_peak, reflection_touch_bound};
use crate::numeric::{log_big, log_big_ratio};
use crate::spectral::log_spectral_ratio;
use num_bigint::BigUint;

/// How a diagnostic's inputs relate to the regime its limit is proved
/// for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeFlag {
    /// Inside the nominal regime of the limit statement.
    Nominal,
    /// Outside it (e.g. a scaled threshold at or beyond the regime
    /// boundary); the diagnostic is still computed.
    Extrapolated,
    /// The threshold sits exactly at the highest reachable height, where
    /// a single path realizes the event and the probability is `1/C_N`.
    BoundaryExact,
    /// The event is impossible and the log-probability is `-inf`.
    ZeroProbability,
}

impl std::fmt::Display for RegimeFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            RegimeFlag::Nominal => "nominal",
            RegimeFlag::Extrapolated => "extrapolated",
            RegimeFlag::BoundaryExact => "boundary-exact",
            RegimeFlag::ZeroProbability => "zero-probability",
        };
        f.write_str(name)
    }
}

/// A normalized finite-`N` log-probability next to its limiting value.
#[derive(Debug, Clone)]
pub struct RateDiagnostic {
    pub half_length: u64,
    /// Height-scale parameter `n`, for the regimes that have one.
    pub height_scale: Option<u64>,
    /// Scaled threshold location, for the regimes parametrized by one.
    pub x: Option<f64>,
    /// Integer height the probability event refers to.
    pub threshold: Option<u64>,
    /// Which event the probability measures, in terms of `threshold`.
    pub event: &'static str,
    /// Normalized log-probability at this `N`.
    pub prelimit: f64,
    /// The limiting rate value.
    pub limit: f64,
    /// `|prelimit - limit|`; zero when both sides are the same infinity.
    pub gap: f64,
    pub flag: RegimeFlag,
}

fn gap_between(prelimit: f64, limit: f64) -> f64 {
    if prelimit == limit {
        0.0
    } else {
        (prelimit - limit).abs()
    }
}

fn require_positive_scaled(what: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            requirement: "a finite value > 0",
            value: x,
        })
    }
}

/// Lower-tail diagnostic at height cap `n`: prelimit
/// `(n+1)^2/N * ln P(max < n)` via the log-space spectral ratio, limit
/// `-pi^2`. Requires `N >= 1` and `n >= 2` (`n = 1` makes the
/// probability zero for every nonempty path).
pub fn moderate_rate(half_length: u64, height_cap: u64) -> Result<RateDiagnostic> {
    if half_length == 0 {
        return Err(Error::OutOfDomain {
            what: "half-length",
            requirement: "N >= 1",
            value: half_length as f64,
        });
    }
    if height_cap < 2 {
        return Err(Error::InvalidHeight {
            value: height_cap,
            range: "2..",
            half_length,
        });
    }
    let scale = ((height_cap + 1) * (height_cap + 1)) as f64 / half_length as f64;
    let prelimit = scale * log_spectral_ratio(half_length, height_cap);
    let limit = -(std::f64::consts::PI * std::f64::consts::PI);
    Ok(RateDiagnostic {
        half_length,
        height_scale: Some(height_cap),
        x: None,
        threshold: Some(height_cap),
        event: "max < n",
        prelimit,
        limit,
        gap: gap_between(prelimit, limit),
        flag: RegimeFlag::Nominal,
    })
}

/// Closed-form approximation of `ln(count_bounded(N,n)/catalan(N))` in
/// the `N >> n^2` regime: the dominant eigenvalue pair contributes
/// `(4/(n+1)) sin^2(pi/(n+1)) cos^{2N}(pi/(n+1))` of the spectral sum,
/// and Stirling gives `1/C_N ~ sqrt(pi) N^{3/2} / 4^N`, leaving
///
/// ```text
/// ln(4 sqrt(pi) N^{3/2} sin^2(pi/(n+1)) / (n+1)) + 2N ln cos(pi/(n+1))
/// ```
///
/// The neglected corrections are the `9/(8N)` Stirling term and the
/// exponentially small subdominant eigenvalues, so the error vanishes
/// as `N` grows at fixed `n`.
pub fn asymptotic_log_ratio(half_length: u64, height_cap: u64) -> Result<f64> {
    if half_length == 0 {
        return Err(Error::OutOfDomain {
            what: "half-length",
            requirement: "N >= 1",
            value: half_length as f64,
        });
    }
    if height_cap < 2 {
        return Err(Error::InvalidHeight {
            value: height_cap,
            range: "2..",
            half_length,
        });
    }
    let theta = std::f64::consts::PI / (height_cap + 1) as f64;
    let n_f = half_length as f64;
    let prefactor =
        4.0 * std::f64::consts::PI.sqrt() * n_f.powf(1.5) * theta.sin().powi(2)
            / (height_cap + 1) as f64;
    Ok(prefactor.ln() + 2.0 * n_f * theta.cos().ln())
}

/// `ln P(max > m)` from exact big-integer counts:
/// `ln((C_N - count_bounded(N, m+1)) / C_N)`. The event is impossible
/// for `m >= N`, reported as `-inf` with [`RegimeFlag::ZeroProbability`]
/// rather than an error.
pub fn upper_tail_log_prob(half_length: u64, threshold: u64) -> (f64, RegimeFlag) {
    if threshold >= half_length {
        return (f64::NEG_INFINITY, RegimeFlag::ZeroProbability);
    }
    let total = catalan(half_length);
    let tail = &total - count_bounded(half_length, threshold + 1);
    (log_big_ratio(&tail, &total), RegimeFlag::Nominal)
}

fn rounded_threshold(
    half_length: u64,
    scaled: f64,
    allow_equal_n: bool,
) -> Result<u64> {
    let rounded = scaled.round();
    let top = if allow_equal_n {
        half_length as f64
    } else {
        half_length as f64 - 1.0
    };
    if !(rounded >= 1.0 && rounded <= top) {
        return Err(Error::InvalidHeight {
            value: if rounded.is_finite() && rounded >= 0.0 {
                rounded as u64
            } else {
                0
            },
            range: "1..=N",
            half_length,
        });
    }
    Ok(rounded as u64)
}

/// Upper-tail diagnostic at threshold `m = round(x * n)`: prelimit
/// `N/(2n^2) * ln P(max > m)`, tracked against `-x^2`. The limit is
/// proved for `n <= N <= n^2` with `0 < x < 1`; inputs outside that box
/// are computed anyway and flagged [`RegimeFlag::Extrapolated`].
/// Convergence carries `log N`-sized corrections, so the gap closes
/// slowly and is reported as a diagnostic, not asserted against.
pub fn gaussian_rate(half_length: u64, height_scale: u64, x: f64) -> Result<RateDiagnostic> {
    require_positive_scaled("threshold location x", x)?;
    if half_length == 0 || height_scale == 0 {
        return Err(Error::OutOfDomain {
            what: "gaussian-regime parameters",
            requirement: "N >= 1 and n >= 1",
            value: 0.0,
        });
    }
    let threshold = rounded_threshold(half_length, x * height_scale as f64, true)?;
    let (log_prob, prob_flag) = upper_tail_log_prob(half_length, threshold);
    let scale = half_length as f64 / (2.0 * (height_scale as f64).powi(2));
    let prelimit = scale * log_prob;
    let limit = -x * x;
    let in_regime =
        height_scale <= half_length && half_length <= height_scale * height_scale && x < 1.0;
    let flag = if prob_flag == RegimeFlag::ZeroProbability {
        RegimeFlag::ZeroProbability
    } else if in_regime {
        RegimeFlag::Nominal
    } else {
        RegimeFlag::Extrapolated
    };
    Ok(RateDiagnostic {
        half_length,
        height_scale: Some(height_scale),
        x: Some(x),
        threshold: Some(threshold),
        event: "max > m",
        prelimit,
        limit,
        gap: gap_between(prelimit, limit),
        flag,
    })
}

/// The `x = 1` edge of the upper-tail regime: prelimit
/// `N/n^2 * ln P(max > n)` tracked against `-2`. The threshold sits on
/// the regime boundary, so the result is always flagged
/// [`RegimeFlag::Extrapolated`].
pub fn gaussian_unit_rate(half_length: u64, height_scale: u64) -> Result<RateDiagnostic> {
    if height_scale == 0 || height_scale > half_length {
        return Err(Error::InvalidHeight {
            value: height_scale,
            range: "1..=N",
            half_length,
        });
    }
    let (log_prob, prob_flag) = upper_tail_log_prob(half_length, height_scale);
    let prelimit = half_length as f64 / (height_scale as f64).powi(2) * log_prob;
    let limit = -2.0;
    let flag = if prob_flag == RegimeFlag::ZeroProbability {
        RegimeFlag::ZeroProbability
    } else {
        RegimeFlag::Extrapolated
    };
    Ok(RateDiagnostic {
        half_length,
        height_scale: Some(height_scale),
        x: Some(1.0),
        threshold: Some(height_scale),
        event: "max > n",
        prelimit,
        limit,
        gap: gap_between(prelimit, limit),
        flag,
    })
}

/// Rate function for thresholds proportional to the path length:
/// `h(x) = -(x+1/2) ln(1+2x) - (1/2-x) ln(1-2x)` on `0 < x < 1/2`,
/// `-ln 2` at `x = 1/2` by continuity, `-inf` beyond (the event is
/// impossible). Strictly decreasing from `0` at `x -> 0+`.
pub fn cramer_rate_limit(x: f64) -> Result<f64> {
    require_positive_scaled("linear threshold fraction x", x)?;
    if x > 0.5 {
        return Ok(f64::NEG_INFINITY);
    }
    if x == 0.5 {
        return Ok(-std::f64::consts::LN_2);
    }
    Ok(-(x + 0.5) * (1.0 + 2.0 * x).ln() - (0.5 - x) * (1.0 - 2.0 * x).ln())
}

/// Linear-threshold diagnostic at `m = round(2Nx)`: prelimit
/// `1/(2N) * ln P(max > m)`, limit `h(x)`. At `m = N` the event
/// degenerates to the single maximal path and the prelimit becomes the
/// exact `-ln(C_N)/(2N)` ([`RegimeFlag::BoundaryExact`], event
/// `max >= m`); for `m > N` it is impossible and both sides are `-inf`.
pub fn cramer_rate(half_length: u64, x: f64) -> Result<RateDiagnostic> {
    require_positive_scaled("linear threshold fraction x", x)?;
    if half_length == 0 {
        return Err(Error::OutOfDomain {
            what: "half-length",
            requirement: "N >= 1",
            value: 0.0,
        });
    }
    let scaled = (2 * half_length) as f64 * x;
    let rounded = scaled.round();
    if rounded < 1.0 {
        return Err(Error::InvalidHeight {
            value: 0,
            range: "1..",
            half_length,
        });
    }
    let limit = cramer_rate_limit(x)?;
    let normalization = 1.0 / (2.0 * half_length as f64);
    let (threshold, event, prelimit, flag) = if rounded > half_length as f64 {
        (
            rounded as u64,
            "max > m",
            f64::NEG_INFINITY,
            RegimeFlag::ZeroProbability,
        )
    } else if rounded as u64 == half_length {
        // Only the all-up-then-all-down path reaches height N.
        let prelimit = -normalization * log_big(&catalan(half_length));
        (half_length, "max >= m", prelimit, RegimeFlag::BoundaryExact)
    } else {
        let m = rounded as u64;
        let (log_prob, _) = upper_tail_log_prob(half_length, m);
        (m, "max > m", normalization * log_prob, RegimeFlag::Nominal)
    };
    Ok(RateDiagnostic {
        half_length,
        height_scale: None,
        x: Some(x),
        threshold: Some(threshold),
        event,
        prelimit,
        limit,
        gap: gap_between(prelimit, limit),
        flag,
    })
}

/// Exact reflection bounds around the tail count `#{max > m}`: the
/// squared ballot count of paths peaking at the midpoint (at the lowest
/// parity-admissible height above `m`) from below, twice a central
/// binomial from above. All three are exact integers.
#[derive(Debug, Clone)]
pub struct TailSandwich {
    pub half_length: u64,
    /// The strict threshold `m` of the event `max > m`.
    pub threshold: u64,
    /// Parity-adjusted midpoint height used for the lower bound:
    /// `m + 1` or `m + 2`, whichever makes `N + height` even.
    pub peak_height: u64,
    /// `count_midpoint_peak(N, peak_height)`, zero if `peak_height > N`.
    pub lower: BigUint,
    /// `catalan(N) - count_bounded(N, m + 1)`, the exact tail count.
    pub tail: BigUint,
    /// `reflection_touch_bound(N, m + 1)`.
    pub upper: BigUint,
}

impl TailSandwich {
    pub fn holds(&self) -> bool {
        self.lower <= self.tail && self.tail <= self.upper
    }
}

/// Builds the sandwich for the event `max > m`. Valid for any
/// `m <= N`; degenerate thresholds produce all-zero rows.
pub fn reflection_sandwich(half_length: u64, threshold: u64) -> Result<TailSandwich> {
    if threshold > half_length {
        return Err(Error::InvalidHeight {
            value: threshold,
            range: "0..=N",
            half_length,
        });
    }
    let peak_height = if (half_length + threshold + 1) % 2 == 0 {
        threshold + 1
    } else {
        threshold + 2
    };
    let lower = if peak_height > half_length {
        BigUint::from(0u32)
    } else {
        count_midpoint_peak(half_length, peak_height)?
    };
    let tail = catalan(half_length) - count_bounded(half_length, threshold + 1);
    let upper = reflection_touch_bound(half_length, threshold + 1);
    Ok(TailSandwich {
        half_length,
        threshold,
        peak_height,
        lower,
        tail,
        upper,
    })
}
