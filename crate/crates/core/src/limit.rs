//! Limit law of the scaled maximum height.
//!
//! For a uniform Dyck path of length `2N`, `max height / sqrt(2N)`
//! converges in distribution to the law with CDF
//!
//! ```text
//! F(x) = 1 - 2 sum_{s>=1} (4 x^2 s^2 - 1) exp(-2 x^2 s^2)
//!      = 4 sqrt(pi) t^{3/2} sum_{s>=1} pi^2 s^2 exp(-pi^2 s^2 t),   t = 1/(2 x^2)
//! ```
//!
//! The first theta series converges fast for large `x`, the second for
//! small `x`; they agree everywhere by Poisson summation. Every
//! evaluation certifies its own truncation: summation stops only once a
//! closed-form geometric bound on the discarded tail drops below the
//! requested tolerance, and that bound is reported alongside the value.

use crate::error::{Error, Result};

/// Past this exponent scale even the first series term underflows f64
/// and the sum is zero to machine precision.
const UNDERFLOW_EXPONENT: f64 = 1500.0;

/// Truncation policy for the theta series.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSpec {
    /// Certified bound the discarded tail must drop below.
    pub abs_tol: f64,
    /// Terms after which evaluation gives up with
    /// [`Error::SeriesTruncation`].
    pub max_terms: usize,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        SeriesSpec {
            abs_tol: 1e-15,
            max_terms: 10_000,
        }
    }
}

/// A certified series evaluation: the true sum differs from `value` by
/// at most `tail_bound` plus summation roundoff.
#[derive(Debug, Clone, Copy)]
pub struct LimitEval {
    /// Point the series was evaluated at.
    pub arg: f64,
    /// Truncated series value, unclamped.
    pub value: f64,
    /// Terms summed before the tail certificate fired.
    pub terms_used: usize,
    /// Certified upper bound on the discarded tail.
    pub tail_bound: f64,
}

impl LimitEval {
    /// The value clamped to `[0, 1]`, absorbing roundoff at the ends of
    /// the distribution.
    pub fn cdf(&self) -> f64 {
        self.value.clamp(0.0, 1.0)
    }
}

/// Upper bound on `sum_{s > cutoff} s^2 exp(-a s^2)`, finite once
/// `a * cutoff >= 1`. Uses `exp(-a s^2) <= r^s` for `s > cutoff` with
/// `r = exp(-a * cutoff)` and the closed form of `sum s^2 r^s`.
pub fn quadratic_exp_tail_bound(a: f64, cutoff: u64) -> f64 {
    let s = cutoff as f64;
    if a * s < 1.0 {
        return f64::INFINITY;
    }
    let r = (-a * s).exp();
    let lead = (-a * s * (s + 1.0)).exp();
    let one_minus = 1.0 - r;
    let next = s + 1.0;
    lead * (next * next / one_minus
        + 2.0 * next * r / (one_minus * one_minus)
        + r * (1.0 + r) / (one_minus * one_minus * one_minus))
}

/// Upper bound on `sum_{s > cutoff} exp(-a s^2)`, finite once
/// `a * cutoff >= 1`.
pub fn plain_exp_tail_bound(a: f64, cutoff: u64) -> f64 {
    let s = cutoff as f64;
    if a * s < 1.0 {
        return f64::INFINITY;
    }
    let r = (-a * s).exp();
    (-a * s * (s + 1.0)).exp() / (1.0 - r)
}

fn require_positive(what: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::OutOfDomain {
            what,
            requirement: "a finite positive argument",
            value,
        })
    }
}

/// CDF value through the `t`-parametrized series
/// `4 sqrt(pi) t^{3/2} sum pi^2 s^2 exp(-pi^2 s^2 t)`. Decreasing in
/// `t`: small `t` is the upper end of the distribution.
pub fn max_cdf_dual_t(t: f64, spec: &SeriesSpec) -> Result<LimitEval> {
    require_positive("theta series argument", t)?;
    let a = std::f64::consts::PI.powi(2) * t;
    if a >= UNDERFLOW_EXPONENT {
        return Ok(LimitEval {
            arg: t,
            value: 0.0,
            terms_used: 0,
            tail_bound: f64::MIN_POSITIVE,
        });
    }
    let scale = 4.0 * std::f64::consts::PI.sqrt() * t.powf(1.5) * std::f64::consts::PI.powi(2);
    let mut sum = 0.0;
    for s in 1..=spec.max_terms {
        let sf = s as f64;
        sum += sf * sf * (-a * sf * sf).exp();
        let bound = scale * quadratic_exp_tail_bound(a, s as u64);
        if bound < spec.abs_tol {
            return Ok(LimitEval {
                arg: t,
                value: scale * sum,
                terms_used: s,
                tail_bound: bound,
            });
        }
    }
    Err(Error::SeriesTruncation {
        max_terms: spec.max_terms,
        tail_bound: scale * quadratic_exp_tail_bound(a, spec.max_terms as u64),
    })
}

/// CDF at `x` through the `t`-series with `t = 1/(2 x^2)`; the fast
/// route for small `x`.
pub fn max_cdf_dual(x: f64, spec: &SeriesSpec) -> Result<LimitEval> {
    require_positive("scaled height", x)?;
    let eval = max_cdf_dual_t(1.0 / (2.0 * x * x), spec)?;
    Ok(LimitEval { arg: x, ..eval })
}

/// CDF at `x` through the direct series
/// `1 - 2 sum (4 x^2 s^2 - 1) exp(-2 x^2 s^2)`; the fast route for
/// large `x`.
pub fn max_cdf_direct(x: f64, spec: &SeriesSpec) -> Result<LimitEval> {
    require_positive("scaled height", x)?;
    let a = 2.0 * x * x;
    if a >= UNDERFLOW_EXPONENT {
        return Ok(LimitEval {
            arg: x,
            value: 1.0,
            terms_used: 0,
            tail_bound: f64::MIN_POSITIVE,
        });
    }
    let mut sum = 0.0;
    for s in 1..=spec.max_terms {
        let sf = s as f64;
        sum += (2.0 * a * sf * sf - 1.0) * (-a * sf * sf).exp();
        // Discarded terms satisfy 0 < (2 a s^2 - 1) e^{-a s^2} < 2 a s^2 e^{-a s^2}
        // once a * s > 1, so twice their sum is below 4a times the quadratic tail.
        let bound = 4.0 * a * quadratic_exp_tail_bound(a, s as u64);
        if bound < spec.abs_tol {
            return Ok(LimitEval {
                arg: x,
                value: 1.0 - 2.0 * sum,
                terms_used: s,
                tail_bound: bound,
            });
        }
    }
    Err(Error::SeriesTruncation {
        max_terms: spec.max_terms,
        tail_bound: 4.0 * a * quadratic_exp_tail_bound(a, spec.max_terms as u64),
    })
}

/// CDF of the scaled maximum at `x`, routed to whichever series
/// converges faster on that side of the crossover.
pub fn max_cdf(x: f64, spec: &SeriesSpec) -> Result<LimitEval> {
    require_positive("scaled height", x)?;
    if x < 1.0 {
        max_cdf_dual(x, spec)
    } else {
        max_cdf_direct(x, spec)
    }
}

/// `sum_{s>=1} exp(-a s^2)` certified so that `weight * tail` is below
/// the tolerance.
fn gaussian_theta_sum(a: f64, weight: f64, spec: &SeriesSpec) -> Result<(f64, usize, f64)> {
    if a >= UNDERFLOW_EXPONENT {
        return Ok((0.0, 0, 0.0));
    }
    let mut sum = 0.0;
    for s in 1..=spec.max_terms {
        let sf = s as f64;
        sum += (-a * sf * sf).exp();
        let bound = weight * plain_exp_tail_bound(a, s as u64);
        if bound < spec.abs_tol {
            return Ok((sum, s, bound));
        }
    }
    Err(Error::SeriesTruncation {
        max_terms: spec.max_terms,
        tail_bound: weight * plain_exp_tail_bound(a, spec.max_terms as u64),
    })
}

/// Residual of the functional equation linking the two series, Poisson
/// summation applied to the Gaussian `exp(-2 u^2 x^2)`:
///
/// ```text
/// x (1 + 2 sum_{n>=1} exp(-2 n^2 x^2))
///   = sqrt(pi/2) (1 + 2 sum_{k>=1} exp(-pi^2 k^2 / (2 x^2)))
/// ```
///
/// The returned `value` is `|lhs - rhs|`, at most `tail_bound` plus
/// roundoff when both sides are evaluated exactly; `terms_used` counts
/// both sides together.
pub fn poisson_identity_residual(x: f64, spec: &SeriesSpec) -> Result<LimitEval> {
    require_positive("scaled height", x)?;
    let (left_sum, left_terms, left_bound) = gaussian_theta_sum(2.0 * x * x, 2.0 * x, spec)?;
    let lhs = x * (1.0 + 2.0 * left_sum);

    let rhs_const = (std::f64::consts::PI / 2.0).sqrt();
    let right_exponent = std::f64::consts::PI.powi(2) / (2.0 * x * x);
    let (right_sum, right_terms, right_bound) =
        gaussian_theta_sum(right_exponent, 2.0 * rhs_const, spec)?;
    let rhs = rhs_const * (1.0 + 2.0 * right_sum);

    Ok(LimitEval {
        arg: x,
        value: (lhs - rhs).abs(),
        terms_used: left_terms + right_terms,
        tail_bound: left_bound + right_bound,
    })
}
