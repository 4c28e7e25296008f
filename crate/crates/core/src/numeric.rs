//! Floating-point utilities: log-gamma, log-sum-exp, and logarithms of
//! arbitrary-precision integers and their ratios.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// `ln Gamma(x)` for `x > 0` by the Stirling series, shifting small
/// arguments upward first. Absolute error is below `1e-12` for the
/// integer arguments this crate uses (oracle-tested against exact
/// factorials).
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires a positive argument");
    let mut shift = 0.0;
    let mut x = x;
    // ln Gamma(x) = ln Gamma(x + k) - ln(x (x+1) ... (x+k-1))
    while x < 10.0 {
        shift += x.ln();
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let series = inv / 12.0
        * (1.0 - inv2 / 30.0 * (1.0 - inv2 * 2.0 / 7.0 * (1.0 - inv2 * 3.0 / 4.0)));
    (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series - shift
}

/// `ln(k!)`.
pub fn ln_factorial(k: u64) -> f64 {
    ln_gamma(k as f64 + 1.0)
}

/// `ln C_N` for the Catalan number, via log-gamma.
pub fn ln_catalan(half_length: u64) -> f64 {
    ln_factorial(2 * half_length)
        - ln_factorial(half_length)
        - ln_factorial(half_length + 1)
}

/// `ln(sum exp(v))` computed stably; empty input and all `-inf` give
/// `-inf`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// Natural log of a nonnegative big integer; `-inf` for zero. The top 53
/// bits carry the mantissa, so the absolute error stays near one ulp of
/// the result even for integers of millions of bits.
pub fn log_big(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return value.to_f64().expect("fits in 53 bits").ln();
    }
    let shift = bits - 53;
    let mantissa = (value >> shift).to_f64().expect("53-bit mantissa");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(numerator / denominator)` for big integers; `-inf` when the
/// numerator is zero. Panics on a zero denominator.
pub fn log_big_ratio(numerator: &BigUint, denominator: &BigUint) -> f64 {
    assert!(denominator.bits() > 0, "zero denominator");
    if numerator.bits() == 0 {
        return f64::NEG_INFINITY;
    }
    log_big(numerator) - log_big(denominator)
}

/// Scientific-notation rendering of a big integer, e.g. `1.234568e+12`,
/// for display next to exact decimal strings.
pub fn to_scientific(value: &BigUint, significant: usize) -> String {
    if value.bits() == 0 {
        return "0".to_string();
    }
    let log10 = log_big(value) / std::f64::consts::LN_10;
    let exponent = log10.floor();
    let mantissa = 10f64.powf(log10 - exponent);
    format!("{:.*}e+{:02}", significant.saturating_sub(1), mantissa, exponent as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn factorial_big(k: u64) -> BigUint {
        let mut f = BigUint::one();
        for i in 2..=k {
            f *= i;
        }
        f
    }

    #[test]
    fn ln_gamma_matches_exact_factorials() {
        // ln Gamma(k + 1) = ln(k!), with k! exact in big integers.
        for k in [0u64, 1, 2, 3, 5, 10, 20, 100, 1000, 4000, 200001] {
            let exact = log_big(&factorial_big(k));
            let approx = ln_factorial(k);
            let tol = 1e-12 * exact.abs().max(1.0);
            assert!(
                (exact - approx).abs() < tol,
                "k={k}: exact {exact} vs ln_gamma {approx}"
            );
        }
    }

    #[test]
    fn ln_gamma_half_integer() {
        // Gamma(1/2) = sqrt(pi).
        let expected = std::f64::consts::PI.sqrt().ln();
        assert!((ln_gamma(0.5) - expected).abs() < 1e-12);
    }

    #[test]
    fn ln_catalan_matches_exact() {
        for n in [1u64, 2, 10, 100, 2000] {
            let exact = log_big(&crate::exact::catalan(n));
            assert!(
                (ln_catalan(n) - exact).abs() < 1e-10 * exact.max(1.0),
                "N = {n}"
            );
        }
    }

    #[test]
    fn log_sum_exp_basics() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
        // ln(e^0 + e^0) = ln 2.
        assert!((log_sum_exp(&[0.0, 0.0]) - std::f64::consts::LN_2).abs() < 1e-15);
        // A huge shared offset must not overflow.
        let shifted = log_sum_exp(&[1000.0, 1000.0]);
        assert!((shifted - (1000.0 + std::f64::consts::LN_2)).abs() < 1e-12);
        // -inf entries are ignored.
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY, 3.0]), 3.0);
    }

    #[test]
    fn log_big_small_and_large() {
        assert_eq!(log_big(&BigUint::from(0u32)), f64::NEG_INFINITY);
        assert_eq!(log_big(&BigUint::from(1u32)), 0.0);
        assert!((log_big(&BigUint::from(1000u32)) - 1000f64.ln()).abs() < 1e-14);
        // 2^200: log must be exactly 200 ln 2 up to rounding.
        let big = BigUint::one() << 200;
        assert!((log_big(&big) - 200.0 * std::f64::consts::LN_2).abs() < 1e-11);
    }

    #[test]
    fn log_big_ratio_examples() {
        let two = BigUint::from(2u32);
        let one = BigUint::one();
        assert!((log_big_ratio(&one, &two) - 0.5f64.ln()).abs() < 1e-15);
        assert_eq!(log_big_ratio(&BigUint::from(0u32), &two), f64::NEG_INFINITY);
        // A ratio of two ~600-digit numbers.
        let a = factorial_big(300);
        let b = factorial_big(299);
        assert!((log_big_ratio(&a, &b) - 300f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(to_scientific(&BigUint::from(0u32), 6), "0");
        let rendered = to_scientific(&BigUint::from(16796u32), 6);
        assert_eq!(rendered, "1.67960e+04");
    }
}
