//! Exact counting of Dyck paths by maximum height.
//!
//! Throughout, `count_bounded(N, n)` is the number of Dyck paths of
//! half-length `N` whose height stays strictly below `n`, written
//! `|D_{2N,n}|`. Strictness is the single convention used everywhere in
//! this crate; a weak bound `max <= h` is expressed as
//! `count_bounded(N, h + 1)`.
//!
//! Three independent routes produce the same integers:
//!
//! * a height-indexed dynamic program over path prefixes,
//! * the `(1,1)` entry of the `2N`-th power of the adjacency matrix of
//!   the path graph on `n` vertices (all in exact integers),
//! * brute-force enumeration via [`crate::path::enumerate_paths`].
//!
//! Reflection-principle counts for the upper-tail sandwich
//! ([`count_midpoint_peak`], [`reflection_touch_bound`]) live here too,
//! since they are plain binomial arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)` as an exact integer; zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    // Each intermediate result is itself a binomial coefficient, so the
    // division is exact at every step.
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// Catalan number `C_N = (2N)! / (N! (N+1)!)`, the number of Dyck paths
/// of half-length `N`. Computed by the exact recurrence
/// `C_{k+1} = C_k * 2(2k+1) / (k+2)`.
pub fn catalan(half_length: u64) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..half_length {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

/// Interior widths never exceed `N + 1`: a nonnegative prefix of a path
/// returning to zero within `2N` steps stays at height `<= N`.
fn dp_width(half_length: u64, height_cap: u64) -> usize {
    height_cap.min(half_length + 1) as usize
}

/// `|D_{2N,n}|`: Dyck paths of half-length `half_length` with maximum
/// height strictly below `height_cap`. A cap of zero forbids even the
/// empty path's height only for `N = 0`; by convention `n >= 1` and the
/// empty path (height 0) is counted whenever `N = 0`.
pub fn count_bounded(half_length: u64, height_cap: u64) -> BigUint {
    if height_cap == 0 {
        return BigUint::zero();
    }
    if half_length == 0 {
        return BigUint::one();
    }
    let width = dp_width(half_length, height_cap);
    let mut row = vec![BigUint::zero(); width];
    row[0] = BigUint::one();
    let mut next = vec![BigUint::zero(); width];
    for _ in 0..2 * half_length {
        advance_row(&row, &mut next);
        std::mem::swap(&mut row, &mut next);
    }
    row[0].clone()
}

/// One step of the bounded-height recursion
/// `c(i+1, h) = c(i, h-1) + c(i, h+1)` with reflecting walls at `0` and
/// at the cap.
fn advance_row(row: &[BigUint], next: &mut [BigUint]) {
    let width = row.len();
    for h in 0..width {
        let mut v = BigUint::zero();
        if h > 0 {
            v += &row[h - 1];
        }
        if h + 1 < width {
            v += &row[h + 1];
        }
        next[h] = v;
    }
}

/// `|D_{2N,n}|` for every `N = 0..=max_half_length` at a fixed cap, from
/// a single dynamic-programming sweep. Entry `k` is
/// `count_bounded(k, height_cap)`.
pub fn count_bounded_prefix(max_half_length: u64, height_cap: u64) -> Vec<BigUint> {
    if height_cap == 0 {
        return vec![BigUint::zero(); max_half_length as usize + 1];
    }
    let width = dp_width(max_half_length, height_cap);
    let mut row = vec![BigUint::zero(); width];
    row[0] = BigUint::one();
    let mut next = vec![BigUint::zero(); width];
    let mut out = Vec::with_capacity(max_half_length as usize + 1);
    out.push(BigUint::one());
    for i in 1..=2 * max_half_length {
        advance_row(&row, &mut next);
        std::mem::swap(&mut row, &mut next);
        if i % 2 == 0 {
            out.push(row[0].clone());
        }
    }
    out
}

/// The full prefix-count table `c(i, h)` of the bounded dynamic program,
/// retained for inspection and tests. Production counting uses the
/// two-row sweep in [`count_bounded`]; this table costs `O(N^2)` memory.
#[derive(Debug, Clone)]
pub struct BoundedCountTable {
    half_length: u64,
    height_cap: u64,
    rows: Vec<Vec<BigUint>>,
}

impl BoundedCountTable {
    /// Builds the table for paths of `2 * half_length` steps below
    /// `height_cap`. Requires `height_cap >= 1`.
    pub fn build(half_length: u64, height_cap: u64) -> Self {
        assert!(height_cap >= 1, "height cap must be positive");
        let width = dp_width(half_length, height_cap).max(1);
        let mut rows = Vec::with_capacity(2 * half_length as usize + 1);
        let mut first = vec![BigUint::zero(); width];
        first[0] = BigUint::one();
        rows.push(first);
        for i in 1..=2 * half_length as usize {
            let mut next = vec![BigUint::zero(); width];
            advance_row(&rows[i - 1], &mut next);
            rows.push(next);
        }
        BoundedCountTable {
            half_length,
            height_cap,
            rows,
        }
    }

    pub fn half_length(&self) -> u64 {
        self.half_length
    }

    pub fn height_cap(&self) -> u64 {
        self.height_cap
    }

    /// `c(step, height)`: prefixes of length `step` ending at `height`
    /// that never left `[0, height_cap)`. Heights at or above the stored
    /// width are unreachable and count zero.
    pub fn entry(&self, step: usize, height: u64) -> BigUint {
        self.rows
            .get(step)
            .and_then(|row| row.get(height as usize))
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// The bounded count `c(2N, 0)`.
    pub fn final_count(&self) -> &BigUint {
        &self.rows[2 * self.half_length as usize][0]
    }
}

/// `|D_{2N,n}|` as the `(1,1)` entry of `T^{2N}` for the `n x n`
/// adjacency matrix `T` of the path graph (`t_{ij} = 1` iff
/// `|i - j| = 1`), computed by exact integer exponentiation by squaring.
/// Independent of the dynamic program; must agree with
/// [`count_bounded`] everywhere.
pub fn count_bounded_matrix(half_length: u64, height_cap: u64) -> BigUint {
    if height_cap == 0 {
        return BigUint::zero();
    }
    let n = height_cap as usize;
    let adjacency: Vec<Vec<BigUint>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i.abs_diff(j) == 1 {
                        BigUint::one()
                    } else {
                        BigUint::zero()
                    }
                })
                .collect()
        })
        .collect();
    let power = matrix_power(&adjacency, 2 * half_length);
    power[0][0].clone()
}

fn matrix_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn matrix_power(m: &[Vec<BigUint>], mut exponent: u64) -> Vec<Vec<BigUint>> {
    let n = m.len();
    let mut result: Vec<Vec<BigUint>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigUint::one() } else { BigUint::zero() })
                .collect()
        })
        .collect();
    let mut base = m.to_vec();
    while exponent > 0 {
        if exponent & 1 == 1 {
            result = matrix_mul(&result, &base);
        }
        exponent >>= 1;
        if exponent > 0 {
            base = matrix_mul(&base, &base);
        }
    }
    result
}

/// Exact distribution of the maximum height at half-length `N >= 1`:
/// maps each height `h` in `1..=N` to the number of Dyck paths whose
/// maximum is exactly `h`. Values sum to `catalan(N)`.
pub fn max_height_counts(half_length: u64) -> BTreeMap<u64, BigUint> {
    let mut out = BTreeMap::new();
    if half_length == 0 {
        return out;
    }
    let mut below = count_bounded(half_length, 1);
    for h in 1..=half_length {
        let below_next = count_bounded(half_length, h + 1);
        let exactly = &below_next - &below;
        if !exactly.is_zero() {
            out.insert(h, exactly);
        }
        below = below_next;
    }
    out
}

/// Dyck paths of half-length `N` that sit at height `m` after exactly
/// `N` steps: the square of the ballot count
/// `C(N, (N+m)/2) - C(N, (N+m)/2 + 1)`, since the two halves may be
/// chosen independently. Requires `N + m` even.
pub fn count_midpoint_peak(half_length: u64, height: u64) -> Result<BigUint> {
    if (half_length + height) % 2 != 0 {
        return Err(Error::ParityViolation {
            half_length,
            height,
        });
    }
    if height > half_length {
        return Ok(BigUint::zero());
    }
    let k = (half_length + height) / 2;
    let ballot = binomial(half_length, k) - binomial(half_length, k + 1);
    Ok(&ballot * &ballot)
}

/// Reflection-principle bound `2 * C(2N, N + m)` on the number of Dyck
/// paths of half-length `N` that ever touch height `m`. An upper bound
/// only; it also counts walks that go negative or end off zero.
pub fn reflection_touch_bound(half_length: u64, height: u64) -> BigUint {
    2u32 * binomial(2 * half_length, half_length + height)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::enumerate_paths;

    /// Brute-force `|D_{2N,n}|` straight from the definition.
    fn count_by_enumeration(half_length: u64, height_cap: u64) -> BigUint {
        let matching = enumerate_paths(half_length)
            .unwrap()
            .into_iter()
            .filter(|p| p.max_height() < height_cap)
            .count();
        BigUint::from(matching)
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(4, 7), BigUint::zero());
    }

    #[test]
    fn binomial_matches_pascal_recurrence() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn catalan_known_values() {
        assert_eq!(catalan(0), BigUint::from(1u32));
        assert_eq!(catalan(4), BigUint::from(14u32));
        assert_eq!(catalan(10), BigUint::from(16796u32));
    }

    #[test]
    fn catalan_matches_binomial_formula() {
        for n in 0..200u64 {
            assert_eq!(catalan(n), binomial(2 * n, n) / (n + 1), "N = {n}");
        }
    }

    #[test]
    fn catalan_matches_enumeration() {
        for n in 0..=8u64 {
            assert_eq!(catalan(n), BigUint::from(enumerate_paths(n).unwrap().len()));
        }
    }

    #[test]
    fn count_bounded_examples() {
        // Only UDUD keeps its height strictly below 2.
        assert_eq!(count_bounded(2, 2), BigUint::one());
        // A cap above N never binds.
        assert_eq!(count_bounded(3, 10), BigUint::from(5u32));
        // No nonempty path stays strictly below height 1.
        assert_eq!(count_bounded(5, 1), BigUint::zero());
        // The empty path has height 0.
        assert_eq!(count_bounded(0, 1), BigUint::one());
        assert_eq!(count_bounded(0, 7), BigUint::one());
    }

    #[test]
    fn count_bounded_matches_enumeration() {
        for n in 0..=8u64 {
            for cap in 1..=n + 2 {
                assert_eq!(
                    count_bounded(n, cap),
                    count_by_enumeration(n, cap),
                    "N={n} cap={cap}"
                );
            }
        }
    }

    #[test]
    fn count_bounded_monotone_in_cap() {
        for n in [3u64, 7, 12, 25] {
            let mut prev = count_bounded(n, 1);
            for cap in 2..=n + 2 {
                let cur = count_bounded(n, cap);
                assert!(prev <= cur, "N={n} cap={cap}");
                prev = cur;
            }
        }
    }

    #[test]
    fn cap_above_half_length_recovers_catalan() {
        for n in 0..=40u64 {
            assert_eq!(count_bounded(n, n + 1), catalan(n), "N = {n}");
            assert_eq!(count_bounded(n, n + 17), catalan(n), "N = {n}");
        }
    }

    #[test]
    fn count_bounded_prefix_matches_single_calls() {
        for cap in [1u64, 2, 3, 5, 9] {
            let sweep = count_bounded_prefix(30, cap);
            assert_eq!(sweep.len(), 31);
            for (n, value) in sweep.iter().enumerate() {
                assert_eq!(*value, count_bounded(n as u64, cap), "N={n} cap={cap}");
            }
        }
    }

    #[test]
    fn matrix_count_examples() {
        // T^4 for the 2-vertex path graph is the identity scaled by
        // nothing: T^2 = I, so the (1,1) entry of T^4 is 1.
        assert_eq!(count_bounded_matrix(2, 2), BigUint::one());
        // T^0 = I.
        assert_eq!(count_bounded_matrix(0, 3), BigUint::one());
    }

    #[test]
    fn matrix_count_agrees_with_dp() {
        for n in 0..=8u64 {
            for cap in 1..=n + 2 {
                assert_eq!(
                    count_bounded_matrix(n, cap),
                    count_bounded(n, cap),
                    "N={n} cap={cap}"
                );
            }
        }
        // A few larger spot checks.
        assert_eq!(count_bounded_matrix(50, 5), count_bounded(50, 5));
        assert_eq!(count_bounded_matrix(120, 9), count_bounded(120, 9));
    }

    #[test]
    fn bounded_table_entries_match_brute_force_prefix_counts() {
        // Count prefixes by walking every path of the full length whose
        // prefix stays under the cap: equivalent to counting bounded
        // nonnegative walks directly.
        fn prefix_count(steps: usize, height: i64, cap: i64) -> u64 {
            fn walks(len: usize, end: i64, cap: i64) -> u64 {
                if len == 0 {
                    return u64::from(end == 0);
                }
                let mut total = 0;
                for delta in [-1i64, 1] {
                    let prev = end - delta;
                    if prev >= 0 && prev < cap {
                        total += walks(len - 1, prev, cap);
                    }
                }
                if end >= 0 && end < cap {
                    total
                } else {
                    0
                }
            }
            walks(steps, height, cap)
        }

        let table = BoundedCountTable::build(4, 3);
        for step in 0..=8usize {
            for height in 0..5u64 {
                assert_eq!(
                    table.entry(step, height),
                    BigUint::from(prefix_count(step, height as i64, 3)),
                    "step={step} h={height}"
                );
            }
        }
        assert_eq!(*table.final_count(), count_bounded(4, 3));
    }

    #[test]
    fn max_height_counts_small_cases() {
        let pmf1 = max_height_counts(1);
        assert_eq!(pmf1.len(), 1);
        assert_eq!(pmf1[&1], BigUint::one());

        let pmf2 = max_height_counts(2);
        assert_eq!(pmf2[&1], BigUint::one());
        assert_eq!(pmf2[&2], BigUint::one());

        let pmf3 = max_height_counts(3);
        assert_eq!(pmf3[&1], BigUint::one());
        assert_eq!(pmf3[&2], BigUint::from(3u32));
        assert_eq!(pmf3[&3], BigUint::one());
    }

    #[test]
    fn max_height_counts_match_enumeration() {
        for n in 1..=8u64 {
            let mut expected: BTreeMap<u64, BigUint> = BTreeMap::new();
            for p in enumerate_paths(n).unwrap() {
                *expected.entry(p.max_height()).or_default() += 1u32;
            }
            assert_eq!(max_height_counts(n), expected, "N = {n}");
        }
    }

    #[test]
    fn max_height_counts_sum_to_catalan() {
        for n in [1u64, 2, 5, 17, 60, 200] {
            let total: BigUint = max_height_counts(n).values().sum();
            assert_eq!(total, catalan(n), "N = {n}");
        }
    }

    #[test]
    fn midpoint_peak_examples() {
        assert_eq!(count_midpoint_peak(2, 2).unwrap(), BigUint::one());
        assert_eq!(count_midpoint_peak(2, 0).unwrap(), BigUint::one());
        assert_eq!(count_midpoint_peak(3, 1).unwrap(), BigUint::from(4u32));
        assert!(matches!(
            count_midpoint_peak(2, 1),
            Err(Error::ParityViolation { .. })
        ));
        assert_eq!(count_midpoint_peak(4, 6).unwrap(), BigUint::zero());
    }

    #[test]
    fn midpoint_peak_matches_enumeration() {
        for n in 1..=8u64 {
            let paths = enumerate_paths(n).unwrap();
            for m in (0..=n).filter(|m| (n + m) % 2 == 0) {
                // heights()[N-1] is the height after N steps.
                let brute = paths
                    .iter()
                    .filter(|p| p.heights()[n as usize - 1] == m)
                    .count();
                assert_eq!(
                    count_midpoint_peak(n, m).unwrap(),
                    BigUint::from(brute),
                    "N={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn touch_bound_examples() {
        assert_eq!(reflection_touch_bound(1, 1), BigUint::from(2u32));
        assert_eq!(reflection_touch_bound(2, 2), BigUint::from(2u32));
        assert_eq!(reflection_touch_bound(3, 1), BigUint::from(30u32));
    }

    #[test]
    fn touch_bound_dominates_exact_tail() {
        for n in 1..=8u64 {
            let paths = enumerate_paths(n).unwrap();
            for m in 1..=n {
                let touching = paths.iter().filter(|p| p.max_height() >= m).count();
                assert!(
                    reflection_touch_bound(n, m) >= BigUint::from(touching),
                    "N={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn tail_identity_against_enumeration() {
        // catalan(N) - count_bounded(N, m + 1) counts paths with
        // max >= m + 1.
        for n in 1..=8u64 {
            let paths = enumerate_paths(n).unwrap();
            for m in 0..=n {
                let tail = paths.iter().filter(|p| p.max_height() >= m + 1).count();
                assert_eq!(
                    catalan(n) - count_bounded(n, m + 1),
                    BigUint::from(tail),
                    "N={n} m={m}"
                );
            }
        }
    }
}
