//! Exact uniform sampling of Dyck paths.
//!
//! A table of completion counts `b(r, h)` (nonnegative walks of length
//! `r` from height `h` down to height 0, unbounded above) turns uniform
//! sampling into a sequence of exact Bernoulli choices: at height `h`
//! with `r` steps left, step up with probability `b(r-1, h+1)/b(r, h)`.
//! The product of those conditionals telescopes to `1/C_N` for every
//! path, so the law is exactly uniform. Decisions compare big-integer
//! thresholds against uniform big-integer draws, never floats, so no
//! rounding bias enters at any size.

use crate::error::{Error, Result};
use crate::exact::{catalan, count_bounded, max_height_counts};
use crate::path::{DyckPath, Step};
use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;

/// Completion counts `b(r, h)` for suffixes of Dyck paths of
/// half-length `N`; row `r` holds heights `0..=r`.
#[derive(Debug, Clone)]
pub struct CompletionTable {
    half_length: u64,
    rows: Vec<Vec<BigUint>>,
}

impl CompletionTable {
    /// Builds all completion counts for paths of `2N` steps, `N >= 1`.
    /// Cost is `O(N^2)` big-integer additions, kept once and shared by
    /// any number of draws.
    pub fn build(half_length: u64) -> Self {
        assert!(half_length >= 1, "sampling needs at least one step pair");
        let steps = (2 * half_length) as usize;
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(steps + 1);
        rows.push(vec![BigUint::one()]);
        for r in 1..=steps {
            let previous = &rows[r - 1];
            let mut row = vec![BigUint::zero(); r + 1];
            for (h, entry) in row.iter_mut().enumerate() {
                let mut value = BigUint::zero();
                if h + 1 < previous.len() {
                    value += &previous[h + 1];
                }
                if h > 0 && h - 1 < previous.len() {
                    value += &previous[h - 1];
                }
                *entry = value;
            }
            rows.push(row);
        }
        let table = CompletionTable { half_length, rows };
        debug_assert_eq!(*table.completions(steps, 0), catalan(half_length));
        table
    }

    pub fn half_length(&self) -> u64 {
        self.half_length
    }

    /// `b(remaining, height)`; zero outside the reachable wedge.
    pub fn completions(&self, remaining: usize, height: u64) -> &BigUint {
        static ZERO: BigUint = BigUint::ZERO;
        match self.rows.get(remaining).and_then(|row| row.get(height as usize)) {
            Some(value) => value,
            None => &ZERO,
        }
    }

    /// Draws one path with probability exactly `1/C_N`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> DyckPath {
        let total_steps = (2 * self.half_length) as usize;
        let mut steps = Vec::with_capacity(total_steps);
        let mut height = 0u64;
        for taken in 0..total_steps {
            let remaining = total_steps - taken;
            let denominator = self.completions(remaining, height);
            let up_weight = self.completions(remaining - 1, height + 1);
            // Uniform draw below the denominator; up iff it lands in the
            // up-weight block. Exact integers, so no bias at any size.
            let draw = rng.gen_biguint_below(denominator);
            if draw < *up_weight {
                steps.push(Step::Up);
                height += 1;
            } else {
                steps.push(Step::Down);
                height -= 1;
            }
        }
        DyckPath::from_steps_unchecked(steps)
    }

    /// Empirical distribution of the maximum height over `draws`
    /// samples; frequencies sum to 1.
    pub fn empirical_max_distribution<R: Rng + ?Sized>(
        &self,
        draws: u64,
        rng: &mut R,
    ) -> BTreeMap<u64, f64> {
        assert!(draws >= 1, "at least one draw");
        let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
        for _ in 0..draws {
            *counts.entry(self.sample(rng).max_height()).or_insert(0) += 1;
        }
        counts
            .into_iter()
            .map(|(height, count)| (height, count as f64 / draws as f64))
            .collect()
    }

    /// Draws one path conditioned on `max < height_cap` by rejection,
    /// returning the path and the number of attempts it took. Errors if
    /// the conditioning event is empty.
    pub fn sample_below<R: Rng + ?Sized>(
        &self,
        height_cap: u64,
        rng: &mut R,
    ) -> Result<(DyckPath, u64)> {
        if count_bounded(self.half_length, height_cap).is_zero() {
            return Err(Error::InvalidHeight {
                value: height_cap,
                range: "2..",
                half_length: self.half_length,
            });
        }
        let mut attempts = 0u64;
        loop {
            attempts += 1;
            let path = self.sample(rng);
            if path.max_height() < height_cap {
                return Ok((path, attempts));
            }
        }
    }
}

/// Kolmogorov-Smirnov distance between an empirical max-height
/// distribution and the exact one at the same half-length.
pub fn ks_distance_to_exact(half_length: u64, empirical: &BTreeMap<u64, f64>) -> f64 {
    let total = catalan(half_length);
    let pmf = max_height_counts(half_length);
    let mut running = BigUint::zero();
    let mut empirical_cdf = 0.0;
    let mut worst: f64 = 0.0;
    for height in 1..=half_length {
        if let Some(count) = pmf.get(&height) {
            running += count;
        }
        let exact_cdf = if running == total {
            1.0
        } else {
            crate::numeric::log_big_ratio(&running, &total).exp()
        };
        empirical_cdf += empirical.get(&height).copied().unwrap_or(0.0);
        worst = worst.max((empirical_cdf - exact_cdf).abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::{max_cdf, SeriesSpec};
    use crate::numeric::log_big_ratio;
    use crate::path::enumerate_paths;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng(seed: u64) -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(seed)
    }

    /// Brute count of nonnegative walks of length `r` from `start` to 0.
    fn brute_completions(r: usize, start: u64) -> u64 {
        if r == 0 {
            return u64::from(start == 0);
        }
        let mut total = brute_completions(r - 1, start + 1);
        if start > 0 {
            total += brute_completions(r - 1, start - 1);
        }
        total
    }

    #[test]
    fn table_boundary_rows() {
        let table = CompletionTable::build(1);
        assert_eq!(*table.completions(2, 0), BigUint::from(1u32));
        let table = CompletionTable::build(3);
        assert_eq!(*table.completions(6, 0), BigUint::from(5u32));
        assert_eq!(*table.completions(0, 0), BigUint::from(1u32));
        assert_eq!(*table.completions(0, 1), BigUint::from(0u32));
        assert_eq!(*table.completions(9, 0), BigUint::from(0u32));
    }

    #[test]
    fn table_matches_brute_force_suffix_counts() {
        let table = CompletionTable::build(3);
        for remaining in 0..=6usize {
            for height in 0..=6u64 {
                assert_eq!(
                    *table.completions(remaining, height),
                    BigUint::from(brute_completions(remaining, height)),
                    "r={remaining} h={height}"
                );
            }
        }
    }

    #[test]
    fn single_path_case_is_deterministic() {
        let table = CompletionTable::build(1);
        let mut rng = rng(11);
        for _ in 0..20 {
            assert_eq!(table.sample(&mut rng).to_string(), "UD");
        }
    }

    #[test]
    fn two_path_case_is_balanced() {
        let table = CompletionTable::build(2);
        let mut rng = rng(20260825);
        let mut up_up = 0u64;
        let draws = 100_000;
        for _ in 0..draws {
            let path = table.sample(&mut rng);
            match path.to_string().as_str() {
                "UUDD" => up_up += 1,
                "UDUD" => {}
                other => panic!("impossible path {other}"),
            }
        }
        let frequency = up_up as f64 / draws as f64;
        assert!((frequency - 0.5).abs() < 0.01, "UUDD frequency {frequency}");
    }

    #[test]
    fn conditional_products_telescope_to_uniform() {
        // The sampler's chain rule, evaluated symbolically path by path,
        // must give exactly 1/C_N with no roundoff at all.
        for half_length in 1..=5u64 {
            let table = CompletionTable::build(half_length);
            let total_steps = (2 * half_length) as usize;
            let uniform = BigRational::new(
                BigInt::from(1u32),
                BigInt::from(catalan(half_length)),
            );
            for path in enumerate_paths(half_length).unwrap() {
                let mut probability = BigRational::new(BigInt::from(1u32), BigInt::from(1u32));
                let mut height = 0u64;
                for (taken, step) in path.steps().iter().enumerate() {
                    let remaining = total_steps - taken;
                    let denominator = table.completions(remaining, height);
                    let next_height = match step {
                        Step::Up => height + 1,
                        Step::Down => height - 1,
                    };
                    let numerator = table.completions(remaining - 1, next_height);
                    probability *= BigRational::new(
                        BigInt::from(numerator.clone()),
                        BigInt::from(denominator.clone()),
                    );
                    height = next_height;
                }
                assert_eq!(probability, uniform, "N={half_length} path {path}");
            }
        }
    }

    #[test]
    fn empirical_max_matches_exact_pmf() {
        let table = CompletionTable::build(3);
        let empirical = table.empirical_max_distribution(100_000, &mut rng(7));
        let expected = [(1u64, 0.2f64), (2, 0.6), (3, 0.2)];
        for (height, probability) in expected {
            let observed = empirical.get(&height).copied().unwrap_or(0.0);
            assert!(
                (observed - probability).abs() < 0.01,
                "height {height}: {observed}"
            );
        }
        let mass: f64 = empirical.values().sum();
        assert!((mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi_squared_uniformity_over_d8() {
        let table = CompletionTable::build(4);
        let mut rng = rng(404);
        let draws = 100_000u64;
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for _ in 0..draws {
            *counts.entry(table.sample(&mut rng).to_string()).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 14);
        let expected = draws as f64 / 14.0;
        let statistic: f64 = counts
            .values()
            .map(|&observed| {
                let diff = observed as f64 - expected;
                diff * diff / expected
            })
            .sum();
        // Critical value of chi-squared with 13 degrees of freedom at
        // significance 1e-3.
        assert!(statistic < 34.528, "chi-squared statistic {statistic}");
    }

    #[test]
    fn empirical_cdf_approaches_limit_law() {
        let table = CompletionTable::build(200);
        let empirical = table.empirical_max_distribution(10_000, &mut rng(99));
        // sqrt(2N) = 20, so the scaled maximum at x = 1 is height 20.
        let below: f64 = empirical
            .iter()
            .filter(|(height, _)| **height <= 20)
            .map(|(_, frequency)| frequency)
            .sum();
        let exact = log_big_ratio(&count_bounded(200, 21), &catalan(200)).exp();
        assert!(
            (below - exact).abs() < 0.015,
            "empirical {below} vs exact {exact}"
        );
        // The exact law at this size still sits 0.13 above the limit
        // value (the distance shrinks like 1/sqrt(N)), so the limit only
        // loosely brackets the empirical CDF from below.
        let limit = max_cdf(1.0, &SeriesSpec::default()).unwrap().cdf();
        assert!(
            below > limit && below - limit < 0.2,
            "empirical {below} vs limit {limit}"
        );
    }

    #[test]
    fn ks_distance_below_threshold() {
        // 1.9495/sqrt(draws): the Kolmogorov critical value at
        // significance 1e-3 for 1e5 draws.
        let threshold = 1.9494746 / (100_000f64).sqrt();
        for (half_length, seed) in [(5u64, 1u64), (20, 2), (50, 3)] {
            let table = CompletionTable::build(half_length);
            let empirical = table.empirical_max_distribution(100_000, &mut rng(seed));
            let distance = ks_distance_to_exact(half_length, &empirical);
            assert!(
                distance < threshold,
                "N={half_length}: KS {distance} vs {threshold}"
            );
        }
    }

    #[test]
    fn bounded_sampling_by_rejection() {
        let table = CompletionTable::build(6);
        let mut rng = rng(5);
        let mut total_attempts = 0u64;
        for _ in 0..200 {
            let (path, attempts) = table.sample_below(3, &mut rng).unwrap();
            assert!(path.max_height() < 3);
            assert!(attempts >= 1);
            total_attempts += attempts;
        }
        assert!(total_attempts > 200, "rejection must occur at N=6, cap 3");
        assert!(table.sample_below(1, &mut rng).is_err());
    }
}
