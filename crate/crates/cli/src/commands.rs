//! Implementations of the data-producing subcommands.
//!
//! Each function resolves defaults, validates domain constraints, and
//! returns a filled [`OutputRecord`]; rendering and exit codes are the
//! caller's job. Domain violations surface as `dyckmax::Error` and map
//! to the usage exit code.

use clap::{Args, ValueEnum};
use dyckmax::deviations::{cramer_rate, gaussian_rate, moderate_rate, RateDiagnostic};
use dyckmax::exact::{catalan, count_bounded, count_bounded_matrix, max_height_counts};
use dyckmax::limit::{max_cdf_direct, max_cdf_dual, max_cdf_dual_t, SeriesSpec};
use dyckmax::numeric::{log_big, log_big_ratio, to_scientific};
use dyckmax::sampler::{ks_distance_to_exact, CompletionTable};
use dyckmax::spectral::spectral_count;
use dyckmax::{BigUint, Error, Result};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::Value;
use std::collections::BTreeMap;

use crate::output::{float, row, Outcome, OutputRecord};

/// Significant digits used by `--approx` when shortening big counts.
const APPROX_DIGITS: usize = 12;

/// Two exact methods agreeing with a floating method this closely count
/// as a cross-check pass.
const CROSS_CHECK_RELATIVE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Column-by-column dynamic programming over heights.
    Dp,
    /// Big-integer power of the path-graph adjacency matrix.
    Matrix,
    /// Floating eigendecomposition sum (half-lengths up to 480).
    Spectral,
    /// Every method, with a cross-check report.
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Dp => "dp",
            Method::Matrix => "matrix",
            Method::Spectral => "spectral",
            Method::All => "all",
        }
    }
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Half-length N; paths have 2N steps.
    #[arg(long = "N", value_name = "N")]
    pub half_length: u64,
    /// Height cap n: count paths whose maximum height stays strictly
    /// below n. Defaults to N+1, which counts all paths.
    #[arg(long = "n", value_name = "CAP")]
    pub height_cap: Option<u64>,
    /// Counting backend.
    #[arg(long, value_enum, default_value_t = Method::Dp)]
    pub method: Method,
    /// Render big counts in scientific notation instead of full decimal.
    #[arg(long)]
    pub approx: bool,
}

pub fn count(args: &CountArgs) -> Result<Outcome> {
    let half = args.half_length;
    let cap = args.height_cap.unwrap_or(half + 1);
    let mut record = OutputRecord::new("count");
    record.param("N", Value::from(half));
    record.param("n", Value::from(cap));
    record.param("method", Value::from(args.method.name()));
    record.param("approx", Value::from(args.approx));

    let mut agree = true;
    let mut exact: Option<BigUint> = None;
    if matches!(args.method, Method::Dp | Method::All) {
        let value = count_bounded(half, cap);
        record.push_row(row(vec![
            ("method", Value::from("dp")),
            ("count", big_value(&value, args.approx)),
        ]));
        exact = Some(value);
    }
    if matches!(args.method, Method::Matrix | Method::All) {
        let value = count_bounded_matrix(half, cap);
        record.push_row(row(vec![
            ("method", Value::from("matrix")),
            ("count", big_value(&value, args.approx)),
        ]));
        match &exact {
            None => exact = Some(value),
            Some(reference) => agree &= *reference == value,
        }
    }
    if matches!(args.method, Method::Spectral | Method::All) {
        match spectral_count(half, cap) {
            Ok(value) => {
                record.push_row(row(vec![
                    ("method", Value::from("spectral")),
                    ("count", float(value)),
                ]));
                if let Some(reference) = &exact {
                    let reference = log_big(reference).exp();
                    let relative = (value - reference).abs() / reference.max(1.0);
                    record.meta("spectral_relative_error", float(relative));
                    agree &= relative < CROSS_CHECK_RELATIVE;
                }
            }
            // Requesting only the floating method out of range is a
            // domain error; under `all` the exact methods still answer.
            Err(error) if args.method == Method::Spectral => return Err(error),
            Err(error) => record.meta("spectral", Value::from(format!("skipped: {error}"))),
        }
    }
    if args.method == Method::All {
        record.meta("methods_agree", Value::from(agree));
    }
    Ok(Outcome { record, ok: agree })
}

fn big_value(value: &BigUint, approx: bool) -> Value {
    if approx {
        Value::from(to_scientific(value, APPROX_DIGITS))
    } else {
        Value::from(value.to_string())
    }
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Half-length N; paths have 2N steps.
    #[arg(long = "N", value_name = "N")]
    pub half_length: u64,
    /// Render big counts in scientific notation instead of full decimal.
    #[arg(long)]
    pub approx: bool,
}

pub fn dist(args: &DistArgs) -> Result<Outcome> {
    let half = args.half_length;
    if half == 0 {
        return Err(Error::OutOfDomain {
            what: "--N",
            requirement: "at least 1 for a nondegenerate distribution",
            value: 0.0,
        });
    }
    let mut record = OutputRecord::new("dist");
    record.param("N", Value::from(half));
    record.param("approx", Value::from(args.approx));

    let total = catalan(half);
    let mut cumulative = BigUint::ZERO;
    for (height, count) in max_height_counts(half) {
        cumulative += &count;
        let cdf = if cumulative == total {
            1.0
        } else {
            log_big_ratio(&cumulative, &total).exp()
        };
        record.push_row(row(vec![
            ("height", Value::from(height)),
            ("count", big_value(&count, args.approx)),
            ("probability", float(ratio(&count, &total))),
            ("cumulative_count", big_value(&cumulative, args.approx)),
            ("cdf", float(cdf)),
        ]));
    }
    record.meta("total", big_value(&total, args.approx));
    Ok(record.into())
}

fn ratio(numerator: &BigUint, denominator: &BigUint) -> f64 {
    if numerator == denominator {
        1.0
    } else {
        log_big_ratio(numerator, denominator).exp()
    }
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Scaled thresholds x (the law of max+/sqrt(2N)); comma-separated.
    /// Defaults to the grid 0.3, 0.4, ..., 3.0.
    #[arg(long, value_delimiter = ',', value_name = "X,...", conflicts_with = "t")]
    pub x: Option<Vec<f64>>,
    /// Evaluate the dual series in its time parameterization t = 1/(2x^2)
    /// instead; comma-separated.
    #[arg(long, value_delimiter = ',', value_name = "T,...")]
    pub t: Option<Vec<f64>>,
    /// Absolute truncation tolerance for both series.
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    /// Hard cap on summed terms before truncation is reported as an error.
    #[arg(long, default_value_t = 10_000)]
    pub max_terms: usize,
}

pub fn limit(args: &LimitArgs) -> Result<Outcome> {
    let spec = SeriesSpec {
        abs_tol: args.tol,
        max_terms: args.max_terms,
    };
    let mut record = OutputRecord::new("limit");
    record.param("tol", float(args.tol));
    record.param("max_terms", Value::from(args.max_terms));
    record.meta("tol", float(args.tol));
    record.meta("max_terms", Value::from(args.max_terms));

    if let Some(ts) = &args.t {
        record.param("mode", Value::from("t"));
        for &t in ts {
            let eval = max_cdf_dual_t(t, &spec)?;
            record.push_row(row(vec![
                ("t", float(t)),
                ("value", float(eval.cdf())),
                ("terms", Value::from(eval.terms_used)),
                ("tail_bound", float(eval.tail_bound)),
            ]));
        }
        return Ok(record.into());
    }

    record.param("mode", Value::from("x"));
    let xs = args
        .x
        .clone()
        .unwrap_or_else(|| (3..=30).map(|tenths| tenths as f64 / 10.0).collect());
    let mut max_abs_diff = 0.0f64;
    for &x in &xs {
        let dual = max_cdf_dual(x, &spec)?;
        let direct = max_cdf_direct(x, &spec)?;
        let abs_diff = (dual.value - direct.value).abs();
        max_abs_diff = max_abs_diff.max(abs_diff);
        record.push_row(row(vec![
            ("x", float(x)),
            ("dual_series", float(dual.cdf())),
            ("direct_series", float(direct.cdf())),
            ("abs_diff", float(abs_diff)),
            ("dual_terms", Value::from(dual.terms_used)),
            ("direct_terms", Value::from(direct.terms_used)),
            ("dual_tail_bound", float(dual.tail_bound)),
            ("direct_tail_bound", float(direct.tail_bound)),
        ]));
    }
    record.meta("max_abs_diff", float(max_abs_diff));
    Ok(record.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    /// Lower tail at height cap n: (n+1)^2/N * ln P(max < n) against -pi^2.
    Moderate,
    /// Upper tail at threshold x*n: N/(2n^2) * ln P(max > m) against -x^2.
    Gaussian,
    /// Upper tail at threshold x*2N: 1/(2N) * ln P(max > m) against h(x).
    Cramer,
}

impl Regime {
    fn name(self) -> &'static str {
        match self {
            Regime::Moderate => "moderate",
            Regime::Gaussian => "gaussian",
            Regime::Cramer => "cramer",
        }
    }
}

#[derive(Debug, Args)]
pub struct DeviationArgs {
    /// Which finite-size diagnostic to compute.
    #[arg(long, value_enum)]
    pub regime: Regime,
    /// Half-length N; paths have 2N steps.
    #[arg(long = "N", value_name = "N")]
    pub half_length: u64,
    /// Height cap (moderate) or height scale (gaussian).
    #[arg(long = "n", value_name = "HEIGHT", required_if_eq_any([("regime", "moderate"), ("regime", "gaussian")]))]
    pub height: Option<u64>,
    /// Scaled threshold(s), as multiples of n (gaussian) or of 2N
    /// (cramer); comma-separated.
    #[arg(long, value_delimiter = ',', value_name = "X,...", required_if_eq_any([("regime", "gaussian"), ("regime", "cramer")]))]
    pub x: Option<Vec<f64>>,
}

pub fn deviation(args: &DeviationArgs) -> Result<Outcome> {
    let mut record = OutputRecord::new("deviation");
    record.param("regime", Value::from(args.regime.name()));
    record.param("N", Value::from(args.half_length));
    if let Some(height) = args.height {
        record.param("n", Value::from(height));
    }
    if let Some(xs) = &args.x {
        record.param("x", Value::from(xs.clone()));
    }

    match args.regime {
        Regime::Moderate => {
            if let Some(xs) = &args.x {
                return Err(Error::OutOfDomain {
                    what: "--x",
                    requirement: "omitted for the moderate regime",
                    value: xs.first().copied().unwrap_or(f64::NAN),
                });
            }
            let height = args.height.expect("clap requires --n for moderate");
            record.push_row(diagnostic_row(&moderate_rate(args.half_length, height)?));
        }
        Regime::Gaussian => {
            let height = args.height.expect("clap requires --n for gaussian");
            for &x in args.x.as_deref().expect("clap requires --x for gaussian") {
                record.push_row(diagnostic_row(&gaussian_rate(args.half_length, height, x)?));
            }
        }
        Regime::Cramer => {
            if let Some(height) = args.height {
                return Err(Error::OutOfDomain {
                    what: "--n",
                    requirement: "omitted for the cramer regime",
                    value: height as f64,
                });
            }
            for &x in args.x.as_deref().expect("clap requires --x for cramer") {
                record.push_row(diagnostic_row(&cramer_rate(args.half_length, x)?));
            }
        }
    }
    Ok(record.into())
}

fn diagnostic_row(diag: &RateDiagnostic) -> serde_json::Map<String, Value> {
    let mut pairs = vec![("N", Value::from(diag.half_length))];
    if let Some(height) = diag.height_scale {
        pairs.push(("n", Value::from(height)));
    }
    if let Some(x) = diag.x {
        pairs.push(("x", float(x)));
    }
    if let Some(threshold) = diag.threshold {
        pairs.push(("threshold", Value::from(threshold)));
    }
    pairs.push(("event", Value::from(diag.event)));
    pairs.push(("prelimit", float(diag.prelimit)));
    pairs.push(("limit", float(diag.limit)));
    pairs.push(("gap", float(diag.gap)));
    pairs.push(("flag", Value::from(diag.flag.to_string())));
    row(pairs)
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Half-length N; paths have 2N steps.
    #[arg(long = "N", value_name = "N")]
    pub half_length: u64,
    /// Number of paths to draw.
    #[arg(long, default_value_t = 10_000)]
    pub draws: u64,
    /// RNG seed; equal seeds give byte-identical output.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Condition on maximum height strictly below this cap, by rejection.
    #[arg(long, value_name = "CAP")]
    pub below: Option<u64>,
}

pub fn sample(args: &SampleArgs) -> Result<Outcome> {
    if args.half_length == 0 {
        return Err(Error::OutOfDomain {
            what: "--N",
            requirement: "at least 1 to have a path to draw",
            value: 0.0,
        });
    }
    if args.draws == 0 {
        return Err(Error::OutOfDomain {
            what: "--draws",
            requirement: "at least 1",
            value: 0.0,
        });
    }
    let half = args.half_length;
    let mut record = OutputRecord::new("sample");
    record.param("N", Value::from(half));
    record.param("draws", Value::from(args.draws));
    record.param("seed", Value::from(args.seed));
    record.meta("seed", Value::from(args.seed));

    let table = CompletionTable::build(half);
    let mut rng = ChaCha12Rng::seed_from_u64(args.seed);
    let counts = max_height_counts(half);

    match args.below {
        None => {
            let empirical = table.empirical_max_distribution(args.draws, &mut rng);
            let total = catalan(half);
            for (height, count) in &counts {
                record.push_row(row(vec![
                    ("height", Value::from(*height)),
                    ("count", Value::from(count.to_string())),
                    ("exact", float(ratio(count, &total))),
                    (
                        "empirical",
                        float(empirical.get(height).copied().unwrap_or(0.0)),
                    ),
                ]));
            }
            record.meta(
                "ks_distance",
                float(ks_distance_to_exact(half, &empirical)),
            );
        }
        Some(cap) => {
            record.param("below", Value::from(cap));
            let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
            let mut attempts_total = 0u64;
            for _ in 0..args.draws {
                let (path, attempts) = table.sample_below(cap, &mut rng)?;
                attempts_total += attempts;
                *histogram.entry(path.max_height()).or_insert(0) += 1;
            }
            let conditioned_total = count_bounded(half, cap);
            for (height, count) in counts.range(..cap) {
                let frequency =
                    histogram.get(height).copied().unwrap_or(0) as f64 / args.draws as f64;
                record.push_row(row(vec![
                    ("height", Value::from(*height)),
                    ("count", Value::from(count.to_string())),
                    ("exact", float(ratio(count, &conditioned_total))),
                    ("empirical", float(frequency)),
                ]));
            }
            record.meta("attempts", Value::from(attempts_total));
            record.meta(
                "acceptance_rate",
                float(args.draws as f64 / attempts_total as f64),
            );
        }
    }
    Ok(record.into())
}
