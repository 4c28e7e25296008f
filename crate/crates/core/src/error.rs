//! Error type shared by all modules.

/// Errors reported by this crate. Every variant is a caller mistake
/// (domain violation or size limit), never an internal failure.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Brute-force enumeration is capped to keep memory bounded.
    #[error("enumeration of half-length {half_length} exceeds the limit of {max} (C_N grows exponentially)")]
    EnumerationTooLarge { half_length: u64, max: u64 },

    /// Midpoint heights require `N + m` even; no path can be at an
    /// odd-offset height after `N` steps.
    #[error("no path of half-length {half_length} reaches height {height} at its midpoint: {half_length} + {height} is odd")]
    ParityViolation { half_length: u64, height: u64 },

    /// A real argument outside the mathematical domain of the function.
    #[error("{what} must satisfy {requirement}, got {value}")]
    OutOfDomain {
        what: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// The direct spectral sum would overflow f64 range; the log-space
    /// variant `spectral::log_spectral_ratio` has no such limit.
    #[error("half-length {half_length} exceeds {max}: 4^N overflows f64, use log_spectral_ratio instead")]
    FloatRangeExceeded { half_length: u64, max: u64 },

    /// A height threshold that rounds outside `1..=N`, or a height cap
    /// too small to bound any path.
    #[error("height parameter {value} is outside the valid range {range} for half-length {half_length}")]
    InvalidHeight {
        value: u64,
        range: &'static str,
        half_length: u64,
    },

    /// A series hit its term cap before the certified tail bound dropped
    /// below the requested tolerance.
    #[error("series did not certify convergence within {max_terms} terms (tail bound {tail_bound:e})")]
    SeriesTruncation { max_terms: usize, tail_bound: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
