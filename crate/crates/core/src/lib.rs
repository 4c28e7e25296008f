//! Statistics of the maximum height of uniform random Dyck paths.
//!
//! A Dyck path of half-length `N` is a sequence of `2N` steps, each `+1` or
//! `-1`, whose partial sums stay nonnegative and end at zero. This crate
//! computes, exactly and asymptotically, the distribution of the maximum
//! partial sum (the height) of a path drawn uniformly from all `C_N`
//! (Catalan many) such paths:
//!
//! * [`exact`]: arbitrary-precision counts of paths with bounded height,
//!   by dynamic programming, by integer powers of a path-graph adjacency
//!   matrix, and by brute-force enumeration ([`path`]).
//! * [`spectral`]: the same bounded counts through the eigendecomposition
//!   of the path graph, in direct and in log space.
//! * [`limit`]: the limiting law of `max / sqrt(2N)`, the maximum of a
//!   standard Brownian excursion, as two theta-type series linked by
//!   Poisson summation.
//! * [`deviations`]: lower- and upper-tail rate functions together with
//!   finite-size diagnostics that measure how fast the limits are
//!   approached.
//! * [`sampler`]: an exact uniform sampler over Dyck paths driven by
//!   big-integer suffix counts.

pub mod deviations;
pub mod error;
pub mod exact;
pub mod limit;
pub mod numeric;
pub mod path;
pub mod sampler;
pub mod spectral;

pub use error::{Error, Result};
pub use num_bigint::BigUint;
pub use path::{DyckPath, Step};
