//! Exact q-series laboratory for the minimal-excludant partition statistics
//! `sigma_o mex(n)` and `sigma_e mex(n)`.
//!
//! The crate is organized around a handful of subsystems:
//!
//! - [`series`]: truncated power series over exact integers, with Pochhammer
//!   products, inversion, dissection, and modular reduction;
//! - [`partitions`]: brute-force partition enumeration and the mex statistic,
//!   used as ground truth;
//! - [`mex`]: generating functions for the mex sums and machine verification
//!   of congruence claims;
//! - [`theta`]: Ramanujan theta functions, Lambert series, 5-dissections, and
//!   an identity verification suite;
//! - [`eta`]: eta-quotient modularity checks (weights, Ligozat cusp orders,
//!   Nebentypus characters);
//! - [`asym`]: high-precision numerics for Hardy-Ramanujan type main terms
//!   and Tauberian constants;
//! - [`cache`]: a plain-text series cache format for reproducible batch runs.

pub mod asym;
pub mod cache;
pub mod eta;
pub mod mex;
pub mod partitions;
pub mod report;
pub mod series;
pub mod theta;

pub use series::{Series, SeriesError};

/// The universal carrier of every identity in this crate: a truncated power
/// series with arbitrary-precision integer coefficients.
pub type TruncSeries = Series<num_bigint::BigInt>;

/// Exact rational built on machine words; large enough for densities and
/// cusp orders, which never leave the small-number regime.
pub type Rational = num_rational::Ratio<i64>;
