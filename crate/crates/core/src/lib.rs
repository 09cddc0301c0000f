//! Exact solver and stochastic simulator for a multispecies asymmetric
//! exclusion process on an `L x n` torus with row-dependent hop rates.
//!
//! The torus carries one first-class particle (bullet) per row and exactly one
//! particle per column; the remaining particles are second-class (boxes). The
//! canonical state is a [`ColoredWord`] of length `L` over the `2n` symbols
//! `Bullet(k)` / `Box(k)`. Everything in this crate works on words; the torus
//! grid and the marked set partition are views.
//!
//! Module map:
//!
//! - [`model`]: state representations, bijections, enumeration, symmetries.
//! - [`symbolic`]: exact polynomials in `p_1..p_n, q_1..q_n` and symmetric
//!   function bases.
//! - [`dynamics`]: transitions with displacement records, generators,
//!   irreducibility, and the totally asymmetric restriction.
//! - [`stationary`]: monomial weights, exact null-space solves, balance and
//!   lumping checks.
//! - [`observables`]: partition functions, densities and currents, each
//!   paired with an expectation-based oracle.
//! - [`mcmc`]: continuous-time Monte Carlo with crossing ledgers.
//! - [`export`]: JSON and CSV encodings shared with the command-line tool.
//!
//! Indices are zero-based in the library (row/label `k` in `0..n`, column in
//! `0..L`). String forms such as `"B1 b3 b3"` are one-based.

pub mod dynamics;
pub mod error;
pub mod export;
pub mod mcmc;
pub mod model;
pub mod observables;
mod par;
pub mod stationary;
pub mod symbolic;

pub use error::{Error, Result};
pub use model::{ColoredWord, MarkedPartition, Symbol, TorusConfig};
pub use par::parallel_enabled;
pub use symbolic::{Monomial, Polynomial, RatePoint, RationalFunction};

/// Default cap on the number of states a generator or enumeration may touch.
pub const DEFAULT_STATE_CAP: u64 = 2_000_000;

/// Environment variable consulted by [`state_cap_from_env`].
pub const STATE_CAP_ENV: &str = "TORUS_ASEP_STATE_CAP";

/// Reads the state cap from [`STATE_CAP_ENV`], falling back to
/// [`DEFAULT_STATE_CAP`] when unset or unparsable.
pub fn state_cap_from_env() -> u64 {
    std::env::var(STATE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_STATE_CAP)
}
