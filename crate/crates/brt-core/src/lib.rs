//! Core machinery for the biased random transposition (bRT) shuffle.
//!
//! A deck of `N` cards is split into two halves `A` and `B`; one shuffle step
//! draws two card labels i.i.d. from a measure giving mass `a/N` to each card
//! in `A` and `b/N` to each card in `B` (with `0 < b <= a`, `a + b = 2`) and
//! swaps them.  This crate implements, exactly where it matters:
//!
//! - [`partitions`]: integer partitions, conjugation, dominance, the diagonal
//!   index that controls the spectrum;
//! - [`tableaux`]: standard/semistandard tableau counts and
//!   Littlewood–Richardson coefficients via lattice words;
//! - [`hives`]: an independent LR-coefficient count through integral hives,
//!   used as a cross-validation route;
//! - [`spectrum`]: the exact eigenvalue attached to each LR triple, with
//!   multiplicities, in rational arithmetic;
//! - [`chain`]: the concrete Markov chain — step measure, exact evolution and
//!   total-variation distance for small decks, seeded Monte Carlo walks, and a
//!   dense numeric eigensolver oracle;
//! - [`bounds`]: the l2 mixing-time upper bound, the Red/Blue/Yellow zone
//!   decomposition of the partition lattice, and the auxiliary functions and
//!   constants that drive it;
//! - [`limits`]: fixed-point moments via the trace formula, the Poisson limit
//!   law, and the total-variation lower bound.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod chain;
pub mod hives;
pub mod limits;
pub mod partitions;
pub mod spectrum;
pub mod tableaux;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input value (bad partition, size mismatch, out-of-domain
    /// argument, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Input is structurally fine but exceeds a documented resource guard.
    #[error("resource guard: {what} supports at most {limit}, got {got}")]
    ResourceGuard {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    /// An operation that requires the balanced split `|A| = |B|` was called
    /// with an unbalanced one.
    #[error("operation requires a balanced split (nA = nB), got nA={n_a}, nB={n_b}")]
    UnbalancedSplit { n_a: usize, n_b: usize },
    /// An iteration failed to terminate within its guard.
    #[error("iteration guard: {what} did not terminate within {limit} steps")]
    NonTermination { what: &'static str, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
