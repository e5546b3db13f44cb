//! Integer Heffter arrays and Heffter array sets: construction, verification
//! and exact search.
//!
//! An integer Heffter array `H(m,n;s,k)` is an `m x n` partially filled array
//! of nonzero integers with `s` filled cells per row, `k` per column, every
//! row and column summing to zero, and pairwise distinct absolute values
//! drawn from `[1, 2nk]` (one representative of each pair `{x, -x}`). An
//! integer Heffter array set `IHS(m,n;c)` is a collection of `c` totally
//! filled `m x n` zero-sum arrays whose supports are jointly distinct within
//! `[1, 2mnc]`.
//!
//! The crate provides:
//! * [`grid`] — the partially filled array carrier and its elementary
//!   transforms (shift, negate, transpose, overlay);
//! * [`params`] — validated parameter tuples and admissibility tests;
//! * [`verify`] — the defining-condition verifier producing structured
//!   reports;
//! * [`blocks`] — the 2x3 block families and the fixed zero-sum block
//!   templates;
//! * [`ihs`] — assembly of complete Heffter array sets;
//! * [`heffter`] — rectangular Heffter array construction: diagonal folding,
//!   shiftable companions, overlay assembly, diagonal composition, and the
//!   top-level dispatcher;
//! * [`solver`] — a skeleton-constrained exact backtracking search, used as
//!   base-array provider and as a probe for open parameter ranges;
//! * [`io`] — JSON/CSV grid documents and the fixture catalog.
//!
//! ```
//! use heffter_core::{ihs, verify_ihs, IhsParams};
//!
//! let params = IhsParams::new(10, 7, 2).unwrap();
//! let set = ihs::build_n3mod4(&params).unwrap();
//! assert!(verify_ihs(&set, &params).valid);
//! ```

pub mod blocks;
mod error;
pub mod grid;
pub mod heffter;
pub mod ihs;
pub mod io;
pub mod params;
pub mod solver;
pub mod verify;

pub use error::Error;
pub use grid::Grid;
pub use params::{HeffterParams, IhsParams};
pub use verify::{verify_heffter, verify_ihs, Finding, VerifyReport};

/// Result of a construction dispatcher: either a built artifact with the
/// route that produced it, or a tagged refusal.
#[derive(Debug, Clone)]
pub enum Outcome<T> {
    /// The artifact, plus a short human-readable route label.
    Built(T, String),
    /// Necessary conditions fail; nothing with these parameters exists.
    Inadmissible(String),
    /// Outside the cases this crate constructs (existence may be known
    /// elsewhere, or open).
    Unsupported(String),
}

impl<T> Outcome<T> {
    pub fn built(self) -> Option<T> {
        match self {
            Outcome::Built(t, _) => Some(t),
            _ => None,
        }
    }
}
