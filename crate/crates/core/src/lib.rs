//! Exact combinatorics of bumpless pipe dreams.
//!
//! The crate computes Grothendieck and Schubert polynomials as signed sums
//! over (marked) bumpless pipe dreams, cross-checks them against the
//! divided-difference recursion, and provides exhaustive checkers for the
//! degree, support and leading-term properties of these polynomials over
//! small symmetric groups.

pub mod bpd;
pub mod cli;
pub mod degree;
pub mod error;
pub mod moves;
pub mod permutation;
pub mod polynomial;
pub mod support;

pub use bpd::{Bpd, MarkedBpd, Tile, TileGrid};
pub use error::{Error, Result};
pub use permutation::{all_permutations, Code, Permutation, RankInterpretation};
pub use polynomial::{Exponent, SparsePoly};
