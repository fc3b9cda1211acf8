//! Exact construction of Pascal-type triangles (convolution arrays and
//! weighted Delannoy triangles) together with log-concavity predicates,
//! two-sided sequences with geometric tails, and verification scanners.
//!
//! All arithmetic is over exact non-negative rationals.

pub mod cli;
pub mod error;
pub mod rat;
pub mod seq;
pub mod tail;
pub mod triangle;
pub mod verify;

pub use error::{Error, Result};
pub use rat::Rat;
pub use seq::{random_log_concave, FiniteSeq, LcWitness, ModeInterval};
pub use tail::{convolution_term, skew_tends_to_zero, Direction, FinitenessVerdict, GeomTail, TwoSidedSeq};
pub use triangle::{DelannoyParams, KurtzWeights, Triangle};
pub use verify::Report;
