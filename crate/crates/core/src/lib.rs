//! Exact arithmetic, bounds, constructions and search for the problem of
//! placing `1..=n²` in an `n×n` grid so that the entry sum of the squared
//! matrix is as large as possible.
//!
//! The objective only depends on the row and column sums of the grid:
//! `s(A²) = Σₖ Rₖ·Cₖ`. Every integer quantity is computed with checked
//! 128-bit arithmetic and reports [`Error::Overflow`] instead of wrapping.
//! Θ(n⁷) quantities stay in range up to roughly `n = 10⁴`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and parallel drivers live in the `matpow` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod construction;
mod error;
pub mod exact;
pub mod grid;
pub mod oracle;
pub mod search;

pub use crate::error::{Error, Result};
pub use crate::exact::{ExactInt, Rational};
pub use crate::grid::{Grid, Margins, RealMatrix};
