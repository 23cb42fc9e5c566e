//! Dense bit-packed linear algebra over GF(2).
//!
//! Bit `i` of a [`BitVector`] is component `x_{i+1}` of the vector it
//! represents (1-indexed in prose, 0-indexed in storage). That single
//! convention is used everywhere: matrix columns, graph vertex labels and
//! hypercube coordinates all agree on it.

mod matrix;
mod search;
mod text;
mod vector;
mod weights;

pub use matrix::{in_span, BitMatrix, RowSpace};
pub use search::{min_weight_in_coset, SearchOutcome};
pub use text::{parse_matrix, render_matrix, ParseError};
pub use vector::BitVector;
pub use weights::{binomial, fixed_weight_iter, FixedWeightIter};

use thiserror::Error;

/// Errors raised by GF(2) operations with explicit contracts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("rows must all have length {expected}; row {row} has length {actual}")]
    RaggedRows {
        row: usize,
        expected: usize,
        actual: usize,
    },
    #[error("excluded row {row} is not in the kernel of the parity matrix")]
    ExcludedRowOutsideKernel { row: usize },
}
