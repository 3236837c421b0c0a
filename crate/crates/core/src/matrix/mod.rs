//! Exact matrix algebra: delta vectors, logical matrices, bit-packed Boolean
//! matrices and arbitrary-precision count matrices.
//!
//! Matrix entry accessors (`get`, `set`, row/column numbers) are 0-based.
//! Anything that names a *state* or a delta index (`δ_n^i`, `delta n [..]`
//! literals) is 1-based, matching the usual vector-form notation.

mod boolean;
mod count;
mod logical;

pub use boolean::BooleanMatrix;
pub use count::CountMatrix;
pub use logical::{DeltaVector, LogicalMatrix};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("delta index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("matrix dimension must be positive")]
    EmptyDimension,
    #[error("column {col} is not a unit vector")]
    NotLogical { col: usize },
    #[error("ragged row {row}: expected {expected} entries, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    num_integer::lcm(a, b)
}
