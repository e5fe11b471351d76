//! Exact linear algebra over the rationals or a prime field.
//!
//! Everything downstream reduces to three questions about sparse integer-ish
//! systems: what is the rank, what is a canonical kernel basis, and do two
//! generating sets span the same subspace. All three are answered from the
//! reduced row-echelon form, which is unique, so results are reproducible
//! bit-for-bit regardless of the order in which rows were produced.

pub(crate) mod echelon;
mod matrix;
mod scalar;

pub use echelon::{nullspace_basis, rank, rref, span_dim, span_equal, Rref};
pub use matrix::{Matrix, SparseRow};
pub use scalar::{Field, Scalar};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: Field, found: Field },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("column index {col} out of range for {ncols} columns")]
    ColumnOutOfRange { col: usize, ncols: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unrecognized field descriptor `{0}` (expected `rat` or `gf:<p>`)")]
    BadFieldDescriptor(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// A dense vector of scalars, all from one field.
pub type Vector = Vec<Scalar>;
