//! Exact scalar arithmetic and linear algebra over the rationals and prime fields.
//!
//! Every higher-level question in the crate (membership in an ideal, the dimension of a
//! quotient, whether a map is a homomorphism) is reduced to rank and membership problems here.

mod dense;
mod field;
mod sparse;
mod subspace;

pub use dense::{axpy, is_zero_vec, kernel, Coordinatizer, Matrix};
pub use field::{
    is_prime, parse_rational, rational_string, Fa, Fb, Fc, Field, Fp, PRIME_A, PRIME_B, PRIME_C, Q, SUPPORTED_PRIMES,
};
pub use sparse::{SparseAccumulator, SparseMatrix, SparseVec};
pub use subspace::{row_reduce, Echelon, Subspace};

use thiserror::Error;

/// Errors raised by the linear-algebra layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaError {
    #[error("cannot parse exact scalar `{0}`")]
    Parse(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("denominator of {value} vanishes modulo {prime}")]
    DenominatorVanishes { value: String, prime: u64 },
    #[error("duplicate matrix entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("matrix entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}
