//! Exact integer and rational matrix algebra.
//!
//! Everything downstream (lattices, discriminant groups, glue computations)
//! reduces to Smith normal form, kernels, saturation and exact congruence
//! diagonalization over the integers and rationals. No floating point.
//!
//! Convention: vectors are columns, so an isometry `g` preserves a Gram
//! matrix `G` iff `g^T G g = G`. Basis matrices store one generator per row.

mod intmat;
mod ratmat;
mod signature;
mod snf;

pub use intmat::IntMat;
pub use ratmat::RatMat;
pub use signature::signature;
pub use snf::{
    kernel_basis, lattice_intersection, saturate, smith_normal_form, SnfDecomposition,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub type Int = BigInt;
pub type Frac = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactNumError {
    #[error("matrix is degenerate (determinant zero)")]
    DegenerateForm,
    #[error("rows are linearly dependent")]
    DependentRows,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub(crate) fn int(n: i64) -> Int {
    Int::from(n)
}

pub(crate) fn frac(num: i64, den: i64) -> Frac {
    Frac::new(Int::from(num), Int::from(den))
}
