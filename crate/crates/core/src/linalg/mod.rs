//! Exact integer and rational linear algebra.

mod dense;
pub mod rational;
pub mod reduce;
mod snf;
mod sparse;

pub use dense::Matrix;
pub use reduce::{ChainComplex, DegreeHomology};
pub use snf::{smith_normal_form, Snf};
pub use sparse::{SparseMatrix, SparseVec};
