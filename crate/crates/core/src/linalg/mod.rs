//! Exact integer and rational linear algebra.
//!
//! Nothing in here touches floating point. Matrices are small and dense; the
//! interesting parts are the Hermite normal form (used for cone
//! multiplicities) and the fraction-free determinant that serves as an
//! independent check on it.

mod integer;
mod rational;

pub use integer::{
    determinant, hermite_normal_form, is_hermite_normal_form, strip_zero_rows, IntegerMatrix,
};
pub use rational::{rational_rank, rational_rref, RationalMatrix};
