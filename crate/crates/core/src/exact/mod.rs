//! Exact integer, rational and finite-field linear algebra.

mod jordan;
mod lattice;
mod matrix;
mod poly;
mod ring;
mod snf;

pub use jordan::{
    field_inverse, field_rank, fp_rank, jordan_matrix, jordan_type, reduce_entries, JordanType,
};
pub use lattice::{intersection, kernel, preimage, quotient_invariants, rank, Subquotient};
pub use matrix::{FieldMatrix, IntMatrix, Matrix};
pub use poly::Poly;
pub use ring::{
    factorize, format_rational, parse_rational, EuclideanRing, Field, Integers, Rational,
};
pub use snf::{smith, smith_normal_form, Snf, SnfResult};
