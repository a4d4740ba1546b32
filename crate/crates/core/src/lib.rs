//! Local face modules of triangulations of simplices.
//!
//! Combinatorics of triangulations and their local h-polynomials, exact
//! arithmetic over the rationals and finite fields, the local face module
//! inside an artinian reduction of the face ring, Stanley's bilinear form
//! and Lefschetz tests, a symbolic characteristic-2 layer and regularity
//! certificates.

pub mod algebra;
pub mod bitset;
pub mod catalog;
pub mod complex;
pub mod duality;
pub mod error;
pub mod field;
pub mod geometry;
pub mod lefschetz;
pub mod linalg;
pub mod lsop;
pub mod module;
pub mod poly;
pub mod regress;
pub mod specialize;
pub mod symbolic;

pub use bitset::BitSet;
pub use complex::Triangulation;
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use poly::IntPolynomial;
