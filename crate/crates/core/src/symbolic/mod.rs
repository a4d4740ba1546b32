//! Exact computations over `𝔽₂(a_{i,j})` for the characteristic-2
//! differential identities of the bilinear form.

mod kx;
mod poly2;
mod ratfun;

pub use kx::{
    ell_identity, regression_corpus, sqrt_monomial, verify_kx, verify_on, KxInstance, KxInstanceJson, KxMode,
    KxVerdict, SymbolicSphere, ValidMatrix, CONE_TOKEN, MAX_D, MAX_N,
};
pub use poly2::{Exponents, F2Poly, Poly2};
pub use ratfun::RatFun2;
