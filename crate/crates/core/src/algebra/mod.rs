//! Exact arithmetic: the prime field F_p, dense and Laurent polynomials
//! over it, and matrices over both.

mod bipoly;
mod fp;
mod fpmat;
mod laurent;
mod matrix;
mod poly;

pub(crate) use fp::raw;

pub use fp::{check_prime, Fp};
pub use fpmat::FpMatrix;
pub use laurent::LaurentPoly;
pub use matrix::LaurentMatrix;
pub use poly::{monic_polys_of_degree, DensePoly};
