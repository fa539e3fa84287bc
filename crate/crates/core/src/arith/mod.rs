//! Exact and certified arithmetic: dyadic intervals, transcendental
//! enclosures, polynomials over the rationals, matrices and factorization.

pub mod bivariate;
pub mod complex_box;
pub mod dyadic;
pub mod factor;
pub mod matrix;
mod modpoly;
pub mod poly;
pub mod transcendental;

pub use bivariate::{poly_resultant_eliminate, BiPoly};
pub use complex_box::{poly_eval_box, ComplexBox};
pub use dyadic::{Dyadic, DyadicInterval, Round};
pub use factor::factor_rational;
pub use matrix::RationalMatrix;
pub use poly::{
    poly_gcd, poly_squarefree, poly_xgcd, separation_bound, squarefree_decomposition, RatPoly,
};
