//! Exact arithmetic: rationals, polynomials, factorization, number fields
//! and rational linear algebra. No floating point is used here.

pub mod factor;
pub mod matrix;
mod modp;
pub mod number_field;
pub mod poly;
pub mod rational;

pub use factor::{factor_over_rationals, is_irreducible, squarefree_decomposition, MAX_MODULAR_FACTORS};
pub use matrix::{in_rational_span, RatMatrix};
pub use number_field::{NumberField, NumberFieldElem};
pub use poly::RatPoly;
pub use rational::{int, parse_decimal, rat, Rational};
