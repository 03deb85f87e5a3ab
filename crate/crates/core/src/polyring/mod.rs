//! Exact sparse multivariate polynomials, rational matrices and the
//! poly-text format.

pub mod coeff;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod text;

pub use coeff::{parse_rational, rat, ratio, Coefficient, Rational};
pub use matrix::{Matrix, RationalMatrix};
pub use monomial::Monomial;
pub use poly::{dot, dot_in, FloatPolynomial, Poly, Polynomial};
pub use text::{parse_matrix_text, parse_poly_text, to_matrix_text, to_poly_text};
