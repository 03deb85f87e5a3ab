//! Exact construction, verification and classification of eikonal
//! polynomials: homogeneous `f` of degree `g` with `|∇f|² = g²|x|^(2g−2)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`polyring`]: exact sparse polynomials over the rationals, rational
//!   matrices and the poly-text format.
//! - [`constructors`]: primitive families `h_{g,H}`, the canonical quartics,
//!   assembly of a quartic from normal-form data, and a structured search
//!   for isoparametric pencils.
//! - [`analysis`]: residual identities (eikonal equation, the coefficient
//!   system of a quartic normal form, the pencil identities).
//! - [`normalform`]: reduction of a quartic to its normal form around a
//!   maximum on the unit sphere.
//! - [`classifier`]: the primitive / isoparametric decision procedure for
//!   eikonal quartics.
//! - [`cli`]: the `eikq` command line.

pub mod analysis;
pub mod classifier;
pub mod cli;
pub mod constructors;
pub mod error;
pub mod normalform;
pub mod polyring;

pub use error::{Error, Result};
pub use polyring::{Polynomial, Rational, RationalMatrix};
