//! Coefficient rings for polynomials and matrices.
//!
//! Two rings are supported: exact rationals (the default everywhere) and
//! `f64`, used only on the numeric normal-form path.

use std::fmt;
use std::ops::{AddAssign, MulAssign, Neg, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub trait Coefficient:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Num
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    /// `true` for rings where zero tests are decisive.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }

    /// Zero test. Exact rings ignore `tol`.
    fn negligible(&self, tol: f64) -> bool;

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out *= rhs;
        out
    }

    /// The exact value, for exact rings only.
    fn as_rational(&self) -> Option<Rational>;

    /// Multiplicative inverse, `None` for (numerically) zero values.
    fn recip(&self) -> Option<Self>;

    /// Text used by the poly-text writer and the JSON reports.
    fn render(&self) -> String;
}

impl Coefficient for Rational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(num_rational::Ratio::recip(self))
        }
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coefficient for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn as_rational(&self) -> Option<Rational> {
        None
    }

    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn render(&self) -> String {
        format!("{self:?}")
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_int(v)
}

/// Shorthand for `num/den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p` or `p/q` (optionally signed) into a rational in lowest terms.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = |m: &str| Error::parse(0, format!("{m}: `{token}`"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad("invalid rational numerator"))?;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| bad("invalid rational denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Exact rational value of a finite `f64`.
pub fn rational_from_f64(v: f64) -> Option<Rational> {
    Rational::from_float(v)
}

/// Integer value of a rational, if it is one and fits.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

pub(crate) fn is_negative<C: Coefficient>(c: &C) -> bool {
    c.to_f64() < 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-6").unwrap(), rat(-6));
        assert_eq!(parse_rational("3/-9").unwrap(), ratio(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn render_lowest_terms() {
        assert_eq!(ratio(6, -4).render(), "-3/2");
        assert_eq!(rat(0).render(), "0");
        assert_eq!(ratio(0, 5), rat(0));
    }
}
