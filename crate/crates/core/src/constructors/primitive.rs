//! The primitive family `h_{g,H} = Re(|ξ| + i|η|)^g` and the canonical
//! quartics.

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{rat, Polynomial};

/// Parameters of `h_{g,H}`: degree, ambient dimension and `dim H`. `H` is
/// spanned by the first `dim_h` coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveSpec {
    pub g: u32,
    pub n: usize,
    pub dim_h: usize,
}

impl PrimitiveSpec {
    pub fn new(g: u32, n: usize, dim_h: usize) -> Result<Self> {
        let spec = PrimitiveSpec { g, n, dim_h };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.g == 0 {
            return Err(Error::InvalidParameters("degree must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(Error::InvalidParameters(
                "dimension must be positive".into(),
            ));
        }
        if self.dim_h > self.n {
            return Err(Error::InvalidParameters(format!(
                "dim H = {} exceeds n = {}",
                self.dim_h, self.n
            )));
        }
        if self.g % 2 == 1 && self.dim_h != 1 {
            return Err(Error::InvalidParameters(format!(
                "odd degree {} needs dim H = 1, got {}",
                self.g, self.dim_h
            )));
        }
        Ok(())
    }
}

/// Expands `Σ_k (−1)^k C(g, 2k) ξ^(g−2k) η^(2k)` over `n` variables.
///
/// For even `g` every power of `ξ` is even and is read as a power of
/// `|ξ|²`; odd `g` has a one-dimensional `H`, so `ξ = x_1` itself.
pub fn make_primitive(spec: PrimitiveSpec) -> Result<Polynomial> {
    spec.validate()?;
    let PrimitiveSpec { g, n, dim_h } = spec;
    let h_vars: Vec<usize> = (0..dim_h).collect();
    let perp: Vec<usize> = (dim_h..n).collect();
    let xi_sq = Polynomial::norm_sq_of(n, &h_vars);
    let eta_sq = Polynomial::norm_sq_of(n, &perp);
    let odd = g % 2 == 1;

    let mut h = Polynomial::zero(n);
    for k in 0..=g / 2 {
        let c = binomial(g as i64, 2 * k as i64);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let xi_part = if odd {
            Polynomial::var(n, 0).pow(g - 2 * k)
        } else {
            xi_sq.pow((g - 2 * k) / 2)
        };
        let term = &xi_part * &eta_sq.pow(k);
        h = &h + &term.scale(&rat(sign * c));
    }
    Ok(h)
}

/// `(Σ x_i²)² − 8 (Σ_{i≤k} x_i²)(Σ_{i>k} x_i²)`, for `0 ≤ k ≤ ⌊n/2⌋`.
pub fn make_canonical_quartic(n: usize, k: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "dimension must be positive".into(),
        ));
    }
    if k > n / 2 {
        return Err(Error::InvalidParameters(format!(
            "k = {k} out of range 0..={}",
            n / 2
        )));
    }
    let lead: Vec<usize> = (0..k).collect();
    let rest: Vec<usize> = (k..n).collect();
    let r = Polynomial::norm_sq(n);
    let cross = &Polynomial::norm_sq_of(n, &lead) * &Polynomial::norm_sq_of(n, &rest);
    Ok(&(&r * &r) - &cross.scale_int(8))
}

/// The cubic `x_n³ − 3 x_n (x_1² + … + x_{n−1}²)`: `h_{3,H}` with `H`
/// spanned by the last coordinate.
pub fn cartan_cubic(n: usize) -> Result<Polynomial> {
    if n == 0 {
        return Err(Error::InvalidParameters(
            "dimension must be positive".into(),
        ));
    }
    let xn = Polynomial::var(n, n - 1);
    let rest: Vec<usize> = (0..n - 1).collect();
    Ok(&xn.pow(3) - &(&xn * &Polynomial::norm_sq_of(n, &rest)).scale_int(3))
}
