//! The eikonal equation `|∇f|² = g²|x|^(2g−2)` and the Laplacian condition
//! `Δf = ((m₂ − m₁)/2) g² |x|^(g−2)`.

use super::residual::Residual;
use crate::error::{Error, Result};
use crate::polyring::{Coefficient, Poly, Polynomial, Rational};

/// Checks that `f` is a form of degree `g`.
pub fn require_form<C: Coefficient>(f: &Poly<C>, g: u32) -> Result<()> {
    match f.homogeneous_degree()? {
        Some(d) if d == g => Ok(()),
        Some(d) => Err(Error::DegreeMismatch {
            expected: g,
            found: d,
        }),
        // The zero polynomial is a form of every degree.
        None => Ok(()),
    }
}

/// `|∇f|² − g²|x|^(2g−2)` over any coefficient ring.
pub fn eikonal_residual<C: Coefficient>(f: &Poly<C>, g: u32) -> Result<Poly<C>> {
    require_form(f, g)?;
    if g == 0 {
        return Err(Error::InvalidParameters("degree must be at least 1".into()));
    }
    let target = Poly::radial(f.nvars(), g - 1).scale_int((g * g) as i64);
    Ok(&f.gradient_norm_sq() - &target)
}

/// Exact eikonal residual of a form `f` of degree `g`.
pub fn check_eikonal(f: &Polynomial, g: u32) -> Result<Residual> {
    Ok(Residual::exact("eikonal", eikonal_residual(f, g)?))
}

/// Outcome of the Laplacian test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MunznerSecond {
    /// `c` with `Δf = c |x|^(g−2)`.
    pub constant: Rational,
    /// `(m₁, m₂)` when `m₁ + m₂` was supplied.
    pub multiplicities: Option<(Rational, Rational)>,
}

/// Tests whether `Δf = c |x|^(g−2)`; for odd `g` this requires `Δf = 0`.
/// With `m₁ + m₂` supplied, also solves `c = (m₂ − m₁) g² / 2` for the
/// pair. Returns `None` when `Δf` is not radial.
pub fn check_munzner_second(
    f: &Polynomial,
    g: u32,
    sum: Option<i64>,
) -> Result<Option<MunznerSecond>> {
    require_form(f, g)?;
    let lap = f.laplacian();
    let n = f.nvars();
    let constant = if lap.is_zero() {
        Rational::from_int(0)
    } else if g % 2 == 1 || g < 2 {
        return Ok(None);
    } else {
        let mut lead = vec![0; n];
        lead[0] = g - 2;
        let c = lap.coeff(&lead);
        if lap != Poly::radial(n, (g - 2) / 2).scale(&c) {
            return Ok(None);
        }
        c
    };
    let multiplicities = sum.map(|s| {
        let diff = &constant * Rational::from_int(2) / Rational::from_int((g * g) as i64);
        let s = Rational::from_int(s);
        let two = Rational::from_int(2);
        ((&s - &diff) / &two, (&s + &diff) / &two)
    });
    Ok(Some(MunznerSecond {
        constant,
        multiplicities,
    }))
}
