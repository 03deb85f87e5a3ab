//! Normal-form data `(p, q, A_1..A_q, θ₃)` and assembly of the quartic
//!
//! ```text
//! f = x_n⁴ + 2φ x_n² + 8ψ x_n + θ
//! φ = ξ² − 3η²,  ψ = ξᵀA_ηξ,  θ = θ₄ + θ₃ + θ₂ + θ₀
//! θ₄ = ξ⁴ − 2Σ τ_i²,  θ₂ = 8 ξᵀA_η²ξ − 6ξ²η²,  θ₀ = η⁴
//! ```
//!
//! The barred variables are ordered `(ξ_1..ξ_p, η_1..η_q)` and `x_n` comes
//! last.

use std::fmt::Write as _;

use crate::analysis::pencil::{apply_poly_matrix, Pencil};
use crate::error::{Error, Result};
use crate::polyring::text::parse_poly_lines;
use crate::polyring::{dot_in, parse_rational, to_poly_text, Coefficient, Matrix, Poly, Rational};

/// The free data of a quartic normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormData<C = Rational> {
    pub pencil: Pencil<C>,
    /// Component of `θ` in `ξ³ ⊗ η`, over the `p + q` barred variables.
    pub theta3: Poly<C>,
}

impl<C: Coefficient> NormalFormData<C> {
    pub fn new(pencil: Pencil<C>, theta3: Poly<C>) -> Result<Self> {
        let data = NormalFormData { pencil, theta3 };
        data.validate()?;
        Ok(data)
    }

    /// Empty pencil data with `θ₃ = 0`.
    pub fn trivial(p: usize, q: usize) -> Self {
        NormalFormData {
            pencil: Pencil::zero(p, q),
            theta3: Poly::zero(p + q),
        }
    }

    pub fn validate(&self) -> Result<()> {
        // Re-run the symmetry checks in case the pencil was built by hand.
        Pencil::new(self.p(), self.pencil.matrices().to_vec())?;
        if self.theta3.nvars() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                found: self.theta3.nvars(),
            });
        }
        let split = self
            .theta3
            .homogeneous_split(&[self.xi_vars(), self.eta_vars()])?;
        if let Some(bad) = split.keys().find(|k| k.as_slice() != [3, 1]) {
            return Err(Error::InvalidParameters(format!(
                "θ₃ must lie in ξ³⊗η, found a component of bidegree ({}, {})",
                bad[0], bad[1]
            )));
        }
        Ok(())
    }

    pub fn p(&self) -> usize {
        self.pencil.p()
    }

    pub fn q(&self) -> usize {
        self.pencil.q()
    }

    /// Number of barred variables, `p + q`.
    pub fn m(&self) -> usize {
        self.p() + self.q()
    }

    /// Dimension of the assembled quartic, `p + q + 1`.
    pub fn n(&self) -> usize {
        self.m() + 1
    }

    pub fn xi_vars(&self) -> Vec<usize> {
        (0..self.p()).collect()
    }

    pub fn eta_vars(&self) -> Vec<usize> {
        (self.p()..self.m()).collect()
    }

    pub fn phi(&self) -> Poly<C> {
        let m = self.m();
        &Poly::norm_sq_of(m, &self.xi_vars()) - &Poly::norm_sq_of(m, &self.eta_vars()).scale_int(3)
    }

    /// `A_η ξ` as polynomials in the barred variables.
    pub fn a_eta_xi(&self) -> Vec<Poly<C>> {
        self.pencil
            .apply_symbolic(self.m(), &self.xi_vars(), &self.eta_vars())
    }

    pub fn psi(&self) -> Poly<C> {
        let xs: Vec<Poly<C>> = self
            .xi_vars()
            .iter()
            .map(|&i| Poly::var(self.m(), i))
            .collect();
        dot_in(self.m(), &xs, &self.a_eta_xi())
    }

    pub fn tau(&self) -> Vec<Poly<C>> {
        self.pencil.tau(self.m(), &self.xi_vars())
    }

    pub fn theta4(&self) -> Poly<C> {
        let tau = self.tau();
        let xi2 = Poly::norm_sq_of(self.m(), &self.xi_vars());
        &(&xi2 * &xi2) - &dot_in(self.m(), &tau, &tau).scale_int(2)
    }

    pub fn theta2(&self) -> Poly<C> {
        let v = self.a_eta_xi();
        let m = self.m();
        let mixed = &Poly::norm_sq_of(m, &self.xi_vars()) * &Poly::norm_sq_of(m, &self.eta_vars());
        &dot_in(self.m(), &v, &v).scale_int(8) - &mixed.scale_int(6)
    }

    pub fn theta0(&self) -> Poly<C> {
        Poly::norm_sq_of(self.m(), &self.eta_vars()).pow(2)
    }

    pub fn theta(&self) -> Poly<C> {
        &(&(&self.theta4() + &self.theta3) + &self.theta2()) + &self.theta0()
    }

    /// `ξᵀ A_η³ ξ` and `η² ξᵀ A_η ξ`, the two sides of the Clifford-type
    /// identity as quadratic forms.
    pub(crate) fn cube_sides(&self) -> (Poly<C>, Poly<C>) {
        let v = self.a_eta_xi();
        let sym = self.pencil.symbolic(self.m(), &self.eta_vars());
        let w = apply_poly_matrix(&sym, &v);
        let eta2 = Poly::norm_sq_of(self.m(), &self.eta_vars());
        (dot_in(self.m(), &v, &w), &eta2 * &self.psi())
    }

    /// The quartic in `n = p + q + 1` variables.
    pub fn assemble(&self) -> Result<Poly<C>> {
        self.validate()?;
        Ok(assemble_parts(&self.phi(), &self.psi(), &self.theta()))
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D + Copy) -> NormalFormData<D> {
        NormalFormData {
            pencil: self.pencil.map(f),
            theta3: self.theta3.map_coeffs(f),
        }
    }
}

/// `x_n⁴ + 2φx_n² + 8ψx_n + θ` with `x_n` appended after the barred
/// variables.
pub fn assemble_parts<C: Coefficient>(phi: &Poly<C>, psi: &Poly<C>, theta: &Poly<C>) -> Poly<C> {
    let m = phi.nvars();
    let n = m + 1;
    let map: Vec<usize> = (0..m).collect();
    let lift = |p: &Poly<C>| p.embed(n, &map).expect("barred variables embed");
    let xn = Poly::var(n, m);
    let x2 = &xn * &xn;
    let mut f = &x2 * &x2;
    f = &f + &(&lift(phi) * &x2).scale_int(2);
    f = &f + &(&lift(psi) * &xn).scale_int(8);
    &f + &lift(theta)
}

/// Assembles the quartic from normal-form data. The result is eikonal
/// exactly when the structure identities vanish.
pub fn assemble_from_normal_form<C: Coefficient>(data: &NormalFormData<C>) -> Result<Poly<C>> {
    data.assemble()
}

impl NormalFormData<Rational> {
    /// Canonical text: `p q`, then the `q` matrices as `p` rows of `p`
    /// rationals each, then `θ₃` as poly-text over `p + q` variables.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.p(), self.q());
        for (i, a) in self.pencil.matrices().iter().enumerate() {
            let _ = writeln!(out, "# A{}", i + 1);
            for r in 0..a.rows() {
                let row: Vec<String> = a.row(r).iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        out.push_str(&to_poly_text(&self.theta3));
        out
    }

    pub fn parse_text(source: &str) -> Result<Self> {
        let mut lines = source
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let line = raw.split('#').next().unwrap_or("").trim();
                (!line.is_empty()).then_some((i + 1, line))
            })
            .peekable();
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "header `p q` missing"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(hline, "header must be `p q`"))?;
        let [p, q] = dims[..] else {
            return Err(Error::parse(hline, "header must be `p q`"));
        };

        let mut matrices = Vec::with_capacity(q);
        for _ in 0..q {
            let mut rows = Vec::with_capacity(p);
            for _ in 0..p {
                let (line, text) = lines
                    .next()
                    .ok_or_else(|| Error::parse(0, "unexpected end of pencil block"))?;
                let row = text
                    .split_whitespace()
                    .map(|t| {
                        parse_rational(t).map_err(|e| match e {
                            Error::Parse { message, .. } => Error::parse(line, message),
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<Rational>>>()?;
                if row.len() != p {
                    return Err(Error::parse(
                        line,
                        format!("expected {p} entries, found {}", row.len()),
                    ));
                }
                rows.push(row);
            }
            matrices.push(if p == 0 {
                Matrix::zeros(0, 0)
            } else {
                Matrix::from_rows(rows)?
            });
        }
        let pencil = Pencil::new(p, matrices)?;
        let theta3 = parse_poly_lines(&mut lines)?;
        if theta3.nvars() != p + q {
            return Err(Error::DimensionMismatch {
                expected: p + q,
                found: theta3.nvars(),
            });
        }
        NormalFormData::new(pencil, theta3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, RationalMatrix};

    fn diag(entries: &[i64]) -> RationalMatrix {
        RationalMatrix::diagonal(&entries.iter().map(|&v| rat(v)).collect::<Vec<_>>())
    }

    #[test]
    fn degenerate_splits() {
        let n = 4;
        let x = Poly::<Rational>::norm_sq_of(n, &[0, 1, 2]);
        let xn = Poly::var(n, 3);
        let x2 = &xn * &xn;
        let expected = &(&(&x2 * &x2) - &(&x2 * &x).scale_int(6)) + &(&x * &x);
        assert_eq!(NormalFormData::trivial(0, 3).assemble().unwrap(), expected);

        let r = Poly::<Rational>::norm_sq(n);
        assert_eq!(NormalFormData::trivial(3, 0).assemble().unwrap(), &r * &r);
    }

    #[test]
    fn single_matrix_closed_form() {
        // Variables (u, v, η₁, x_n).
        let data =
            NormalFormData::new(Pencil::new(2, vec![diag(&[1, -1])]).unwrap(), Poly::zero(3))
                .unwrap();
        let f = data.assemble().unwrap();
        let v = |i| Poly::<Rational>::var(4, i);
        let sq = |p: &Poly<Rational>| p * p;
        let a = &(&(&sq(&v(3)) + &sq(&v(0))) + &sq(&v(1))) + &sq(&v(2));
        let b = &(&sq(&v(0)) - &sq(&v(1))) - &(&v(3) * &v(2)).scale_int(2);
        assert_eq!(f, &sq(&a) - &sq(&b).scale_int(2));
    }

    #[test]
    fn rejects_theta3_of_wrong_bidegree() {
        let bad = Poly::monomial(vec![2, 2], rat(1));
        assert!(NormalFormData::new(Pencil::new(1, vec![diag(&[1])]).unwrap(), bad).is_err());
    }

    #[test]
    fn text_round_trip() {
        let a2 =
            RationalMatrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap();
        let pencil = Pencil::new(2, vec![diag(&[1, -1]), a2]).unwrap();
        let theta3 = Poly::monomial(vec![2, 1, 1, 0], crate::polyring::ratio(-3, 4));
        let data = NormalFormData::new(pencil, theta3).unwrap();
        let text = data.to_text();
        assert_eq!(NormalFormData::parse_text(&text).unwrap(), data);
        assert!(text.starts_with("2 2\n"));
        let empty = NormalFormData::<Rational>::trivial(0, 2);
        assert_eq!(NormalFormData::parse_text(&empty.to_text()).unwrap(), empty);
    }
}
