//! Symmetric matrix pencils `A_η = Σ η_i A_i` and their Clifford-type
//! checks.
//!
//! A pencil coming from an eikonal quartic satisfies `A_η³ = |η|² A_η`.
//! For `q ≥ 2` this forces every `A_i` to be trace free with `A_i³ = A_i`,
//! the symmetrized identity `A_s²A_t + A_sA_tA_s + A_tA_s² = |s|² A_t` for
//! orthogonal `s, t`, and a spectrum `±1` (multiplicity `ν` each) and `0`
//! (multiplicity `μ = p − 2ν`) shared by every unit direction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{Coefficient, Matrix, Poly, Rational};

/// Tolerance used for pencils with floating-point entries.
pub const FLOAT_PENCIL_TOL: f64 = 1e-6;

/// Number of extra pseudo-random orthogonal pairs checked against the
/// symmetrized identity.
const RANDOM_PAIRS: usize = 10;

/// `q` symmetric `p × p` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil<C = Rational> {
    p: usize,
    matrices: Vec<Matrix<C>>,
}

impl<C: Coefficient> Pencil<C> {
    /// Validates shapes and symmetry (exactly, or within
    /// [`FLOAT_PENCIL_TOL`] for `f64`).
    pub fn new(p: usize, matrices: Vec<Matrix<C>>) -> Result<Self> {
        for m in &matrices {
            if m.rows() != p || m.cols() != p {
                return Err(Error::DimensionMismatch {
                    expected: p,
                    found: if m.rows() != p { m.rows() } else { m.cols() },
                });
            }
            if !m.is_symmetric(FLOAT_PENCIL_TOL) {
                return Err(Error::NotSymmetric);
            }
        }
        Ok(Pencil { p, matrices })
    }

    pub fn zero(p: usize, q: usize) -> Self {
        Pencil {
            p,
            matrices: vec![Matrix::zeros(p, p); q],
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrices(&self) -> &[Matrix<C>] {
        &self.matrices
    }

    pub fn matrix(&self, i: usize) -> &Matrix<C> {
        &self.matrices[i]
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.matrices.iter().all(|m| m.is_zero(tol))
    }

    /// `A_s = Σ s_i A_i` for a concrete direction `s`.
    pub fn combination(&self, s: &[C]) -> Matrix<C> {
        assert_eq!(s.len(), self.q());
        let mut out = Matrix::zeros(self.p, self.p);
        for (m, c) in self.matrices.iter().zip(s) {
            out = &out + &m.scale(c);
        }
        out
    }

    /// `A_η ξ` as a vector of polynomials, where `ξ_j` is variable
    /// `xi[j]` and `η_i` is variable `eta[i]` of an `nvars`-variable ring.
    pub fn apply_symbolic(&self, nvars: usize, xi: &[usize], eta: &[usize]) -> Vec<Poly<C>> {
        assert_eq!(xi.len(), self.p);
        assert_eq!(eta.len(), self.q());
        let a_eta = self.symbolic(nvars, eta);
        let xs: Vec<Poly<C>> = xi.iter().map(|&v| Poly::var(nvars, v)).collect();
        apply_poly_matrix(&a_eta, &xs)
    }

    /// Entries of `A_η` as linear forms in the `eta` variables.
    pub fn symbolic(&self, nvars: usize, eta: &[usize]) -> Vec<Vec<Poly<C>>> {
        (0..self.p)
            .map(|j| {
                (0..self.p)
                    .map(|k| {
                        let mut e = Poly::zero(nvars);
                        for (m, &v) in self.matrices.iter().zip(eta) {
                            let c = m.get(j, k);
                            if !c.is_zero() {
                                e = &e + &Poly::var(nvars, v).scale(c);
                            }
                        }
                        e
                    })
                    .collect()
            })
            .collect()
    }

    /// The quadratic forms `τ_i = ξᵀ A_i ξ`.
    pub fn tau(&self, nvars: usize, xi: &[usize]) -> Vec<Poly<C>> {
        self.matrices
            .iter()
            .map(|m| m.quadratic_form(nvars, xi))
            .collect()
    }

    /// Applies an orthogonal change of the `ξ` coordinates:
    /// `A_i ↦ Uᵀ A_i U`.
    pub fn conjugate(&self, u: &Matrix<C>) -> Result<Self> {
        let ut = u.transpose();
        let matrices = self
            .matrices
            .iter()
            .map(|m| ut.checked_mul(m)?.checked_mul(u))
            .collect::<Result<Vec<_>>>()?;
        Ok(Pencil {
            p: self.p,
            matrices,
        })
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D + Copy) -> Pencil<D> {
        Pencil {
            p: self.p,
            matrices: self.matrices.iter().map(|m| m.map(f)).collect(),
        }
    }
}

pub(crate) fn apply_poly_matrix<C: Coefficient>(m: &[Vec<Poly<C>>], v: &[Poly<C>]) -> Vec<Poly<C>> {
    m.iter().map(|row| crate::polyring::dot(row, v)).collect()
}

/// Outcome of the Clifford-type checks on a pencil.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub p: usize,
    pub q: usize,
    /// Multiplicity of the eigenvalue `+1` of `A_1`.
    pub nu: usize,
    /// Multiplicity of the eigenvalue `0` of `A_1`.
    pub mu: usize,
    /// Multiplicity of `−1`; equals `nu` whenever `trace_free` holds.
    pub nu_minus: usize,
    pub trace_free: bool,
    /// `A_i³ = A_i` for every `i`.
    pub cube_identity: bool,
    /// `A_η³ = |η|² A_η` as a polynomial identity in `η`.
    pub clifford_identity: bool,
    /// `A_s²A_t + A_sA_tA_s + A_tA_s² = |s|² A_t` for orthogonal `s, t`.
    pub symmetrized_identity: bool,
    /// `trace(A_i A_j) = 2ν δ_ij`, i.e. `trace(A_η²) = 2ν|η|²`.
    pub spectrum_constant: bool,
}

impl PencilReport {
    /// All checks that apply for this `q` hold. With a single matrix only
    /// the cube identity is required.
    pub fn passes(&self) -> bool {
        if self.q == 1 {
            self.cube_identity && self.clifford_identity
        } else {
            self.trace_free
                && self.cube_identity
                && self.clifford_identity
                && self.symmetrized_identity
                && self.spectrum_constant
        }
    }
}

/// Runs the Clifford-type checks with the default tolerance for `C`.
pub fn check_pencil<C: Coefficient>(pencil: &Pencil<C>) -> Result<PencilReport> {
    check_pencil_with_tol(pencil, FLOAT_PENCIL_TOL)
}

pub fn check_pencil_with_tol<C: Coefficient>(pencil: &Pencil<C>, tol: f64) -> Result<PencilReport> {
    let (p, q) = (pencil.p(), pencil.q());
    if q == 0 {
        return Err(Error::InvalidParameters("pencil has no matrices".into()));
    }
    if pencil.matrices.iter().any(|m| !m.is_symmetric(tol)) {
        return Err(Error::NotSymmetric);
    }
    let mats = &pencil.matrices;

    let trace_free = mats.iter().all(|m| m.trace().negligible(tol));
    let cube_identity = mats.iter().all(|m| (&(&(m * m) * m) - m).is_zero(tol));

    // ν± from A_1: with eigenvalues in {−1, 0, 1}, trace = ν⁺ − ν⁻ and
    // trace(A²) = ν⁺ + ν⁻.
    let a1 = &mats[0];
    let t1 = a1.trace().to_f64();
    let t2 = (a1 * a1).trace().to_f64();
    let plus = ((t2 + t1) / 2.0).round().max(0.0) as usize;
    let minus = ((t2 - t1) / 2.0).round().max(0.0) as usize;
    let counts_integral = {
        let mut c = C::from_int((plus + minus) as i64);
        c -= &(a1 * a1).trace();
        c.negligible(tol)
    } && plus + minus <= p;

    let nu = plus;
    let mu = p.saturating_sub(plus + minus);

    let two_nu = C::from_int(2 * nu as i64);
    let spectrum_constant = counts_integral
        && (0..q).all(|i| {
            (0..q).all(|j| {
                let mut t = (&mats[i] * &mats[j]).trace();
                if i == j {
                    t -= &two_nu;
                }
                t.negligible(tol)
            })
        });

    let clifford_identity = clifford_residual(pencil).iter().all(|c| c.negligible(tol));

    let symmetrized_identity = q == 1 || symmetrized_holds(pencil, tol);

    Ok(PencilReport {
        p,
        q,
        nu,
        mu,
        nu_minus: minus,
        trace_free,
        cube_identity,
        clifford_identity,
        symmetrized_identity,
        spectrum_constant,
    })
}

/// Coefficients of `ξᵀ(A_η³ − |η|²A_η)ξ` expanded in `(ξ, η)`.
pub(crate) fn clifford_residual<C: Coefficient>(pencil: &Pencil<C>) -> Vec<C> {
    let (p, q) = (pencil.p(), pencil.q());
    let n = p + q;
    let xi: Vec<usize> = (0..p).collect();
    let eta: Vec<usize> = (p..n).collect();
    let sym = pencil.symbolic(n, &eta);
    let v = pencil.apply_symbolic(n, &xi, &eta);
    let w = apply_poly_matrix(&sym, &v);
    let cube = crate::polyring::dot_in(n, &v, &w);
    let eta_sq = Poly::norm_sq_of(n, &eta);
    let xs: Vec<Poly<C>> = xi.iter().map(|&i| Poly::var(n, i)).collect();
    let lin = crate::polyring::dot_in(n, &xs, &v);
    let res = &cube - &(&eta_sq * &lin);
    res.terms().map(|(_, c)| c.clone()).collect()
}

fn symmetrized_holds<C: Coefficient>(pencil: &Pencil<C>, tol: f64) -> bool {
    let q = pencil.q();
    let unit = |i: usize| -> Vec<C> {
        (0..q)
            .map(|k| if k == i { C::one() } else { C::zero() })
            .collect()
    };
    let mut pairs: Vec<(Vec<C>, Vec<C>)> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            if a != b {
                pairs.push((unit(a), unit(b)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..RANDOM_PAIRS {
        let s: Vec<C> = (0..q).map(|_| small_rational(&mut rng)).collect();
        let r: Vec<C> = (0..q).map(|_| small_rational(&mut rng)).collect();
        let ss = inner(&s, &s);
        let Some(inv) = ss.recip() else { continue };
        let proj = inner(&r, &s).mul_ref(&inv);
        let t: Vec<C> = r
            .iter()
            .zip(&s)
            .map(|(ri, si)| {
                let mut v = ri.clone();
                v -= &proj.mul_ref(si);
                v
            })
            .collect();
        pairs.push((s, t));
    }
    pairs.iter().all(|(s, t)| {
        let a_s = pencil.combination(s);
        let a_t = pencil.combination(t);
        let lhs = &(&(&(&a_s * &a_s) * &a_t) + &(&(&a_s * &a_t) * &a_s)) + &(&(&a_t * &a_s) * &a_s);
        (&lhs - &a_t.scale(&inner(s, s))).is_zero(tol)
    })
}

fn small_rational<C: Coefficient, R: Rng>(rng: &mut R) -> C {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    C::from_rational(&crate::polyring::ratio(num, den))
}

fn inner<C: Coefficient>(a: &[C], b: &[C]) -> C {
    let mut s = C::zero();
    for (x, y) in a.iter().zip(b) {
        s += &x.mul_ref(y);
    }
    s
}

/// `(ν, μ)` of a pencil that passes [`check_pencil`]; requires trace-free
/// matrices so that the `±1` multiplicities agree.
pub fn pencil_spectrum<C: Coefficient>(pencil: &Pencil<C>) -> Result<(usize, usize)> {
    let report = check_pencil(pencil)?;
    if !report.passes() || !report.trace_free {
        return Err(Error::PencilCheck(format!("{report:?}")));
    }
    Ok((report.nu, report.mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{rat, RationalMatrix};

    fn m(rows: Vec<Vec<i64>>) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
        .unwrap()
    }

    fn pauli_pair() -> Pencil {
        Pencil::new(
            2,
            vec![
                m(vec![vec![1, 0], vec![0, -1]]),
                m(vec![vec![0, 1], vec![1, 0]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn pauli_pair_passes() {
        let r = check_pencil(&pauli_pair()).unwrap();
        assert!(r.passes());
        assert_eq!((r.nu, r.mu), (1, 0));
        assert_eq!(pencil_spectrum(&pauli_pair()).unwrap(), (1, 0));
    }

    #[test]
    fn zero_pencil_is_vacuous() {
        let z = Pencil::<Rational>::zero(3, 2);
        let r = check_pencil(&z).unwrap();
        assert!(r.trace_free && r.cube_identity && r.passes());
        assert_eq!((r.nu, r.mu), (0, 3));
        assert_eq!(
            pencil_spectrum(&Pencil::<Rational>::zero(5, 2)).unwrap(),
            (0, 5)
        );
    }

    #[test]
    fn single_involution() {
        let p = Pencil::new(2, vec![m(vec![vec![1, 0], vec![0, -1]])]).unwrap();
        assert_eq!(pencil_spectrum(&p).unwrap(), (1, 0));
    }

    #[test]
    fn scaled_projection_fails_clifford() {
        let p = Pencil::new(2, vec![m(vec![vec![2, 0], vec![0, 0]])]).unwrap();
        let r = check_pencil(&p).unwrap();
        assert!(!r.clifford_identity && !r.cube_identity && !r.passes());
        assert!(pencil_spectrum(&p).is_err());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            Pencil::new(2, vec![m(vec![vec![0, 1], vec![0, 0]])]),
            Err(Error::NotSymmetric)
        ));
        assert!(check_pencil(&Pencil::<Rational>::zero(2, 0)).is_err());
        assert!(Pencil::new(3, vec![m(vec![vec![1, 0], vec![0, 1]])]).is_err());
    }
}
