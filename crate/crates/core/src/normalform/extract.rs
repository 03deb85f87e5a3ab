use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{Signed, Zero};

use super::sphere::{sphere_maximize_seeded, DEFAULT_SEEDS, DEFAULT_SPHERE_TOL};
use super::{Arithmetic, NormalForm, ThetaParts};
use crate::analysis::eikonal::require_form;
use crate::analysis::pencil::Pencil;
use crate::constructors::NormalFormData;
use crate::error::{Error, Result};
use crate::polyring::{Coefficient, Matrix, Poly, Polynomial, Rational, RationalMatrix};

/// Distance within which float eigenvalues of `φ` snap to `1` or `−3`, and
/// below which float components that must vanish are treated as noise.
pub const FLOAT_SNAP_TOL: f64 = 1e-6;

/// `f(R x)` sorted by powers of `x_n`.
struct Reduced<C> {
    leading: C,
    cubic: Poly<C>,
    phi: Poly<C>,
    psi: Poly<C>,
    theta: Poly<C>,
}

fn reduce<C: Coefficient>(f1: &Poly<C>) -> Result<Reduced<C>> {
    let n = f1.nvars();
    let mut parts = f1.collect_var(n - 1)?;
    let mut take = |k: u32| parts.remove(&k).unwrap_or_else(|| Poly::zero(n - 1));
    let leading = take(4).coeff(&vec![0; n - 1]);
    let cubic = take(3);
    let phi = take(2).scale(&C::from_rational(&crate::polyring::ratio(1, 2)));
    let psi = take(1).scale(&C::from_rational(&crate::polyring::ratio(1, 8)));
    let theta = take(0);
    Ok(Reduced {
        leading,
        cubic,
        phi,
        psi,
        theta,
    })
}

/// Symmetric matrix of a quadratic form.
fn quadratic_matrix<C: Coefficient>(q: &Poly<C>) -> Result<Matrix<C>> {
    let m = q.nvars();
    let mut out = Matrix::zeros(m, m);
    let half = C::from_rational(&crate::polyring::ratio(1, 2));
    for (mono, c) in q.terms() {
        let idx: Vec<usize> = mono
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        match idx[..] {
            [i, j] if i == j => out.set(i, i, c.clone()),
            [i, j] => {
                let h = c.mul_ref(&half);
                out.set(i, j, h.clone());
                out.set(j, i, h);
            }
            _ => {
                return Err(Error::DegreeMismatch {
                    expected: 2,
                    found: mono.degree(),
                })
            }
        }
    }
    Ok(out)
}

/// Splits `θ` over `p + q` variables into its `ξ^i ⊗ η^(4−i)` pieces.
pub fn split_theta<C: Coefficient>(theta: &Poly<C>, p: usize, q: usize) -> Result<ThetaParts<C>> {
    split_theta_with_tol(theta, p, q, 0.0)
}

/// [`split_theta`] with components below `tol` treated as zero (float
/// coefficients only).
pub fn split_theta_with_tol<C: Coefficient>(
    theta: &Poly<C>,
    p: usize,
    q: usize,
    tol: f64,
) -> Result<ThetaParts<C>> {
    let m = p + q;
    if theta.nvars() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: theta.nvars(),
        });
    }
    let xi: Vec<usize> = (0..p).collect();
    let eta: Vec<usize> = (p..m).collect();
    let mut parts = ThetaParts {
        theta0: Poly::zero(m),
        theta2: Poly::zero(m),
        theta3: Poly::zero(m),
        theta4: Poly::zero(m),
    };
    for (key, comp) in theta.homogeneous_split(&[xi, eta])? {
        match (key[0], key[1]) {
            (0, 4) => parts.theta0 = comp,
            (2, 2) => parts.theta2 = comp,
            (3, 1) => parts.theta3 = comp,
            (4, 0) => parts.theta4 = comp,
            (1, 3) => {
                if !comp.max_abs_coeff().negligible(tol) {
                    return Err(Error::NotEikonalEvidence(format!(
                        "θ has a nonzero ξ ⊗ η³ component (max coefficient {})",
                        comp.max_abs_coeff().render()
                    )));
                }
            }
            (a, b) => {
                return Err(Error::DegreeMismatch {
                    expected: 4,
                    found: a + b,
                })
            }
        }
    }
    Ok(parts)
}

/// Reads the pencil off `ψ` and the `θ` pieces off `θ` in diagonal
/// coordinates.
#[allow(clippy::too_many_arguments)]
fn finish<C: Coefficient>(
    rotation: Matrix<C>,
    phi: Poly<C>,
    psi: Poly<C>,
    theta: Poly<C>,
    p: usize,
    q: usize,
    leading: C,
    cubic_defect: f64,
    arithmetic: Arithmetic,
    tol: f64,
) -> Result<NormalForm<C>> {
    let m = p + q;
    let xi: Vec<usize> = (0..p).collect();
    let eta: Vec<usize> = (p..m).collect();
    let mut psi2 = Poly::zero(m);
    for (key, comp) in psi.homogeneous_split(&[xi, eta])? {
        if key[..] == [2, 1] {
            psi2 = comp;
        } else if !comp.max_abs_coeff().negligible(tol) {
            return Err(Error::NotEikonalEvidence(format!(
                "ψ has a nonzero component of bidegree ({}, {})",
                key[0], key[1]
            )));
        }
    }
    let half = C::from_rational(&crate::polyring::ratio(1, 2));
    let matrices = (0..q)
        .map(|i| {
            Matrix::from_fn(p, p, |j, k| {
                let mut e = vec![0u32; m];
                e[j] += 1;
                e[k] += 1;
                e[p + i] += 1;
                let c = psi2.coeff(&e);
                if j == k {
                    c
                } else {
                    c.mul_ref(&half)
                }
            })
        })
        .collect();
    let pencil = Pencil::new(p, matrices)?;
    let theta_parts = split_theta_with_tol(&theta, p, q, tol)?;
    let data = NormalFormData::new(pencil, theta_parts.theta3.clone())?;
    let mut phi_eigenvalues = vec![C::one(); p];
    phi_eigenvalues.extend(std::iter::repeat_n(C::from_int(-3), q));
    Ok(NormalForm {
        rotation,
        phi_eigenvalues,
        data,
        phi,
        psi,
        theta,
        theta_parts,
        leading,
        cubic_defect,
        arithmetic,
    })
}

fn with_last_fixed<C: Coefficient>(q: &Matrix<C>) -> Matrix<C> {
    Matrix::block_diag(&[q.clone(), Matrix::identity(1)])
}

/// Exact normal form. With `rotation = None` an exact frame is searched
/// for with [`find_exact_rotation`].
pub fn extract_normal_form(
    f: &Polynomial,
    rotation: Option<&RationalMatrix>,
) -> Result<NormalForm> {
    extract_normal_form_seeded(f, rotation, 0)
}

/// [`extract_normal_form`] with the maximizer seed for the automatic frame.
pub fn extract_normal_form_seeded(
    f: &Polynomial,
    rotation: Option<&RationalMatrix>,
    seed: u64,
) -> Result<NormalForm> {
    require_form(f, 4)?;
    let n = f.nvars();
    let r0 = match rotation {
        Some(r) => {
            if r.rows() != n || r.cols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.rows(),
                });
            }
            if !r.is_orthogonal(0.0) {
                return Err(Error::NotOrthogonal);
            }
            r.clone()
        }
        None => find_exact_rotation(f, seed)?,
    };
    let red = reduce(&f.substitute_linear(&r0)?)?;
    if red.leading != Rational::from_int(1) {
        return Err(Error::NotNormalized(format!(
            "coefficient of x_n⁴ is {}, not 1",
            red.leading
        )));
    }
    if !red.cubic.is_zero() {
        return Err(Error::NotNormalized(
            "the x_n³ part does not vanish, so e_n is not critical".into(),
        ));
    }
    let phi_m = quadratic_matrix(&red.phi)?;
    let (q_mat, p, q) = exact_phi_frame(&phi_m)?;
    let phi = red.phi.substitute_linear(&q_mat)?;
    let psi = red.psi.substitute_linear(&q_mat)?;
    let theta = red.theta.substitute_linear(&q_mat)?;
    let rotation = r0.checked_mul(&with_last_fixed(&q_mat))?;
    finish(
        rotation,
        phi,
        psi,
        theta,
        p,
        q,
        red.leading,
        0.0,
        Arithmetic::Exact,
        0.0,
    )
}

/// Orthonormal eigenframe of `Φ` (`+1` block first), or an error when the
/// spectrum leaves `{1, −3}` or the eigenvectors do not normalize over the
/// rationals.
fn exact_phi_frame(phi: &RationalMatrix) -> Result<(RationalMatrix, usize, usize)> {
    let m = phi.rows();
    let id = RationalMatrix::identity(m);
    let shifted = |l: i64| phi - &id.scale(&Rational::from_int(l));
    if !(&shifted(1) * &shifted(-3)).is_zero(0.0) {
        return Err(Error::NotEikonalEvidence(
            "φ has eigenvalues outside {1, −3}".into(),
        ));
    }
    if phi.is_diagonal(0.0) {
        let plus: Vec<usize> = (0..m)
            .filter(|&i| *phi.get(i, i) == Rational::from_int(1))
            .collect();
        let minus: Vec<usize> = (0..m)
            .filter(|&i| *phi.get(i, i) != Rational::from_int(1))
            .collect();
        let order: Vec<usize> = plus.iter().chain(&minus).copied().collect();
        return Ok((RationalMatrix::permutation(&order), plus.len(), minus.len()));
    }
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut sizes = [0usize; 2];
    for (slot, lambda) in [1i64, -3].into_iter().enumerate() {
        let basis = gram_schmidt(shifted(lambda).nullspace(0.0));
        sizes[slot] = basis.len();
        for v in basis {
            let nsq = v.iter().fold(Rational::zero(), |acc, c| acc + c * c);
            let root = rational_sqrt(&nsq).ok_or_else(|| {
                Error::ExactFrameUnavailable(format!(
                    "eigenvector of φ has squared norm {nsq}, not a rational square"
                ))
            })?;
            columns.push(v.iter().map(|c| c / &root).collect());
        }
    }
    let q_mat = RationalMatrix::from_fn(m, m, |i, j| columns[j][i].clone());
    Ok((q_mat, sizes[0], sizes[1]))
}

fn gram_schmidt(vs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let dot = |a: &[Rational], b: &[Rational]| {
        a.iter()
            .zip(b)
            .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
    };
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(vs.len());
    for v in vs {
        let mut w = v;
        for u in &out {
            let c = dot(&w, u) / dot(u, u);
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= &c * ui;
            }
        }
        out.push(w);
    }
    out
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| Rational::new(n, d))
}

/// An exact rotation sending a maximum of an eikonal quartic to `e_n`:
/// the identity or a transposition when some coordinate axis already
/// carries the value one, otherwise a Householder reflection onto a
/// rationalized numerical maximizer, accepted only if `f` takes the value
/// one there exactly.
pub fn find_exact_rotation(f: &Polynomial, seed: u64) -> Result<RationalMatrix> {
    let n = f.nvars();
    let one = Rational::from_int(1);
    for i in (0..n).rev() {
        let mut e = vec![0u32; n];
        e[i] = 4;
        if f.coeff(&e) != one {
            continue;
        }
        let critical = (0..n).filter(|&j| j != i).all(|j| {
            let mut e = vec![0u32; n];
            e[i] = 3;
            e[j] = 1;
            f.coeff(&e).is_zero()
        });
        if critical {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(i, n - 1);
            return Ok(RationalMatrix::permutation(&perm));
        }
    }

    let max = sphere_maximize_seeded(f, DEFAULT_SEEDS, DEFAULT_SPHERE_TOL, seed)?;
    let unavailable = || {
        Error::ExactFrameUnavailable(
            "no coordinate axis or rationalized maximizer attains the value 1 exactly".into(),
        )
    };
    let v = rationalize_unit(&max.point).ok_or_else(unavailable)?;
    if f.evaluate(&v)? != one {
        return Err(unavailable());
    }
    let r = RationalMatrix::householder_to_last(&v)?;
    let red = reduce(&f.substitute_linear(&r)?)?;
    if red.cubic.is_zero() {
        Ok(r)
    } else {
        Err(unavailable())
    }
}

/// Nearby rational point on the unit sphere, through stereographic
/// coordinates from the pole opposite to the last coordinate's sign.
fn rationalize_unit(v: &[f64]) -> Option<Vec<Rational>> {
    let n = v.len();
    let flip = if v[n - 1] < 0.0 { -1.0 } else { 1.0 };
    let s: Vec<Rational> = v[..n - 1]
        .iter()
        .map(|x| approx_rational(flip * x / (1.0 + flip * v[n - 1]), 1e-9, 1_000_000))
        .collect::<Option<_>>()?;
    let one = Rational::from_int(1);
    let s2 = s.iter().fold(Rational::zero(), |acc, c| acc + c * c);
    let denom = &one + &s2;
    let mut out: Vec<Rational> = s
        .iter()
        .map(|c| Rational::from_int(2) * c / &denom)
        .collect();
    out.push((&one - &s2) / &denom);
    if flip < 0.0 {
        out.iter_mut().for_each(|c| *c = -c.clone());
    }
    Some(out)
}

/// Simplest continued-fraction convergent within `tol` of `x` with
/// denominator at most `max_den`.
fn approx_rational(x: f64, tol: f64, max_den: i128) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let (h2, k2) = (ai * h1 + h0, ai * k1 + k0);
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() <= tol {
            return Some(Rational::new(h1.into(), k1.into()));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Householder reflection exchanging `e_n` and the unit vector `v`.
pub fn float_rotation(v: &[f64]) -> Matrix<f64> {
    let n = v.len();
    let mut w = v.to_vec();
    w[n - 1] -= 1.0;
    let ww: f64 = w.iter().map(|x| x * x).sum();
    if ww < 1e-30 {
        return Matrix::identity(n);
    }
    Matrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        delta - 2.0 * w[i] * w[j] / ww
    })
}

/// Float normal form around a numerical maximizer.
pub fn extract_normal_form_float(f: &Poly<f64>) -> Result<NormalForm<f64>> {
    extract_normal_form_float_seeded(f, 0)
}

pub fn extract_normal_form_float_seeded(f: &Poly<f64>, seed: u64) -> Result<NormalForm<f64>> {
    require_form(f, 4)?;
    let max = sphere_maximize_seeded(f, DEFAULT_SEEDS, DEFAULT_SPHERE_TOL, seed)?;
    extract_float_at(f, float_rotation(&max.point))
}

/// Float normal form for a given rotation `r0` with `r0 e_n` a maximizer.
pub(crate) fn extract_float_at(f: &Poly<f64>, r0: Matrix<f64>) -> Result<NormalForm<f64>> {
    let red = reduce(&f.substitute_linear(&r0)?)?;
    if (red.leading - 1.0).abs() > FLOAT_SNAP_TOL {
        return Err(Error::NotEikonalEvidence(format!(
            "maximum of f on the unit sphere is {}, not 1",
            red.leading
        )));
    }
    let cubic_defect = red.cubic.max_abs_coeff().abs();
    let m = red.phi.nvars();
    let phi_m = quadratic_matrix(&red.phi)?;
    let eig = SymmetricEigen::new(DMatrix::from_fn(m, m, |i, j| *phi_m.get(i, j)));
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        let col: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        let lead = col
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
            .map_or(0, |(i, _)| i);
        if (lambda - 1.0).abs() <= FLOAT_SNAP_TOL {
            plus.push((lead, col));
        } else if (lambda + 3.0).abs() <= FLOAT_SNAP_TOL {
            minus.push((lead, col));
        } else {
            return Err(Error::NotEikonalEvidence(format!(
                "φ has eigenvalue {lambda}, outside {{1, −3}}"
            )));
        }
    }
    plus.sort_by_key(|(lead, _)| *lead);
    minus.sort_by_key(|(lead, _)| *lead);
    let (p, q) = (plus.len(), minus.len());
    let cols: Vec<Vec<f64>> = plus
        .into_iter()
        .chain(minus)
        .map(|(_, mut c)| {
            // Fix the sign so the dominant entry is positive.
            let lead = c
                .iter()
                .copied()
                .fold(0.0f64, |a, b| if b.abs() > a.abs() { b } else { a });
            if lead < 0.0 {
                c.iter_mut().for_each(|x| *x = -*x);
            }
            c
        })
        .collect();
    let q_mat = Matrix::from_fn(m, m, |i, j| cols[j][i]);
    let phi = red.phi.substitute_linear(&q_mat)?;
    let psi = red.psi.substitute_linear(&q_mat)?;
    let theta = red.theta.substitute_linear(&q_mat)?;
    let rotation = r0.checked_mul(&with_last_fixed(&q_mat))?;
    finish(
        rotation,
        phi,
        psi,
        theta,
        p,
        q,
        red.leading,
        cubic_defect,
        Arithmetic::Float,
        FLOAT_SNAP_TOL,
    )
}
