//! The primitive / isoparametric decision for eikonal quartics, and the
//! congruence invariants of the primitive family.
//!
//! Every eikonal quartic is either primitive (congruent to some
//! `h_{4,H}`) or isoparametric. From a normal form with blocks `(p, q)`
//! and pencil `A_η`:
//!
//! - `q = 0`: `f = |x|⁴`;
//! - `p = 0`: `f = h_{4,H}` with `dim H = 1`;
//! - `q = 1`: primitive; `A_1 = 0` gives `dim H = n − 1`, otherwise
//!   `A_1² = 1` and `dim H = ν⁺ + 1`;
//! - `q ≥ 2, p ≥ 1`: `τ ≡ 0` gives `h_{4,H}` with `H = ⟨e_n, ξ⟩`;
//!   otherwise `f` is isoparametric with `2ν = p + 1 − q`, multiplicities
//!   `(m₁, m₂) = (q − 1, ν)` and `Δf = 8(ν − q + 1)|x|²`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;
use serde_json::{json, Value};

use crate::analysis::check_eikonal;
use crate::analysis::eikonal::{check_munzner_second, eikonal_residual, require_form};
use crate::analysis::pencil::{check_pencil_with_tol, Pencil};
use crate::analysis::residual::{Residual, ResidualSet, FLOAT_RESIDUAL_TOL};
use crate::analysis::system::{check_structure_identities_with_tol, check_system};
use crate::error::{Error, Result};
use crate::normalform::{
    extract_normal_form_float_seeded, extract_normal_form_seeded, Arithmetic, NormalForm,
};
use crate::polyring::{
    Coefficient, FloatPolynomial, Matrix, Poly, Polynomial, Rational, RationalMatrix,
};

pub const REPORT_SCHEMA: &str = "eikq-report-1";

/// Float residuals above this are rejected outright; between the
/// classification tolerance and this the verdict is inconclusive.
pub const FLOAT_REJECT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Primitive,
    Isoparametric,
    NotEikonal,
    InconclusiveFloat,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Primitive => "primitive",
            Verdict::Isoparametric => "isoparametric",
            Verdict::NotEikonal => "not_eikonal",
            Verdict::InconclusiveFloat => "inconclusive_float",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub g: u32,
    pub n: usize,
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub nu: Option<usize>,
    pub mu: Option<usize>,
    /// Congruence class `min(dim H, n − dim H)` of a primitive quartic.
    pub dim_h: Option<usize>,
    pub m1: Option<usize>,
    pub m2: Option<usize>,
    /// `c` with `Δf = c|x|²`, for isoparametric verdicts.
    pub laplacian_constant: Option<Rational>,
    pub residuals: ResidualSet,
    pub residual_summary: f64,
    pub arithmetic: Arithmetic,
    /// Which case of the decision procedure fired, or why it stopped.
    pub detail: String,
}

impl ClassificationReport {
    fn bare(
        verdict: Verdict,
        n: usize,
        residuals: ResidualSet,
        arithmetic: Arithmetic,
        detail: String,
    ) -> Self {
        ClassificationReport {
            verdict,
            g: 4,
            n,
            p: None,
            q: None,
            nu: None,
            mu: None,
            dim_h: None,
            m1: None,
            m2: None,
            laplacian_constant: None,
            residual_summary: residuals.max_magnitude(),
            residuals,
            arithmetic,
            detail,
        }
    }

    pub fn is_eikonal(&self) -> bool {
        matches!(self.verdict, Verdict::Primitive | Verdict::Isoparametric)
    }

    /// Verdict and integer parameters, for comparing classifications of
    /// congruent quartics.
    pub fn signature(
        &self,
    ) -> (
        Verdict,
        Option<usize>,
        Option<usize>,
        Option<usize>,
        Option<&Rational>,
    ) {
        (
            self.verdict,
            self.dim_h,
            self.m1,
            self.m2,
            self.laplacian_constant.as_ref(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "verdict": self.verdict.as_str(),
            "g": self.g,
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "nu": self.nu,
            "mu": self.mu,
            "dimH": self.dim_h,
            "m1": self.m1,
            "m2": self.m2,
            "laplacian_constant": self.laplacian_constant.as_ref().map(|c| c.to_string()),
            "residual_summary": self.residual_summary,
            "residuals": self.residuals.to_json(),
            "arithmetic": self.arithmetic.as_str(),
            "detail": self.detail,
        })
    }
}

/// The quadratic forms `τ_i = ξᵀA_iξ` over the `p` variables `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tau<C = Rational> {
    pub components: Vec<Poly<C>>,
}

impl<C: Coefficient> Tau<C> {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }
}

pub fn compute_tau<C: Coefficient>(pencil: &Pencil<C>) -> Tau<C> {
    let xi: Vec<usize> = (0..pencil.p()).collect();
    Tau {
        components: pencil.tau(pencil.p(), &xi),
    }
}

/// Whether `h_{4,H₁}` and `h_{4,H₂}` with `dim H_i = d_i` in dimension `n`
/// are congruent: `d₁ = d₂` or `d₁ = n − d₂`.
pub fn congruent_primitive(n: usize, d1: usize, d2: usize) -> Result<bool> {
    if d1 > n || d2 > n {
        return Err(Error::InvalidParameters(format!(
            "dimensions {d1}, {d2} must lie in 0..={n}"
        )));
    }
    Ok(d1 == d2 || d1 + d2 == n)
}

/// Canonical representative `min(d, n − d)` of a primitive class.
pub fn primitive_class(n: usize, d: usize) -> usize {
    d.min(n - d)
}

/// Spectrum of the quadratic form `Δf` as `(eigenvalue, multiplicity)`
/// pairs in increasing order.
#[derive(Clone, Debug, PartialEq)]
pub enum Signature {
    Exact(Vec<(Rational, usize)>),
    Float(Vec<(f64, usize)>),
}

impl Signature {
    /// Float view, for comparing an exact and a float signature.
    pub fn approximate(&self) -> Vec<(f64, usize)> {
        match self {
            Signature::Exact(v) => v.iter().map(|(l, k)| (l.to_f64(), *k)).collect(),
            Signature::Float(v) => v.clone(),
        }
    }
}

/// Spectrum of `Δf` for a quartic `f`. Exact whenever every eigenvalue is
/// rational (checked by exact rank computations), float otherwise.
pub fn laplacian_signature(f: &Polynomial) -> Result<Signature> {
    require_form(f, 4)?;
    let n = f.nvars();
    let lap = f.laplacian();
    let mut l = RationalMatrix::zeros(n, n);
    let half = crate::polyring::ratio(1, 2);
    for (mono, c) in lap.terms() {
        let idx: Vec<usize> = mono
            .exponents()
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
            .collect();
        if idx[0] == idx[1] {
            l.set(idx[0], idx[0], c.clone());
        } else {
            l.set(idx[0], idx[1], c * &half);
            l.set(idx[1], idx[0], c * &half);
        }
    }
    if l.is_diagonal(0.0) {
        let mut values: Vec<Rational> = (0..n).map(|i| l.get(i, i).clone()).collect();
        values.sort();
        return Ok(Signature::Exact(group(values)));
    }
    let float = float_spectrum(&l.to_float());
    let id = RationalMatrix::identity(n);
    let mut exact = Vec::new();
    let mut total = 0;
    for (value, _) in &float {
        let Some(r) = crate::polyring::coeff::rational_from_f64(value.round()) else {
            break;
        };
        if (r.to_f64() - value).abs() > 1e-6 {
            break;
        }
        let k = n - (&l - &id.scale(&r)).rank(0.0);
        total += k;
        exact.push((r, k));
    }
    if total == n {
        Ok(Signature::Exact(exact))
    } else {
        Ok(Signature::Float(float))
    }
}

fn float_spectrum(m: &Matrix<f64>) -> Vec<(f64, usize)> {
    let n = m.rows();
    let mut values: Vec<f64> = SymmetricEigen::new(DMatrix::from_fn(n, n, |i, j| *m.get(i, j)))
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    let mut out: Vec<(f64, usize)> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some((last, k)) if (v - *last).abs() <= 1e-9 * (1.0 + v.abs()) => *k += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn group<T: PartialEq>(sorted: Vec<T>) -> Vec<(T, usize)> {
    let mut out: Vec<(T, usize)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((last, k)) if *last == v => *k += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    /// Float residuals at or below this count as zero.
    pub tol: f64,
    /// Float residuals above this reject the quartic.
    pub reject_tol: f64,
    /// Offsets the maximizer's starting points.
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            tol: FLOAT_RESIDUAL_TOL,
            reject_tol: FLOAT_REJECT_TOL,
            seed: 0,
        }
    }
}

/// Classifies a rational quartic with default options.
pub fn classify(f: &Polynomial, rotation: Option<&RationalMatrix>) -> Result<ClassificationReport> {
    classify_with(f, rotation, &ClassifyOptions::default())
}

/// Exact eikonal test first. An eikonal `f` is then put in normal form
/// exactly (with `rotation`, or an exact frame found automatically); when
/// no exact frame exists the float path takes over and the report says so.
/// A rational `f` that misses the eikonal equation only by rounding-sized
/// coefficients is also handed to the float path.
pub fn classify_with(
    f: &Polynomial,
    rotation: Option<&RationalMatrix>,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    require_form(f, 4)?;
    let n = f.nvars();
    let eik = check_eikonal(f, 4)?;
    if !eik.is_zero() {
        if eik.magnitude() <= opts.reject_tol && rotation.is_none() {
            return classify_float_with(&f.to_float(), opts);
        }
        let residuals = ResidualSet::new(vec![eik]);
        return Ok(ClassificationReport::bare(
            Verdict::NotEikonal,
            n,
            residuals,
            Arithmetic::Exact,
            "|∇f|² − 16|x|⁶ does not vanish".into(),
        ));
    }
    let mut residuals = ResidualSet::new(vec![eik]);
    match extract_normal_form_seeded(f, rotation, opts.seed) {
        Ok(nf) => {
            residuals.extend(structure_residuals(&nf, opts.tol)?);
            let mut report = decide(&nf, residuals, Arithmetic::Exact, opts)?;
            confirm_laplacian(f, &mut report)?;
            Ok(report)
        }
        Err(Error::ExactFrameUnavailable(why)) if rotation.is_none() => {
            let nf = extract_normal_form_float_seeded(&f.to_float(), opts.seed).map_err(|e| {
                Error::Inconsistent(format!(
                    "exactly eikonal, but the float normal form failed: {e}"
                ))
            })?;
            residuals.extend(structure_residuals(&nf, opts.tol)?);
            let mut report = decide(&nf, residuals, Arithmetic::Float, opts)?;
            report.detail = format!("{}; no exact frame ({why})", report.detail);
            Ok(report)
        }
        Err(Error::NotEikonalEvidence(why)) => Err(Error::Inconsistent(format!(
            "exactly eikonal, but the normal form reports: {why}"
        ))),
        Err(e) => Err(e),
    }
}

/// Classifies a quartic with floating-point coefficients.
pub fn classify_float(f: &FloatPolynomial) -> Result<ClassificationReport> {
    classify_float_with(f, &ClassifyOptions::default())
}

pub fn classify_float_with(
    f: &FloatPolynomial,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    require_form(f, 4)?;
    let n = f.nvars();
    let scale = f.max_abs_coeff().abs().max(1.0);
    let eik = Residual::from_poly("eikonal", &eikonal_residual(f, 4)?, opts.tol * scale);
    let reject = |residuals: ResidualSet, detail: String| {
        ClassificationReport::bare(Verdict::NotEikonal, n, residuals, Arithmetic::Float, detail)
    };
    if eik.magnitude() > opts.reject_tol * scale {
        return Ok(reject(
            ResidualSet::new(vec![eik]),
            "|∇f|² − 16|x|⁶ does not vanish".into(),
        ));
    }
    let nf = match extract_normal_form_float_seeded(f, opts.seed) {
        Ok(nf) => nf,
        Err(Error::NotEikonalEvidence(why)) => return Ok(reject(ResidualSet::new(vec![eik]), why)),
        Err(e) => return Err(e),
    };
    let mut residuals = ResidualSet::new(vec![eik]);
    residuals.extend(structure_residuals(&nf, opts.tol)?);
    decide(&nf, residuals, Arithmetic::Float, opts)
}

/// Coefficient system, structure identities, and the agreement of the
/// extracted `θ₄, θ₂, θ₀` with the ones the pencil predicts.
fn structure_residuals<C: Coefficient>(nf: &NormalForm<C>, tol: f64) -> Result<ResidualSet> {
    let mut set = check_system(&nf.phi, &nf.psi, &nf.theta, tol)?;
    set.extend(check_structure_identities_with_tol(&nf.data, tol)?);
    let d = &nf.data;
    let parts = &nf.theta_parts;
    for (name, got, want) in [
        ("theta4", &parts.theta4, d.theta4()),
        ("theta2", &parts.theta2, d.theta2()),
        ("theta0", &parts.theta0, d.theta0()),
    ] {
        set.residuals
            .push(Residual::from_poly(name, &(got - &want), tol));
    }
    if !C::EXACT {
        set.residuals
            .push(Residual::float("cubic", nf.cubic_defect, tol));
    }
    Ok(set)
}

/// Runs the decision procedure on a normal form. Float residuals above
/// the rejection threshold give `not_eikonal`, residuals between the two
/// thresholds give `inconclusive_float` with the parameters still filled
/// in.
fn decide<C: Coefficient>(
    nf: &NormalForm<C>,
    residuals: ResidualSet,
    arithmetic: Arithmetic,
    opts: &ClassifyOptions,
) -> Result<ClassificationReport> {
    let (n, p, q) = (nf.n(), nf.p(), nf.q());
    let summary = residuals.max_magnitude();
    let exact = C::EXACT;
    if exact && !residuals.all_zero() {
        return Err(Error::Inconsistent(format!(
            "eikonal quartic with nonzero normal-form residuals: {}",
            residuals.to_json()
        )));
    }
    if !exact && summary > opts.reject_tol {
        return Ok(ClassificationReport::bare(
            Verdict::NotEikonal,
            n,
            residuals,
            arithmetic,
            format!("normal-form residuals reach {summary:e}"),
        ));
    }
    let tol = if exact { 0.0 } else { opts.reject_tol };
    let mut report =
        ClassificationReport::bare(Verdict::Primitive, n, residuals, arithmetic, String::new());
    report.p = Some(p);
    report.q = Some(q);

    let pencil = nf.pencil();
    let zero_pencil = pencil.is_zero(tol);
    let (dim_h, detail) = if q == 0 {
        (0, "q = 0: f = |x|⁴".to_string())
    } else if p == 0 {
        (1, "p = 0: f = h with dim H = 1".to_string())
    } else if q == 1 {
        if zero_pencil {
            (n - 1, "q = 1, A₁ = 0".to_string())
        } else {
            let a = pencil.matrix(0);
            if !(&(a * a) - &Matrix::identity(p)).is_zero(tol) {
                return evidence(report, exact, "q = 1 with A₁ ≠ 0 but A₁² ≠ 1");
            }
            let plus = p - (a - &Matrix::identity(p)).rank(tol);
            report.nu = Some(plus);
            report.mu = Some(0);
            (plus + 1, "q = 1, A₁² = 1".to_string())
        }
    } else if zero_pencil {
        report.nu = Some(0);
        report.mu = Some(p);
        (p + 1, "q ≥ 2, τ ≡ 0".to_string())
    } else {
        let pr = check_pencil_with_tol(pencil, tol.max(1e-12))?;
        if !pr.passes() {
            return evidence(report, exact, "pencil fails the Clifford-type checks");
        }
        let nu = pr.nu;
        if 2 * nu + q != p + 1 {
            return evidence(
                report,
                exact,
                &format!("2ν = {} but p + 1 − q = {}", 2 * nu, p + 1 - q),
            );
        }
        report.verdict = Verdict::Isoparametric;
        report.nu = Some(nu);
        report.mu = Some(pr.mu);
        report.m1 = Some(q - 1);
        report.m2 = Some(nu);
        report.laplacian_constant = Some(Rational::from_int(8 * (nu as i64 - q as i64 + 1)));
        report.detail = "q ≥ 2, τ ≢ 0: isoparametric".into();
        return Ok(finalize(report, opts));
    };
    report.dim_h = Some(primitive_class(n, dim_h));
    report.detail = detail;
    Ok(finalize(report, opts))
}

fn finalize(mut report: ClassificationReport, opts: &ClassifyOptions) -> ClassificationReport {
    if report.arithmetic == Arithmetic::Float && report.residual_summary > opts.tol {
        report.detail = format!(
            "{}; residuals {:e} above {:e}",
            report.detail, report.residual_summary, opts.tol
        );
        report.verdict = Verdict::InconclusiveFloat;
    }
    report
}

fn evidence(
    mut report: ClassificationReport,
    exact: bool,
    why: &str,
) -> Result<ClassificationReport> {
    if exact {
        return Err(Error::Inconsistent(format!("eikonal quartic, but {why}")));
    }
    report.verdict = Verdict::NotEikonal;
    report.detail = why.to_string();
    Ok(report)
}

/// On the exact path, checks `Δf = c|x|²` against the reported constant.
fn confirm_laplacian(f: &Polynomial, report: &mut ClassificationReport) -> Result<()> {
    let Some(c) = &report.laplacian_constant else {
        return Ok(());
    };
    let sum = (report.m1.unwrap_or(0) + report.m2.unwrap_or(0)) as i64;
    match check_munzner_second(f, 4, Some(sum))? {
        Some(m) if m.constant == *c => Ok(()),
        other => Err(Error::Inconsistent(format!(
            "isoparametric verdict with Δf constant {c}, but the Laplacian test gave {other:?}"
        ))),
    }
}
