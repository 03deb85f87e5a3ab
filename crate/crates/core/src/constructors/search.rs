//! Structured search for isoparametric normal-form data.
//!
//! Pencil seeds are block-diagonal: `ν` symmetric 2×2 blocks with entries
//! in `{−1, 0, 1}` followed by a zero block of size `μ = p − 2ν`, one such
//! matrix per `A_i`. Seeds that fail the Clifford-type checks are dropped.
//! For each surviving pencil, `θ₃ = 8 Σ_i η_i g_i(ξ)` where each `g_i` is a
//! combination of trilinear products `⟨e⁺,ξ⟩⟨e⁻,ξ⟩⟨e⁰,ξ⟩` of eigenvectors
//! of `A_i` for the eigenvalues `+1, −1, 0`, with coefficients from a fixed
//! grid of small rationals. Candidates are screened numerically and then
//! verified exactly; verified hits are also returned conjugated by
//! pseudo-random rational rotations of the `ξ` block.
//!
//! Enumeration order is fixed, so a given budget always examines the same
//! candidates.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::normal_data::NormalFormData;
use crate::analysis::eikonal::eikonal_residual;
use crate::analysis::pencil::{check_pencil, Pencil};
use crate::error::{Error, Result};
use crate::polyring::{ratio, Coefficient, Matrix, Poly, Polynomial, Rational, RationalMatrix};

/// Number of random points used by the floating-point screen.
const SCREEN_POINTS: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Maximum number of candidates (pencil seeds plus `θ₃` choices)
    /// examined.
    pub budget: u64,
    /// Seed for the screening points and the conjugating rotations.
    pub seed: u64,
    /// Conjugated copies added per verified hit.
    pub conjugations: usize,
    /// Stop after this many verified hits (before conjugation).
    pub max_hits: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 1_000_000,
            seed: 0,
            conjugations: 1,
            max_hits: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub results: Vec<NormalFormData>,
    pub examined: u64,
    /// The whole structured space was enumerated within the budget.
    pub exhausted: bool,
}

/// Searches with the default configuration and the given candidate budget.
pub fn search_isoparametric_pencil(
    p: usize,
    q: usize,
    nu: usize,
    budget: u64,
) -> Result<Vec<NormalFormData>> {
    let config = SearchConfig {
        budget,
        ..SearchConfig::default()
    };
    Ok(search_with_config(p, q, nu, &config)?.results)
}

/// Rejects parameters outside `2ν ≤ p`, `2ν = p + 1 − q` (the latter is
/// waived for `ν = 0`, where the only pencil is zero).
pub fn check_feasible(p: usize, q: usize, nu: usize) -> Result<()> {
    if q == 0 {
        return Err(Error::Infeasible("q must be positive".into()));
    }
    if 2 * nu > p {
        return Err(Error::Infeasible(format!(
            "2ν = {} exceeds p = {p}",
            2 * nu
        )));
    }
    if nu > 0 && 2 * nu + q != p + 1 {
        return Err(Error::Infeasible(format!(
            "2ν = {} but p + 1 − q = {}",
            2 * nu,
            p as i64 + 1 - q as i64
        )));
    }
    Ok(())
}

pub fn search_with_config(
    p: usize,
    q: usize,
    nu: usize,
    config: &SearchConfig,
) -> Result<SearchOutcome> {
    check_feasible(p, q, nu)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = p + q + 1;
    let points: Vec<Vec<f64>> = (0..SCREEN_POINTS)
        .map(|_| {
            (0..n)
                .map(|_| rand::Rng::gen_range(&mut rng, -1.0..1.0))
                .collect()
        })
        .collect();

    let mut hits: Vec<NormalFormData> = Vec::new();
    let mut examined: u64 = 0;
    let mut exhausted = true;
    let grid = coefficient_grid();

    'pencils: for pencil in PencilSeeds::new(p, q, nu) {
        if examined >= config.budget {
            exhausted = false;
            break;
        }
        examined += 1;
        let report = check_pencil(&pencil)?;
        if !report.passes() || report.nu != nu || !report.trace_free {
            continue;
        }
        let basis = theta3_basis(&pencil);
        let base = NormalFormData::new(pencil.clone(), Polynomial::zero(p + q))?;
        let screen = Screen::new(&base, &basis, &points)?;

        let mut digits = vec![0usize; basis.len()];
        loop {
            if examined >= config.budget {
                exhausted = false;
                break 'pencils;
            }
            examined += 1;
            let coeffs: Vec<&Rational> = digits.iter().map(|&d| &grid[d]).collect();
            if screen.passes(&coeffs) {
                let mut theta3 = Polynomial::zero(p + q);
                for (b, c) in basis.iter().zip(&coeffs) {
                    if !c.is_zero() {
                        theta3 = &theta3 + &b.scale(c);
                    }
                }
                let data = NormalFormData::new(pencil.clone(), theta3)?;
                if eikonal_residual(&data.assemble()?, 4)?.is_zero() {
                    hits.push(data);
                    if config.max_hits.is_some_and(|m| hits.len() >= m) {
                        exhausted = false;
                        break 'pencils;
                    }
                }
            }
            if !advance(&mut digits, grid.len()) {
                break;
            }
        }
    }

    let mut results = hits.clone();
    if p > 0 {
        for hit in &hits {
            for _ in 0..config.conjugations {
                let u = RationalMatrix::random_orthogonal(p, &mut rng);
                let moved = conjugate(hit, &u)?;
                if eikonal_residual(&moved.assemble()?, 4)?.is_zero() {
                    results.push(moved);
                }
            }
        }
    }
    Ok(SearchOutcome {
        results,
        examined,
        exhausted,
    })
}

/// The data of `f(Uξ, η, x_n)`: `A_i ↦ UᵀA_iU`, `θ₃ ↦ θ₃(Uξ, η)`.
pub fn conjugate(data: &NormalFormData, u: &RationalMatrix) -> Result<NormalFormData> {
    let (p, q) = (data.p(), data.q());
    if u.rows() != p || !u.is_orthogonal(0.0) {
        return Err(Error::NotOrthogonal);
    }
    let full = Matrix::block_diag(&[u.clone(), RationalMatrix::identity(q)]);
    let theta3 = data.theta3.substitute_linear(&full)?;
    NormalFormData::new(data.pencil.conjugate(u)?, theta3)
}

/// `0`, then `±a/b` for `b ≤ 4`, `a/b ≤ 2` in lowest terms: 25 values.
fn coefficient_grid() -> Vec<Rational> {
    let mut grid = vec![Rational::zero()];
    for b in 1..=4i64 {
        for a in 1..=2 * b {
            if a.gcd(&b) == 1 {
                grid.push(ratio(a, b));
                grid.push(ratio(-a, b));
            }
        }
    }
    grid
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Iterates block-diagonal pencils: every `A_i` is `ν` symmetric 2×2
/// blocks with entries in `{−1, 0, 1}` padded with zeros.
struct PencilSeeds {
    p: usize,
    q: usize,
    nu: usize,
    digits: Vec<usize>,
    done: bool,
}

impl PencilSeeds {
    fn new(p: usize, q: usize, nu: usize) -> Self {
        PencilSeeds {
            p,
            q,
            nu,
            digits: vec![0; 3 * q * nu],
            done: false,
        }
    }
}

impl Iterator for PencilSeeds {
    type Item = Pencil;

    fn next(&mut self) -> Option<Pencil> {
        if self.done {
            return None;
        }
        let entry = |d: usize| Rational::from_int(d as i64 - 1);
        let matrices = (0..self.q)
            .map(|i| {
                let mut m = RationalMatrix::zeros(self.p, self.p);
                for b in 0..self.nu {
                    let base = 3 * (i * self.nu + b);
                    let (j, k) = (2 * b, 2 * b + 1);
                    m.set(j, j, entry(self.digits[base]));
                    m.set(k, k, entry(self.digits[base + 1]));
                    m.set(j, k, entry(self.digits[base + 2]));
                    m.set(k, j, entry(self.digits[base + 2]));
                }
                m
            })
            .collect();
        self.done = !advance(&mut self.digits, 3);
        Some(Pencil::new(self.p, matrices).expect("symmetric by construction"))
    }
}

/// `8 η_i ⟨e⁺,ξ⟩⟨e⁻,ξ⟩⟨e⁰,ξ⟩` over eigenvector bases of each `A_i`.
fn theta3_basis(pencil: &Pencil) -> Vec<Polynomial> {
    let (p, q) = (pencil.p(), pencil.q());
    let m = p + q;
    let linear = |v: &[Rational]| {
        let mut l = Polynomial::zero(m);
        for (j, c) in v.iter().enumerate() {
            if !c.is_zero() {
                l = &l + &Polynomial::var(m, j).scale(c);
            }
        }
        l
    };
    let mut out = Vec::new();
    for (i, a) in pencil.matrices().iter().enumerate() {
        let id = RationalMatrix::identity(p);
        let eig = |lambda: i64| -> Vec<Vec<Rational>> {
            (a - &id.scale(&Rational::from_int(lambda)))
                .nullspace(0.0)
                .into_iter()
                .map(primitive_integer)
                .collect()
        };
        let (plus, minus, zero) = (eig(1), eig(-1), eig(0));
        let eta = Polynomial::var(m, p + i).scale_int(8);
        for ep in &plus {
            for em in &minus {
                for e0 in &zero {
                    out.push(&(&(&linear(ep) * &linear(em)) * &linear(e0)) * &eta);
                }
            }
        }
    }
    out
}

/// Rescales a nonzero rational vector to coprime integers with a positive
/// first nonzero entry.
fn primitive_integer(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = v
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(num_bigint::BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = match ints.iter().find(|c| !c.is_zero()) {
        Some(c) if c.is_negative() => -num_bigint::BigInt::one(),
        _ => num_bigint::BigInt::one(),
    };
    ints.into_iter()
        .map(|c| Rational::from_integer(&c * &sign / &g))
        .collect()
}

/// Numerical screen: `f = F₀ + Σ c_j B_j`, so `∇f` at fixed points is an
/// affine function of the coefficients.
struct Screen {
    base: Vec<Vec<f64>>,
    parts: Vec<Vec<Vec<f64>>>,
    targets: Vec<f64>,
}

impl Screen {
    fn new(base: &NormalFormData, basis: &[Polynomial], points: &[Vec<f64>]) -> Result<Self> {
        let n = base.n();
        let grad_at = |f: &Poly<f64>| -> Result<Vec<Vec<f64>>> {
            let grad = f.gradient();
            points
                .iter()
                .map(|x| {
                    let mut v = Vec::with_capacity(n);
                    for g in &grad {
                        v.push(g.evaluate(x)?);
                    }
                    Ok(v)
                })
                .collect()
        };
        let map: Vec<usize> = (0..n - 1).collect();
        let f0 = base.assemble()?.to_float();
        let parts = basis
            .iter()
            .map(|b| grad_at(&b.embed(n, &map)?.to_float()))
            .collect::<Result<Vec<_>>>()?;
        let targets = points
            .iter()
            .map(|x| 16.0 * x.iter().map(|v| v * v).sum::<f64>().powi(3))
            .collect();
        Ok(Screen {
            base: grad_at(&f0)?,
            parts,
            targets,
        })
    }

    fn passes(&self, coeffs: &[&Rational]) -> bool {
        let cs: Vec<f64> = coeffs.iter().map(|c| c.to_f64()).collect();
        self.base.iter().enumerate().all(|(k, g0)| {
            let mut norm = 0.0;
            for (j, g) in g0.iter().enumerate() {
                let mut v = *g;
                for (part, c) in self.parts.iter().zip(&cs) {
                    v += c * part[k][j];
                }
                norm += v * v;
            }
            (norm - self.targets[k]).abs() <= 1e-8 * (1.0 + self.targets[k])
        })
    }
}
