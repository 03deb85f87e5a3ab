//! Multi-start projected gradient ascent on the unit sphere.

use crate::error::{Error, Result};
use crate::polyring::{Coefficient, Poly};

pub const DEFAULT_SEEDS: usize = 64;
pub const DEFAULT_SPHERE_TOL: f64 = 1e-12;
const ITERATION_CAP: usize = 10_000;

/// Best critical point found by [`sphere_maximize`].
#[derive(Clone, Debug, PartialEq)]
pub struct SphereMax {
    pub point: Vec<f64>,
    pub value: f64,
    /// Norm of the tangential gradient at `point`.
    pub gradient: f64,
    /// Index of the seed that produced `point`.
    pub seed: usize,
}

/// Compiled `f64` evaluator for a polynomial and its gradient.
pub(crate) struct Evaluator {
    n: usize,
    degree: usize,
    f: Vec<(f64, Vec<u32>)>,
    grad: Vec<Vec<(f64, Vec<u32>)>>,
}

impl Evaluator {
    pub(crate) fn new<C: Coefficient>(f: &Poly<C>) -> Self {
        let compile = |p: &Poly<C>| -> Vec<(f64, Vec<u32>)> {
            p.terms()
                .map(|(m, c)| (c.to_f64(), m.exponents().to_vec()))
                .collect()
        };
        Evaluator {
            n: f.nvars(),
            degree: f.total_degree().unwrap_or(0) as usize,
            f: compile(f),
            grad: f.gradient().iter().map(compile).collect(),
        }
    }

    fn powers(&self, x: &[f64]) -> Vec<Vec<f64>> {
        x.iter()
            .map(|&v| {
                let mut p = Vec::with_capacity(self.degree + 1);
                let mut acc = 1.0;
                for _ in 0..=self.degree {
                    p.push(acc);
                    acc *= v;
                }
                p
            })
            .collect()
    }

    fn sum(terms: &[(f64, Vec<u32>)], pw: &[Vec<f64>]) -> f64 {
        terms
            .iter()
            .map(|(c, e)| {
                e.iter()
                    .enumerate()
                    .fold(*c, |acc, (i, &k)| acc * pw[i][k as usize])
            })
            .sum()
    }

    pub(crate) fn value(&self, x: &[f64]) -> f64 {
        Self::sum(&self.f, &self.powers(x))
    }

    pub(crate) fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let pw = self.powers(x);
        self.grad.iter().map(|g| Self::sum(g, &pw)).collect()
    }

    /// Gradient with its radial part removed.
    fn tangential(&self, x: &[f64]) -> Vec<f64> {
        let g = self.gradient(x);
        let r: f64 = g.iter().zip(x).map(|(a, b)| a * b).sum();
        g.iter().zip(x).map(|(a, b)| a - r * b).collect()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn normalize(v: &mut [f64]) {
    let r = norm(v);
    v.iter_mut().for_each(|a| *a /= r);
}

/// Radical inverse of `index` in base `b`.
fn halton(mut index: usize, b: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= b as f64;
        r += f * (index % b) as f64;
        index /= b;
    }
    r
}

fn primes(count: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(count);
    let mut c = 2;
    while out.len() < count {
        if out.iter().all(|p| c % p != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Halton points mapped to the cube `[−1, 1]^n`, skipping the origin.
/// `offset` shifts the start of the sequence.
pub(crate) fn seed_points(n: usize, count: usize, offset: usize) -> Vec<Vec<f64>> {
    let bases = primes(n);
    (1 + offset..)
        .map(|i| {
            bases
                .iter()
                .map(|&b| 2.0 * halton(i, b) - 1.0)
                .collect::<Vec<f64>>()
        })
        .filter(|p| norm(p) > 1e-3)
        .take(count)
        .collect()
}

/// One ascent run. Returns the final point, value, tangential gradient
/// norm and whether the gradient dropped below `tol`.
fn ascend(ev: &Evaluator, start: &[f64], tol: f64) -> (Vec<f64>, f64, f64, bool) {
    let mut x = start.to_vec();
    normalize(&mut x);
    let mut fx = ev.value(&x);
    let mut gt = ev.tangential(&x);
    let mut gn = norm(&gt);
    let mut step = 0.1;
    for _ in 0..ITERATION_CAP {
        if gn <= tol {
            return (x, fx, gn, true);
        }
        let mut y: Vec<f64> = x.iter().zip(&gt).map(|(a, g)| a + step * g).collect();
        normalize(&mut y);
        let fy = ev.value(&y);
        let gy = ev.tangential(&y);
        let gyn = norm(&gy);
        // Near the optimum `f` stops resolving progress; fall back on the
        // gradient norm there.
        let flat = (fy - fx).abs() <= 8.0 * f64::EPSILON * fx.abs().max(1.0);
        if fy > fx || (flat && gyn < gn) {
            x = y;
            fx = fy;
            gt = gy;
            gn = gyn;
            step = (step * 1.5).min(1.0);
        } else {
            step *= 0.5;
            if step < 1e-16 {
                break;
            }
        }
    }
    (x, fx, gn, gn <= tol)
}

/// Maximizes `f` on the unit sphere from `seeds` Halton starting points.
/// Ties within `1e−12` go to the lowest seed index. Fails with the best
/// iterate when no run reaches a tangential gradient below `tol`.
pub fn sphere_maximize<C: Coefficient>(f: &Poly<C>, seeds: usize, tol: f64) -> Result<SphereMax> {
    sphere_maximize_seeded(f, seeds, tol, 0)
}

/// [`sphere_maximize`] starting the Halton sequence `seed · seeds` points
/// later.
pub fn sphere_maximize_seeded<C: Coefficient>(
    f: &Poly<C>,
    seeds: usize,
    tol: f64,
    seed: u64,
) -> Result<SphereMax> {
    if f.is_zero() {
        return Err(Error::InvalidParameters(
            "cannot maximize the zero polynomial".into(),
        ));
    }
    f.homogeneous_degree()?;
    let ev = Evaluator::new(f);
    let mut best: Option<SphereMax> = None;
    let mut best_unconverged: Option<SphereMax> = None;
    let offset = (seed as usize).saturating_mul(seeds.max(1));
    for (i, s) in seed_points(ev.n, seeds.max(1), offset).iter().enumerate() {
        let (point, value, gradient, ok) = ascend(&ev, s, tol);
        let cand = SphereMax {
            point,
            value,
            gradient,
            seed: i,
        };
        let slot = if ok { &mut best } else { &mut best_unconverged };
        if slot.as_ref().is_none_or(|b| value > b.value + 1e-12) {
            *slot = Some(cand);
        }
    }
    match (best, best_unconverged) {
        (Some(b), _) => Ok(b),
        (None, Some(b)) => Err(Error::NoConvergence {
            best: b.point,
            value: b.value,
            gradient: b.gradient,
        }),
        (None, None) => unreachable!("at least one seed"),
    }
}
