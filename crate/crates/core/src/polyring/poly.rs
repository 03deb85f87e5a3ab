use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::coeff::{is_negative, Coefficient, Rational};
use super::matrix::Matrix;
use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial over a coefficient ring `C`.
///
/// Invariants: no stored zero coefficients and every monomial has exactly
/// `nvars` exponents. Variables are indexed from zero; `x1` in rendered
/// output is variable `0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

/// Exact polynomial with rational coefficients.
pub type Polynomial = Poly<Rational>;

/// Polynomial with `f64` coefficients, used on the numeric path only.
pub type FloatPolynomial = Poly<f64>;

impl<C: Coefficient> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The coordinate function `x_{index}`. Panics if `index >= nvars`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range for {nvars}");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, index), C::one());
        p
    }

    /// `c * x^exponents`.
    pub fn monomial(exponents: Vec<u32>, c: C) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(Monomial::new(exponents), c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// duplicates by addition.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(Monomial::new(e), c);
        }
        Ok(p)
    }

    /// `x1^2 + ... + xn^2`.
    pub fn norm_sq(nvars: usize) -> Self {
        Self::norm_sq_of(nvars, &(0..nvars).collect::<Vec<_>>())
    }

    /// Sum of squares of the listed variables.
    pub fn norm_sq_of(nvars: usize, vars: &[usize]) -> Self {
        let mut p = Self::zero(nvars);
        for &v in vars {
            let mut e = vec![0; nvars];
            e[v] = 2;
            p.add_term(Monomial::new(e), C::one());
        }
        p
    }

    /// `|x|^(2m)` expanded.
    pub fn radial(nvars: usize, m: u32) -> Self {
        Self::norm_sq(nvars).pow(m)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded-lexicographic descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exponents: &[u32]) -> C {
        self.terms
            .get(&Monomial::new(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Degree of a homogeneous polynomial (`None` for zero); errors if
    /// terms of different degrees are present.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        let Some(d) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    /// Exact product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let mut acc: HashMap<Monomial, C> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca.mul_ref(cb);
                acc.entry(ma.mul(mb))
                    .and_modify(|e| *e += &prod)
                    .or_insert(prod);
            }
        }
        Ok(Poly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul_ref(s)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&C::from_int(s))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, C::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    /// Exact `∂f/∂x_i`.
    pub fn partial_derivative(&self, index: usize) -> Result<Self> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index,
                dim: self.nvars,
            });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            out.add_term(Monomial::new(exps), c.mul_ref(&C::from_int(i64::from(e))));
        }
        Ok(out)
    }

    fn partial_unchecked(&self, index: usize) -> Self {
        self.partial_derivative(index)
            .expect("index is within range by construction")
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial_unchecked(i)).collect()
    }

    /// Gradient restricted to the listed variables.
    pub fn gradient_in(&self, vars: &[usize]) -> Vec<Self> {
        vars.iter().map(|&i| self.partial_unchecked(i)).collect()
    }

    /// `Σ (∂f/∂x_i)²`.
    pub fn gradient_norm_sq(&self) -> Self {
        let grad = self.gradient();
        dot(&grad, &grad)
    }

    /// `Σ ∂²f/∂x_i²`.
    pub fn laplacian(&self) -> Self {
        self.laplacian_in(&(0..self.nvars).collect::<Vec<_>>())
    }

    /// Laplacian in the listed variables only.
    pub fn laplacian_in(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            for &i in vars {
                let e = m.exponents()[i];
                if e < 2 {
                    continue;
                }
                let mut exps = m.exponents().to_vec();
                exps[i] -= 2;
                out.add_term(
                    Monomial::new(exps),
                    c.mul_ref(&C::from_int(i64::from(e) * i64::from(e - 1))),
                );
            }
        }
        out
    }

    /// `f(Mx)`: every `x_i` is replaced by `Σ_j M_ij x_j`.
    pub fn substitute_linear(&self, m: &Matrix<C>) -> Result<Self> {
        if m.rows() != self.nvars || m.cols() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: if m.rows() != self.nvars {
                    m.rows()
                } else {
                    m.cols()
                },
            });
        }
        let n = self.nvars;
        let forms: Vec<Self> = (0..n)
            .map(|i| {
                let mut l = Self::zero(n);
                for j in 0..n {
                    l.add_term(Monomial::var(n, j), m.get(i, j).clone());
                }
                l
            })
            .collect();
        // powers[i][k] = forms[i]^k, filled lazily
        let mut powers: Vec<Vec<Self>> = forms
            .iter()
            .map(|_| vec![Self::constant(n, C::one())])
            .collect();
        let mut out = Self::zero(n);
        for (mono, c) in &self.terms {
            let mut term = Self::constant(n, c.clone());
            for (i, &e) in mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &forms[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[C]) -> Result<C> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut total = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            total += &t;
        }
        Ok(total)
    }

    /// Splits into components homogeneous in each block of variables.
    ///
    /// Variables not covered by `blocks` form one trailing block (when any
    /// remain). Keys are the per-block degrees in block order; only nonzero
    /// components are returned.
    pub fn homogeneous_split(&self, blocks: &[Vec<usize>]) -> Result<BTreeMap<Vec<u32>, Self>> {
        let blocks = complete_partition(self.nvars, blocks)?;
        let mut out: BTreeMap<Vec<u32>, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = blocks.iter().map(|b| m.block_degree(b)).collect();
            out.entry(key)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Groups by the power of `x_var`: maps `k` to the coefficient of
    /// `x_var^k`, a polynomial in the remaining `nvars - 1` variables.
    pub fn collect_var(&self, var: usize) -> Result<BTreeMap<u32, Self>> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                dim: self.nvars,
            });
        }
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            let k = exps.remove(var);
            out.entry(k)
                .or_insert_with(|| Self::zero(self.nvars - 1))
                .add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `target` variables, sending
    /// variable `i` to `map[i]`.
    pub fn embed(&self, target: usize, map: &[usize]) -> Result<Self> {
        if map.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= target) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                dim: target,
            });
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Keeps only the listed variables, in the listed order. Terms that
    /// involve any other variable are an error.
    pub fn restrict(&self, vars: &[usize]) -> Result<Self> {
        let mut out = Self::zero(vars.len());
        for (m, c) in &self.terms {
            let e = m.exponents();
            let outside = (0..self.nvars).any(|v| e[v] > 0 && !vars.contains(&v));
            if outside {
                return Err(Error::InvalidParameters(
                    "polynomial depends on variables outside the selection".into(),
                ));
            }
            out.add_term(
                Monomial::new(vars.iter().map(|&v| e[v]).collect()),
                c.clone(),
            );
        }
        Ok(out)
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Coefficient of largest magnitude, as a nonnegative value.
    pub fn max_abs_coeff(&self) -> C {
        self.terms
            .values()
            .max_by(|a, b| a.magnitude().total_cmp(&b.magnitude()))
            .map(|c| {
                if is_negative(c) {
                    -c.clone()
                } else {
                    c.clone()
                }
            })
            .unwrap_or_else(C::zero)
    }

    /// Drops coefficients with magnitude at most `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| !c.negligible(tol))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_float(&self) -> FloatPolynomial {
        self.map_coeffs(|c| c.to_f64())
    }
}

/// `Σ a_i b_i` for two equal-length vectors of polynomials.
pub fn dot<C: Coefficient>(a: &[Poly<C>], b: &[Poly<C>]) -> Poly<C> {
    dot_in(a.first().map_or(0, Poly::nvars), a, b)
}

/// [`dot`] with an explicit ring dimension, so empty vectors give the zero
/// of the right ring.
pub fn dot_in<C: Coefficient>(nvars: usize, a: &[Poly<C>], b: &[Poly<C>]) -> Poly<C> {
    assert_eq!(a.len(), b.len(), "dot product of unequal lengths");
    a.iter()
        .zip(b)
        .fold(Poly::zero(nvars), |acc, (x, y)| &acc + &(x * y))
}

/// Validates disjoint blocks and appends the uncovered variables as a final
/// block.
pub(crate) fn complete_partition(nvars: usize, blocks: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; nvars];
    for b in blocks {
        for &v in b {
            if v >= nvars {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    dim: nvars,
                });
            }
            if seen[v] {
                return Err(Error::OverlappingBlocks(v));
            }
            seen[v] = true;
        }
    }
    let mut out = blocks.to_vec();
    let rest: Vec<usize> = (0..nvars).filter(|&v| !seen[v]).collect();
    if !rest.is_empty() {
        out.push(rest);
    }
    Ok(out)
}

impl<C: Coefficient> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_add(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl<C: Coefficient> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_sub(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl<C: Coefficient> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: &Poly<C>) -> Poly<C> {
        self.checked_mul(rhs)
            .expect("polynomial dimension mismatch")
    }
}

impl<C: Coefficient> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl<C: Coefficient> Add for Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Poly<C>) -> Poly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> Sub for Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Poly<C>) -> Poly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Poly<C>) -> Poly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            let unit = abs == C::one();
            match (vars.is_empty(), unit) {
                (true, _) => write!(f, "{}", abs.render())?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{}*{}", abs.render(), vars.join("*"))?,
            }
        }
        Ok(())
    }
}
