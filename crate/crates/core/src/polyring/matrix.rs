use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;
use rand::Rng;

use super::coeff::{Coefficient, Rational};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Dense row-major matrix over a coefficient ring.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<C: Coefficient> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![C::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C::one());
        }
        m
    }

    pub fn diagonal(entries: &[C]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                expected: c,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Permutation matrix `P` with `P e_j = e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.set(i, j, C::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a.mul_ref(rhs.get(k, j));
                    out.data[i * rhs.cols + j] += &prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = C::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    s += &a.mul_ref(b);
                }
                s
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&C, &C) -> C) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| {
            let mut s = a.clone();
            s += b;
            s
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| {
            let mut s = a.clone();
            s -= b;
            s
        })
    }

    pub fn scale(&self, s: &C) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul_ref(s)).collect(),
        }
    }

    pub fn trace(&self) -> C {
        let mut t = C::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.data.iter().all(|a| a.negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(C::magnitude).fold(0.0, f64::max)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..i).all(|j| {
                    let mut d = self.get(i, j).clone();
                    d -= self.get(j, i);
                    d.negligible(tol)
                })
            })
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).negligible(tol)))
    }

    /// `MᵀM = I` (within `tol` for inexact rings).
    pub fn is_orthogonal(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let gram = self.transpose().checked_mul(self).expect("square");
        gram.checked_sub(&Self::identity(self.rows))
            .expect("same shape")
            .is_zero(tol)
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot = if C::EXACT {
                (row..m.rows).find(|&i| !m.get(i, col).is_zero())
            } else {
                (row..m.rows)
                    .filter(|&i| !m.get(i, col).negligible(tol))
                    .max_by(|&a, &b| {
                        m.get(a, col)
                            .magnitude()
                            .total_cmp(&m.get(b, col).magnitude())
                    })
            };
            let Some(p) = pivot else { continue };
            for j in 0..m.cols {
                m.data.swap(row * m.cols + j, p * m.cols + j);
            }
            let inv = m.get(row, col).recip().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(row, j).mul_ref(&inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in 0..m.cols {
                    let delta = factor.mul_ref(m.get(row, j));
                    let mut v = m.get(i, j).clone();
                    v -= &delta;
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).1.len()
    }

    /// Basis of the right null space `{v : Mv = 0}`.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<C>> {
        let (r, pivots) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(); self.cols];
                v[f] = C::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, tol: f64) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                C::one()
            } else {
                C::zero()
            }
        });
        let (r, pivots) = aug.rref(tol);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// The quadratic form `Σ M_ij y_i y_j` where `y_i` is variable
    /// `vars[i]` of an `nvars`-variable polynomial ring.
    pub fn quadratic_form(&self, nvars: usize, vars: &[usize]) -> Poly<C> {
        assert!(self.is_square() && vars.len() == self.rows);
        let mut out = Poly::zero(nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let mut e = vec![0; nvars];
                e[vars[i]] += 1;
                e[vars[j]] += 1;
                out = &out + &Poly::monomial(e, c.clone());
            }
        }
        out
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_float(&self) -> Matrix<f64> {
        self.map(|c| c.to_f64())
    }
}

impl RationalMatrix {
    /// Cayley transform `(I - S)(I + S)^{-1}` of an antisymmetric `S`; the
    /// result is exactly orthogonal.
    pub fn cayley(s: &Self) -> Result<Self> {
        if !s.is_square() {
            return Err(Error::InvalidParameters(
                "Cayley transform needs a square matrix".into(),
            ));
        }
        let st = s.transpose();
        if s.checked_add(&st)?.data.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidParameters(
                "Cayley transform needs an antisymmetric matrix".into(),
            ));
        }
        let n = s.rows;
        let id = Self::identity(n);
        let inv = id
            .checked_add(s)?
            .inverse(0.0)
            .expect("I + S is invertible for antisymmetric S");
        id.checked_sub(s)?.checked_mul(&inv)
    }

    /// Pseudo-random exactly orthogonal matrix: the Cayley transform of an
    /// antisymmetric matrix with small rational entries.
    pub fn random_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut s = Self::zeros(n, n);
        for i in 0..n {
            for j in (i + 1)..n {
                let num: i64 = rng.gen_range(-3..=3);
                let den: i64 = rng.gen_range(1..=3);
                let v = super::coeff::ratio(num, den);
                s.set(j, i, -v.clone());
                s.set(i, j, v);
            }
        }
        Self::cayley(&s).expect("antisymmetric by construction")
    }

    /// Householder reflection exchanging `e_last` and the unit vector `v`.
    /// Exactly orthogonal whenever `|v| = 1` exactly.
    pub fn householder_to_last(v: &[Rational]) -> Result<Self> {
        let n = v.len();
        let mut norm = Rational::from_int(0);
        for x in v {
            norm += &x.mul_ref(x);
        }
        if norm != Rational::from_int(1) {
            return Err(Error::InvalidParameters(
                "householder vector must have unit length".into(),
            ));
        }
        let mut w: Vec<Rational> = v.iter().map(|x| -x.clone()).collect();
        w[n - 1] += &Rational::from_int(1);
        let mut ww = Rational::from_int(0);
        for x in &w {
            ww += &x.mul_ref(x);
        }
        if ww == Rational::from_int(0) {
            return Ok(Self::identity(n));
        }
        let factor = Rational::from_int(2) / ww;
        Ok(Self::from_fn(n, n, |i, j| {
            let delta = if i == j {
                Rational::from_int(1)
            } else {
                Rational::from_int(0)
            };
            delta - factor.mul_ref(&w[i].mul_ref(&w[j]))
        }))
    }
}

impl<C: Coefficient> Mul for &Matrix<C> {
    type Output = Matrix<C>;
    fn mul(self, rhs: &Matrix<C>) -> Matrix<C> {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl<C: Coefficient> Add for &Matrix<C> {
    type Output = Matrix<C>;
    fn add(self, rhs: &Matrix<C>) -> Matrix<C> {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }
}

impl<C: Coefficient> Sub for &Matrix<C> {
    type Output = Matrix<C>;
    fn sub(self, rhs: &Matrix<C>) -> Matrix<C> {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }
}

impl<C: Coefficient> fmt::Display for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Coefficient::render).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::coeff::{rat, ratio};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cayley_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..6 {
            let u = RationalMatrix::random_orthogonal(n, &mut rng);
            assert!(u.is_orthogonal(0.0));
        }
    }

    #[test]
    fn inverse_and_nullspace() {
        let m =
            RationalMatrix::from_rows(vec![vec![rat(2), rat(1)], vec![rat(1), rat(1)]]).unwrap();
        let inv = m.inverse(0.0).unwrap();
        assert_eq!(&m * &inv, RationalMatrix::identity(2));
        let sing =
            RationalMatrix::from_rows(vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]]).unwrap();
        assert!(sing.inverse(0.0).is_none());
        let ns = sing.nullspace(0.0);
        assert_eq!(ns, vec![vec![rat(-2), rat(1)]]);
        assert_eq!(sing.rank(0.0), 1);
    }

    #[test]
    fn householder_maps_last_axis() {
        let v = vec![ratio(2, 3), ratio(-1, 3), ratio(2, 3)];
        let h = RationalMatrix::householder_to_last(&v).unwrap();
        assert!(h.is_orthogonal(0.0));
        assert_eq!(h.column(2), v);
    }
}
