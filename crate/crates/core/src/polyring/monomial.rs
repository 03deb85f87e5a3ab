use std::cmp::Ordering;

/// Exponent vector of a monomial over a fixed number of variables.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of `x1`, then `x2`, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Degree restricted to the given variables.
    pub fn block_degree(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&v| self.0[v]).sum()
    }
}

impl From<Vec<u32>> for Monomial {
    fn from(v: Vec<u32>) -> Self {
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![4, 0]);
        let b = Monomial::new(vec![2, 2]);
        let c = Monomial::new(vec![0, 4]);
        let d = Monomial::new(vec![5, 0]);
        assert!(a > b && b > c);
        assert!(d > a);
        assert!(Monomial::new(vec![0, 0, 3]) > Monomial::new(vec![2, 0, 0]));
    }
}
