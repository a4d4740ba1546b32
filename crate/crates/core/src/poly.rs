//! Dense univariate integer polynomials for h- and local h-vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer polynomial stored as coefficients indexed by degree.
///
/// Trailing zeros are allowed; equality ignores them.
#[derive(Clone, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPolynomial(Vec<i64>);

impl IntPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Self {
        IntPolynomial(coeffs)
    }

    pub fn zero() -> Self {
        IntPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        IntPolynomial(vec![1])
    }

    pub fn monomial(deg: usize, coeff: i64) -> Self {
        let mut c = vec![0; deg + 1];
        c[deg] = coeff;
        IntPolynomial(c)
    }

    /// `t^a (1 - t)^b`.
    pub fn t_pow_one_minus_t(a: usize, b: usize) -> Self {
        let mut c = vec![0i64; a + b + 1];
        let mut binom = 1i64;
        for k in 0..=b {
            c[a + k] = if k % 2 == 0 { binom } else { -binom };
            binom = binom * (b - k) as i64 / (k + 1) as i64;
        }
        IntPolynomial(c)
    }

    pub fn scaled(&self, k: i64) -> Self {
        IntPolynomial(self.0.iter().map(|c| c * k).collect())
    }

    pub fn coeff(&self, deg: usize) -> i64 {
        self.0.get(deg).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn trimmed(&self) -> &[i64] {
        let end = self.0.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        &self.0[..end]
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Coefficient vector padded with zeros (or truncated) to `len` entries.
    pub fn padded(&self, len: usize) -> Vec<i64> {
        let mut v = self.trimmed().to_vec();
        v.resize(len.max(v.len()), 0);
        v
    }

    /// `c_s == c_{n - s}` for all `s` in `0..=n`, with missing entries zero.
    pub fn is_symmetric_about(&self, n: usize) -> bool {
        self.degree().is_none_or(|deg| deg <= n)
            && (0..=n).all(|s| self.coeff(s) == self.coeff(n - s))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

impl PartialEq for IntPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for IntPolynomial {}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i64>> for IntPolynomial {
    fn from(v: Vec<i64>) -> Self {
        IntPolynomial(v)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.0.len().max(rhs.0.len());
        IntPolynomial((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.0.len().max(rhs.0.len());
        IntPolynomial((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        let (a, b) = (self.trimmed(), rhs.trimmed());
        if a.is_empty() || b.is_empty() {
            return IntPolynomial::zero();
        }
        let mut c = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        IntPolynomial(c)
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_factor() {
        assert_eq!(IntPolynomial::t_pow_one_minus_t(1, 2), vec![0, 1, -2, 1].into());
        assert_eq!(IntPolynomial::t_pow_one_minus_t(0, 0), IntPolynomial::one());
    }

    #[test]
    fn equality_ignores_trailing_zeros() {
        assert_eq!(IntPolynomial::new(vec![0, 1, 1, 0]), vec![0, 1, 1].into());
        assert_eq!(IntPolynomial::new(vec![0, 0]), IntPolynomial::zero());
    }

    #[test]
    fn product() {
        let p: IntPolynomial = vec![0, 1, 1].into();
        assert_eq!(&p * &p, vec![0, 0, 1, 2, 1].into());
        assert!(p.is_symmetric_about(3));
        assert!(!p.is_symmetric_about(2));
    }
}
