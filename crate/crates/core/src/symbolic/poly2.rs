use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::linalg::IntegralDomain;

/// Exponent vector; the ordering of `Vec<u16>` is lexicographic with the
/// first variable largest, which is a monomial order.
pub type Exponents = Vec<u16>;

/// Sparse polynomial over 𝔽₂ in a fixed number of variables. A polynomial
/// is the set of its monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly2 {
    nvars: usize,
    terms: BTreeSet<Exponents>,
}

impl Poly2 {
    pub fn zero(nvars: usize) -> Self {
        Poly2 {
            nvars,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e)
    }

    pub fn monomial(e: Exponents) -> Self {
        Poly2 {
            nvars: e.len(),
            terms: BTreeSet::from([e]),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = Exponents>>(nvars: usize, terms: I) -> Self {
        let mut p = Poly2::zero(nvars);
        for t in terms {
            assert_eq!(t.len(), nvars);
            toggle(&mut p.terms, t);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().next().unwrap().iter().all(|&e| e == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Exponents> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|e| e.iter().map(|&x| u32::from(x)).sum()).max()
    }

    pub fn leading(&self) -> Option<&Exponents> {
        self.terms.last()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        Poly2 {
            nvars: self.nvars,
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut acc: HashSet<Exponents> = HashSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let m: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !acc.remove(&m) {
                    acc.insert(m);
                }
            }
        }
        Poly2 {
            nvars: self.nvars,
            terms: acc.into_iter().collect(),
        }
    }

    fn mul_monomial(&self, m: &[u16]) -> Poly2 {
        Poly2 {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|a| a.iter().zip(m).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    /// Frobenius: `p² = Σ m²` in characteristic 2.
    pub fn square(&self) -> Poly2 {
        Poly2 {
            nvars: self.nvars,
            terms: self.terms.iter().map(|e| e.iter().map(|x| 2 * x).collect()).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly2 {
        let mut result = Poly2::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.square();
            k >>= 1;
        }
        result
    }

    /// `∂/∂a_i`; only odd exponents survive.
    pub fn derivative(&self, i: usize) -> Poly2 {
        Poly2 {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|e| e[i] % 2 == 1)
                .map(|e| {
                    let mut e = e.clone();
                    e[i] -= 1;
                    e
                })
                .collect(),
        }
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        let lead = d.leading()?.clone();
        let mut rem = self.clone();
        let mut quot = BTreeSet::new();
        while let Some(lt) = rem.leading() {
            if lt.iter().zip(&lead).any(|(a, b)| a < b) {
                return None;
            }
            let q: Exponents = lt.iter().zip(&lead).map(|(a, b)| a - b).collect();
            rem = rem.add(&d.mul_monomial(&q));
            quot.insert(q);
        }
        Some(Poly2 {
            nvars: self.nvars,
            terms: quot,
        })
    }

    pub fn eval(&self, point: &[bool]) -> bool {
        self.terms
            .iter()
            .filter(|e| e.iter().zip(point).all(|(&x, &p)| x == 0 || p))
            .count()
            % 2
            == 1
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out: Vec<String> = Vec::new();
        for e in self.terms.iter().rev() {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{x}", names[i]) })
                .collect();
            out.push(if factors.is_empty() { "1".into() } else { factors.join("*") });
        }
        out.join(" + ")
    }
}

fn toggle(set: &mut BTreeSet<Exponents>, e: Exponents) {
    if !set.remove(&e) {
        set.insert(e);
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("a{i}")).collect();
        f.write_str(&self.format_with(&names))
    }
}

/// `𝔽₂[a_0, …, a_{n-1}]` as an integral domain, for fraction-free
/// elimination.
#[derive(Clone, Copy, Debug)]
pub struct F2Poly {
    pub nvars: usize,
}

impl IntegralDomain for F2Poly {
    type Elem = Poly2;
    fn zero(&self) -> Poly2 {
        Poly2::zero(self.nvars)
    }
    fn one(&self) -> Poly2 {
        Poly2::one(self.nvars)
    }
    fn is_zero(&self, a: &Poly2) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Poly2, b: &Poly2) -> Poly2 {
        a.add(b)
    }
    fn sub(&self, a: &Poly2, b: &Poly2) -> Poly2 {
        a.add(b)
    }
    fn mul(&self, a: &Poly2, b: &Poly2) -> Poly2 {
        a.mul(b)
    }
    fn exact_div(&self, a: &Poly2, b: &Poly2) -> Option<Poly2> {
        a.div_exact(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::bareiss_determinant;

    fn x(i: usize) -> Poly2 {
        Poly2::var(3, i)
    }

    #[test]
    fn arithmetic() {
        let p = x(0).add(&x(1));
        assert_eq!(p.square(), x(0).mul(&x(0)).add(&x(1).mul(&x(1))));
        assert_eq!(p.mul(&p), p.square());
        assert!(p.add(&p).is_zero());
        assert_eq!(p.pow(3), p.square().mul(&p));
        let q = p.mul(&x(2).add(&Poly2::one(3)));
        assert_eq!(q.div_exact(&p).unwrap(), x(2).add(&Poly2::one(3)));
        assert!(x(0).div_exact(&x(1)).is_none());
    }

    #[test]
    fn derivatives() {
        assert!(x(0).square().derivative(0).is_zero());
        let ab_b = x(0).mul(&x(1)).add(&x(1));
        assert_eq!(ab_b.derivative(0), x(1));
    }

    #[test]
    fn bareiss_over_f2_polynomials() {
        let ring = F2Poly { nvars: 3 };
        let one = Poly2::one(3);
        let m = vec![
            vec![x(0), Poly2::zero(3), one.clone()],
            vec![Poly2::zero(3), x(1), one.clone()],
            vec![Poly2::zero(3), Poly2::zero(3), x(2)],
        ];
        assert_eq!(bareiss_determinant(&ring, &m), x(0).mul(&x(1)).mul(&x(2)));
        let m = vec![vec![Poly2::zero(3), x(0)], vec![x(1), one]];
        assert_eq!(bareiss_determinant(&ring, &m), x(0).mul(&x(1)));
    }
}
