//! `GF(p^m)` with elements packed into a `u64` as base-`p` digit strings
//! (the coefficient of `x^i` is the `i`-th digit). For `p = 2` the packing is
//! the usual bit-polynomial and arithmetic uses carry-less multiplication.

use rand::{Rng, RngCore};

use super::{Field, SampleField};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    m: u32,
    size: u64,
    /// Monic modulus, ascending coefficients, length `m + 1`.
    modulus: Vec<u64>,
    /// `x^m mod modulus` as a packed element (binary fast path).
    modulus_bits: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= p {
        if p % q == 0 {
            return false;
        }
        q += 1;
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::Field("extension degree must be at least 1".into()));
        }
        let size = (0..m)
            .try_fold(1u64, |acc, _| acc.checked_mul(p))
            .filter(|&s| s < 1 << 62)
            .ok_or_else(|| Error::Field(format!("GF({p}^{m}) does not fit in 62 bits")))?;
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, m as usize).coeffs
        };
        let modulus_bits = if p == 2 {
            modulus[..m as usize]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };
        Ok(FiniteField {
            p,
            m,
            size,
            modulus,
            modulus_bits,
        })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn order(&self) -> u64 {
        self.size
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Packs a coefficient list (ascending powers of the generator).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> u64 {
        let reduced = FpPoly::new(self.p, coeffs.to_vec()).rem(&FpPoly::new(self.p, self.modulus.clone()));
        self.pack(&reduced.coeffs)
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &u64) -> u64 {
        self.pow(a, self.p)
    }

    fn unpack(&self, mut a: u64) -> Vec<u64> {
        let mut digits = vec![0u64; self.m as usize];
        for d in digits.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        digits
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d)
    }

    fn mul_binary(&self, a: u64, b: u64) -> u64 {
        let m = self.m;
        let mut prod: u128 = 0;
        let mut bb = b;
        let mut shift = 0;
        while bb != 0 {
            if bb & 1 == 1 {
                prod ^= (a as u128) << shift;
            }
            bb >>= 1;
            shift += 1;
        }
        // reduce: x^m = modulus_bits
        for i in (m as usize..(2 * m as usize).saturating_sub(1)).rev() {
            if prod >> i & 1 == 1 {
                prod ^= 1u128 << i;
                prod ^= (self.modulus_bits as u128) << (i - m as usize);
            }
        }
        prod as u64
    }

    fn mul_general(&self, a: u64, b: u64) -> u64 {
        let p = self.p as u128;
        let m = self.m as usize;
        let da = self.unpack(a);
        let db = self.unpack(b);
        let mut prod = vec![0u128; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for k in 0..m {
                let sub = c * self.modulus[k] as u128 % p;
                prod[i - m + k] = (prod[i - m + k] + p - sub) % p;
            }
        }
        let digits: Vec<u64> = prod[..m].iter().map(|&c| c as u64).collect();
        self.pack(&digits)
    }
}

impl Field for FiniteField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return ((*a as u128 + *b as u128) % self.p as u128) as u64;
        }
        let (da, db) = (self.unpack(*a), self.unpack(*b));
        let digits: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&digits)
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &u64) -> u64 {
        if self.p == 2 {
            return *a;
        }
        if self.m == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let digits: Vec<u64> = self
            .unpack(*a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.pack(&digits)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        if self.m == 1 {
            ((*a as u128 * *b as u128) % self.p as u128) as u64
        } else if self.p == 2 {
            self.mul_binary(*a, *b)
        } else {
            self.mul_general(*a, *b)
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.size - 2))
        }
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn describe(&self) -> String {
        if self.m == 1 {
            format!("GF({})", self.p)
        } else {
            format!("GF({}^{})", self.p, self.m)
        }
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl SampleField for FiniteField {
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.size)
    }

    fn sample_nonzero(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(1..self.size)
    }

    fn sample_space_bits(&self) -> f64 {
        (self.size as f64).log2()
    }
}

/// Dense polynomial over `GF(p)`, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        (a as u128 * b as u128 % p as u128) as u64
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mulmod(acc, base, p);
            }
            base = Self::mulmod(base, base, p);
            e >>= 1;
        }
        acc
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        FpPoly::new(p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(self.p, vec![]);
        }
        let p = self.p;
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + Self::mulmod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, c)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        let p = self.p;
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = Self::inv_mod(divisor.coeffs[dd], p);
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let c = Self::mulmod(r[top], lead_inv, p);
            if c != 0 {
                for (k, &dc) in divisor.coeffs.iter().enumerate() {
                    let idx = top - dd + k;
                    r[idx] = (r[idx] + p - Self::mulmod(c, dc, p)) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        FpPoly::new(p, r)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    pub fn powmod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = FpPoly::new(self.p, vec![1]).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }
}

/// Ben-Or irreducibility test: `gcd(f, x^{p^i} - x) = 1` for `i <= deg/2`.
pub fn is_irreducible(f: &FpPoly) -> bool {
    let n = match f.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let x = FpPoly::x(f.p);
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = h.powmod(f.p, f);
        let g = f.gcd(&h.sub(&x));
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// The monic irreducible of degree `m` over `GF(p)` whose lower coefficients
/// `(c_{m-1}, .., c_0)` are lexicographically least.
pub fn least_irreducible(p: u64, m: usize) -> FpPoly {
    let mut k: u64 = 0;
    loop {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut rest = k;
        for _ in 0..m {
            coeffs.push(rest % p);
            rest /= p;
        }
        coeffs.push(1);
        if coeffs[0] != 0 {
            let f = FpPoly::new(p, coeffs);
            if is_irreducible(&f) {
                return f;
            }
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    fn irreducible_by_search(f: &FpPoly) -> bool {
        let n = f.degree().unwrap();
        let p = f.p;
        for deg in 1..=n / 2 {
            let count = p.pow(deg as u32);
            for k in 0..count {
                let mut c = Vec::new();
                let mut rest = k;
                for _ in 0..deg {
                    c.push(rest % p);
                    rest /= p;
                }
                c.push(1);
                if f.rem(&FpPoly::new(p, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for p in [2u64, 3, 5] {
            for m in 2..=6usize {
                let total = p.pow(m as u32);
                for k in 0..total.min(400) {
                    let mut c = Vec::new();
                    let mut rest = k;
                    for _ in 0..m {
                        c.push(rest % p);
                        rest /= p;
                    }
                    c.push(1);
                    let f = FpPoly::new(p, c);
                    assert_eq!(is_irreducible(&f), irreducible_by_search(&f), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn least_irreducibles_are_reproducible() {
        // x^2 + x + 1 over GF(2); x^2 + 1 over GF(3); x^3 + x + 1 over GF(2)
        assert_eq!(least_irreducible(2, 2).coeffs, vec![1, 1, 1]);
        assert_eq!(least_irreducible(3, 2).coeffs, vec![1, 0, 1]);
        assert_eq!(least_irreducible(2, 3).coeffs, vec![1, 1, 0, 1]);
        let f31 = least_irreducible(2, 31);
        assert_eq!(f31.degree(), Some(31));
        assert!(irreducible_by_search(&f31));
    }

    #[test]
    fn small_field_inverses_exhaustive() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (7, 1)] {
            let f = FiniteField::new(p, m).unwrap();
            for a in 1..f.order() {
                let ai = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &ai), 1, "{p}^{m}: {a}");
            }
        }
    }

    #[test]
    fn binary_and_general_paths_agree() {
        let f = FiniteField::new(2, 8).unwrap();
        let general = FiniteField { modulus_bits: 0, ..f.clone() };
        for a in 0..256u64 {
            for b in (0..256u64).step_by(7) {
                assert_eq!(f.mul_binary(a, b), general.mul_general(a, b));
            }
        }
    }

    fn fields() -> Vec<FiniteField> {
        vec![
            FiniteField::new(2, 31).unwrap(),
            FiniteField::new(3, 20).unwrap(),
            FiniteField::new(2, 1).unwrap(),
            FiniteField::new(65521, 1).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            for f in fields() {
                let (a, b, c) = (a % f.order(), b % f.order(), c % f.order());
                prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                prop_assert_eq!(f.add(&a, &f.neg(&a)), 0);
                if a != 0 {
                    prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
                }
            }
        }

        #[test]
        fn frobenius_is_a_ring_map(a in any::<u64>(), b in any::<u64>()) {
            for f in fields() {
                let (a, b) = (a % f.order(), b % f.order());
                prop_assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
                prop_assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
            }
        }
    }
}
