//! Exact fields: the rationals, prime fields and their extensions.
//!
//! Field elements are plain values; all arithmetic goes through a field
//! object so that extension fields can carry their modulus.

mod finite;
mod rational;

use std::fmt;

use rand::RngCore;
use serde::{Deserialize, Serialize};

pub use finite::{is_irreducible, least_irreducible, FiniteField, FpPoly};
pub use rational::{parse_rational, Rationals};

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn describe(&self) -> String;
    /// Human- and JSON-friendly rendering of an element.
    fn format(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `a + b * c`, the elimination workhorse.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// Fields that can produce random elements for generic specializations.
pub trait SampleField: Field {
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
    fn sample_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// log2 of the number of elements available to [`SampleField::sample`].
    fn sample_space_bits(&self) -> f64;
}

/// Runtime description of a field: the rationals, or `GF(p^m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Finite { p: u64, m: u32 },
}

impl FieldSpec {
    pub const GENERIC_BITS: u32 = 31;

    /// Characteristic `char` with extension degree `ext`; when `ext` is
    /// omitted a positive characteristic gets the smallest extension with at
    /// least 2^31 elements.
    pub fn new(characteristic: u64, ext: Option<u32>) -> Result<Self> {
        if characteristic == 0 {
            return match ext {
                None | Some(1) => Ok(FieldSpec::Rational),
                Some(m) => Err(Error::Field(format!(
                    "characteristic 0 admits no extension degree {m}"
                ))),
            };
        }
        let m = ext.unwrap_or_else(|| Self::default_extension(characteristic));
        Ok(FieldSpec::Finite {
            p: characteristic,
            m,
        })
    }

    pub fn default_extension(p: u64) -> u32 {
        let target = 2f64.powi(Self::GENERIC_BITS as i32);
        let mut m = 1u32;
        let mut size = p as f64;
        while size < target {
            m += 1;
            size *= p as f64;
        }
        m
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Finite { p, .. } => *p,
        }
    }

    pub fn dispatch<V: FieldVisitor>(&self, visitor: V) -> Result<V::Output> {
        match *self {
            FieldSpec::Rational => Ok(visitor.visit(Rationals)),
            FieldSpec::Finite { p, m } => Ok(visitor.visit(FiniteField::new(p, m)?)),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "QQ"),
            FieldSpec::Finite { p, m: 1 } => write!(f, "GF({p})"),
            FieldSpec::Finite { p, m } => write!(f, "GF({p}^{m})"),
        }
    }
}

/// Runs generic code on the concrete field named by a [`FieldSpec`].
pub trait FieldVisitor {
    type Output;
    fn visit<F: SampleField>(self, field: F) -> Self::Output;
}
