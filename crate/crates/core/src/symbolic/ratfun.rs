use std::fmt;

use super::poly2::Poly2;

/// Element of `𝔽₂(a)`, stored as an unreduced fraction.
#[derive(Clone)]
pub struct RatFun2 {
    num: Poly2,
    den: Poly2,
}

impl RatFun2 {
    pub fn new(num: Poly2, den: Poly2) -> Option<Self> {
        (!den.is_zero()).then_some(RatFun2 { num, den })
    }

    pub fn from_poly(p: Poly2) -> Self {
        let den = Poly2::one(p.nvars());
        RatFun2 { num: p, den }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly2::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly2::one(nvars))
    }

    pub fn numerator(&self) -> &Poly2 {
        &self.num
    }

    pub fn denominator(&self) -> &Poly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFun2) -> RatFun2 {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFun2 {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            };
        }
        RatFun2 {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
    }

    pub fn mul(&self, other: &RatFun2) -> RatFun2 {
        if self.is_zero() || other.is_zero() {
            return RatFun2::zero(self.num.nvars());
        }
        RatFun2 {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
    }

    pub fn inv(&self) -> Option<RatFun2> {
        RatFun2::new(self.den.clone(), self.num.clone())
    }

    pub fn square(&self) -> RatFun2 {
        RatFun2 {
            num: self.num.square(),
            den: self.den.square(),
        }
    }

    /// `∂/∂a_i`. A denominator with vanishing derivative is kept as is;
    /// otherwise `p/q` is rewritten as `pq/q²`, whose denominator is a
    /// square and therefore a constant for every derivation.
    pub fn derivative(&self, i: usize) -> RatFun2 {
        let dq = self.den.derivative(i);
        if dq.is_zero() {
            return RatFun2 {
                num: self.num.derivative(i),
                den: self.den.clone(),
            };
        }
        RatFun2 {
            num: self.num.derivative(i).mul(&self.den).add(&self.num.mul(&dq)),
            den: self.den.square(),
        }
    }

    /// Cancels the denominator when it divides the numerator.
    pub fn simplify(&self) -> RatFun2 {
        if self.den.is_one() {
            return self.clone();
        }
        match self.num.div_exact(&self.den) {
            Some(q) => RatFun2::from_poly(q),
            None => self.clone(),
        }
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.den.is_one() {
            self.num.format_with(names)
        } else {
            format!("({}) / ({})", self.num.format_with(names), self.den.format_with(names))
        }
    }
}

impl PartialEq for RatFun2 {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFun2 {}

impl fmt::Debug for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize) -> RatFun2 {
        RatFun2::from_poly(Poly2::var(2, i))
    }

    #[test]
    fn derivative_examples() {
        let one = RatFun2::one(2);
        assert!(a(0).square().derivative(0).is_zero());
        let inv = a(0).inv().unwrap();
        assert_eq!(inv.derivative(0), inv.square());
        let f = a(0).mul(&a(1)).add(&a(1));
        assert_eq!(f.derivative(0), a(1));
        assert_eq!(one.derivative(1), RatFun2::zero(2));
    }

    #[test]
    fn equality_is_by_cross_multiplication() {
        let x = a(0).mul(&a(1)).mul(&a(1).inv().unwrap());
        assert_eq!(x, a(0));
        assert_eq!(x.simplify().denominator(), &Poly2::one(2));
    }
}
