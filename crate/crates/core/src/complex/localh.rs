use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::simplicial::h_from_f;
use super::triangulation::Triangulation;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalHMethod {
    Excess,
    Alternating,
}

impl Triangulation {
    pub fn local_h(&self, method: LocalHMethod) -> IntPolynomial {
        match method {
            LocalHMethod::Excess => self.local_h_excess(),
            LocalHMethod::Alternating => self
                .relative_local_h(BitSet::EMPTY)
                .expect("the empty face is always a face"),
        }
    }

    /// `sum_F (-1)^{d - |σ(F)|} t^{d - e(F)} (1 - t)^{e(F)}`.
    fn local_h_excess(&self) -> IntPolynomial {
        let d = self.d();
        self.faces_with_sigma()
            .map(|(f, s)| {
                let e = s.len() - f.len();
                let sign = if (d - s.len()) % 2 == 0 { 1 } else { -1 };
                IntPolynomial::t_pow_one_minus_t(d - e, e).scaled(sign)
            })
            .sum()
    }

    /// `h(Γ) = h(Γ_V)` in dimension `d`.
    pub fn h_vector(&self) -> IntPolynomial {
        self.complex()
            .h_polynomial(self.d())
            .expect("faces of a valid triangulation have at most d vertices")
    }

    /// `ℓ(Γ, E; t) = sum_{U ⊇ σ(E)} (-1)^{d - |U|} h(lk_{Γ_U}(E); t)`.
    pub fn relative_local_h(&self, e: BitSet) -> Result<IntPolynomial> {
        let sigma_e = self
            .sigma(e)
            .ok_or_else(|| Error::NotAFace(self.face_ids(e)))?;
        let d = self.d();
        // counts[σ(G ∪ E)][|G|] over faces G of lk(E)
        let mut counts: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (g, s) in self.faces_with_sigma() {
            if !e.is_subset(g) {
                continue;
            }
            let size = g.len() - e.len();
            let row = counts.entry(s.bits()).or_insert_with(|| vec![0; d + 1]);
            row[size] += 1;
        }
        let rest = self.full_v().difference(sigma_e);
        let mut total = IntPolynomial::zero();
        for extra in rest.subsets() {
            let u = sigma_e.union(extra);
            let mut f = vec![0usize; d + 1];
            for (&s, row) in &counts {
                if BitSet::from_bits(s).is_subset(u) {
                    for (acc, c) in f.iter_mut().zip(row) {
                        *acc += c;
                    }
                }
            }
            let h = h_from_f(&f, u.len() - e.len())?;
            let sign = if (d - u.len()) % 2 == 0 { 1 } else { -1 };
            total = &total + &h.scaled(sign);
        }
        Ok(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn both(t: &Triangulation) -> IntPolynomial {
        let a = t.local_h(LocalHMethod::Excess);
        let b = t.local_h(LocalHMethod::Alternating);
        assert_eq!(a, b);
        a
    }

    #[test]
    fn local_h_examples() {
        assert_eq!(both(&catalog::interior_point(3).unwrap()), vec![0, 1, 1].into());
        assert_eq!(both(&catalog::figure1()), vec![0, 1, 1].into());
        assert_eq!(both(&catalog::interior_point(4).unwrap()), vec![0, 1, 1, 1].into());
        for d in 1..=5 {
            assert!(both(&catalog::trivial(d).unwrap()).is_zero());
        }
    }

    #[test]
    fn h_vector_examples() {
        assert_eq!(catalog::interior_point(3).unwrap().h_vector(), vec![1, 1, 1, 0].into());
        assert_eq!(catalog::figure1().h_vector(), vec![1, 2, 1].into());
        assert_eq!(catalog::interior_point(4).unwrap().h_vector(), vec![1, 1, 1, 1].into());
    }

    #[test]
    fn relative_examples() {
        let t = catalog::interior_point(3).unwrap();
        let w = t.face_from_ids(&["w"]).unwrap();
        let v1 = t.face_from_ids(&["v1"]).unwrap();
        assert_eq!(t.relative_local_h(w).unwrap(), vec![1, 1, 1].into());
        assert_eq!(t.relative_local_h(v1).unwrap(), vec![0, 1].into());
        assert_eq!(t.relative_local_h(BitSet::EMPTY).unwrap(), both(&t));
    }

    #[test]
    fn join_multiplies() {
        let g1 = catalog::interior_point(3).unwrap();
        let g2 = g1.join(&g1).unwrap();
        assert_eq!(both(&g2), vec![0, 0, 1, 2, 1].into());
        let g3 = catalog::gamma_t(3).unwrap();
        assert_eq!(both(&g3), vec![0, 0, 0, 1, 3, 3, 1].into());
        let pt = catalog::trivial(1).unwrap();
        assert!(both(&g1.join(&pt).unwrap()).is_zero());
    }
}
