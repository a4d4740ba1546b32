//! Artinian reductions `k[Δ]/(θ)` of face rings, degree by degree.
//!
//! The linear forms are eliminated up front: after row reduction of `θ`
//! the pivot variables are expressed through the `r` free variables
//! `y_1..y_r`, so the quotient is `k[y]/φ(I_Δ)`. Each graded piece is the
//! span of `y`-monomials of that degree modulo the relations, with the
//! standard monomials (non-pivot columns) as basis.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{rref, Matrix, RowSpace};
use crate::poly::IntPolynomial;

struct Piece<E> {
    monomials: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
    relations: RowSpace<E>,
    basis: Vec<usize>,
}

impl<E> Piece<E> {
    fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Exponent vectors of total degree `s` in `r` variables, descending lex.
fn monomials_of_degree(r: usize, s: usize) -> Vec<Vec<u8>> {
    fn rec(r: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() + 1 == r {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            rec(r, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        if s == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(r, s, &mut Vec::with_capacity(r), &mut out);
    out
}

/// `A = k[Δ]/(θ)` truncated at degree `top`.
pub struct GradedAlgebra<F: Field> {
    field: F,
    complex: SimplicialComplex,
    /// `φ(x_j)` as a linear form in `y`, per vertex slot.
    phi: Vec<Option<Vec<F::Elem>>>,
    r: usize,
    pieces: Vec<Piece<F::Elem>>,
}

impl<F: Field> GradedAlgebra<F> {
    /// `theta` has one column per vertex slot of `complex`; columns of
    /// non-vertices are ignored. With `expected` given, relation gathering
    /// stops once a piece has shrunk to the expected dimension and a larger
    /// piece is reported as [`Error::HilbertMismatch`].
    pub fn new(
        field: F,
        complex: SimplicialComplex,
        theta: &Matrix<F::Elem>,
        top: usize,
        expected: Option<&IntPolynomial>,
        what: &'static str,
    ) -> Result<Self> {
        let vars = complex.vertices();
        let slots = complex.num_vertices();
        if theta.cols() != slots {
            return Err(Error::DimensionMismatch(format!(
                "θ has {} columns for {} vertex slots",
                theta.cols(),
                slots
            )));
        }
        let mut reduced = theta.select_columns(&vars);
        let pivots = rref(&field, &mut reduced);
        let free: Vec<usize> = (0..vars.len()).filter(|c| !pivots.contains(c)).collect();
        let r = free.len();
        let mut phi = vec![None; slots];
        for (y, &c) in free.iter().enumerate() {
            let mut form = vec![field.zero(); r];
            form[y] = field.one();
            phi[vars[c]] = Some(form);
        }
        for (row, &c) in pivots.iter().enumerate() {
            let form = free
                .iter()
                .map(|&fc| field.neg(reduced.get(row, fc)))
                .collect();
            phi[vars[c]] = Some(form);
        }
        let mut alg = GradedAlgebra {
            field,
            complex,
            phi,
            r,
            pieces: Vec::new(),
        };
        let nonfaces = alg.complex.minimal_nonfaces();
        for s in 0..=top {
            let monomials = monomials_of_degree(r, s);
            let index: HashMap<Vec<u8>, usize> =
                monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let cols = monomials.len();
            let target = expected.map(|h| cols as i64 - h.coeff(s));
            let mut relations = RowSpace::new(cols);
            let done = |rel: &RowSpace<F::Elem>| target.is_some_and(|t| rel.dim() as i64 >= t);
            if s > 0 && !done(&relations) {
                let prev = &alg.pieces[s - 1];
                'outer: for row in prev.relations.rows().to_vec() {
                    for f in 0..r {
                        let v = alg.shift(s - 1, &row, f, &index, cols);
                        relations.insert(&alg.field, &v);
                        if done(&relations) {
                            break 'outer;
                        }
                    }
                }
            }
            if !done(&relations) {
                for n in nonfaces.iter().filter(|n| n.len() == s) {
                    let v = alg.full_product_of_vars(n.iter(), &index, s);
                    relations.insert(&alg.field, &v);
                    if done(&relations) {
                        break;
                    }
                }
            }
            let mut is_pivot = vec![false; cols];
            for &p in relations.pivots() {
                is_pivot[p] = true;
            }
            let basis = (0..cols).filter(|&c| !is_pivot[c]).collect();
            alg.pieces.push(Piece {
                monomials,
                index,
                relations,
                basis,
            });
        }
        if let Some(h) = expected {
            let found = alg.hilbert();
            let want: Vec<i64> = (0..=top).map(|s| h.coeff(s)).collect();
            if found != want {
                return Err(Error::HilbertMismatch {
                    what,
                    expected: want,
                    found,
                });
            }
        }
        Ok(alg)
    }

    /// Multiplies a full vector of degree `s` by `y_f`.
    fn shift(
        &self,
        s: usize,
        v: &[F::Elem],
        f: usize,
        index: &HashMap<Vec<u8>, usize>,
        cols: usize,
    ) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); cols];
        for (c, x) in v.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            let mut m = self.pieces[s].monomials[c].clone();
            m[f] += 1;
            out[index[&m]] = x.clone();
        }
        out
    }

    /// Full vector of `prod φ(x_j)` in degree `s` (no reduction).
    fn full_product_of_vars(
        &self,
        vars: impl Iterator<Item = usize>,
        index: &HashMap<Vec<u8>, usize>,
        s: usize,
    ) -> Vec<F::Elem> {
        let mut poly: HashMap<Vec<u8>, F::Elem> = HashMap::new();
        poly.insert(vec![0; self.r], self.field.one());
        for j in vars {
            let form = self.phi[j].as_ref().expect("vertex of the complex");
            let mut next: HashMap<Vec<u8>, F::Elem> = HashMap::new();
            for (m, c) in &poly {
                for (f, a) in form.iter().enumerate() {
                    if self.field.is_zero(a) {
                        continue;
                    }
                    let mut m2 = m.clone();
                    m2[f] += 1;
                    let entry = next.entry(m2).or_insert_with(|| self.field.zero());
                    *entry = self.field.mul_add(entry, c, a);
                }
            }
            poly = next;
        }
        let mut out = vec![self.field.zero(); index.len()];
        for (m, c) in poly {
            if let Some(&i) = index.get(&m) {
                out[i] = c;
            } else {
                debug_assert_eq!(m.iter().map(|&e| e as usize).sum::<usize>(), s);
            }
        }
        out
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Number of free variables left after eliminating `θ`.
    pub fn free_variables(&self) -> usize {
        self.r
    }

    pub fn top(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn dim(&self, s: usize) -> usize {
        self.pieces.get(s).map_or(0, Piece::dim)
    }

    pub fn hilbert(&self) -> Vec<i64> {
        self.pieces.iter().map(|p| p.dim() as i64).collect()
    }

    pub fn zero(&self, s: usize) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim(s)]
    }

    pub fn one(&self) -> Vec<F::Elem> {
        vec![self.field.one(); self.dim(0)]
    }

    /// Coordinates of a full degree-`s` vector in the standard basis.
    fn reduce_full(&self, s: usize, v: &[F::Elem]) -> Vec<F::Elem> {
        let piece = &self.pieces[s];
        let r = piece.relations.reduce(&self.field, v);
        piece.basis.iter().map(|&c| r[c].clone()).collect()
    }

    fn to_full(&self, s: usize, coords: &[F::Elem]) -> Vec<F::Elem> {
        let piece = &self.pieces[s];
        let mut v = vec![self.field.zero(); piece.monomials.len()];
        for (&c, x) in piece.basis.iter().zip(coords) {
            v[c] = x.clone();
        }
        v
    }

    /// `φ(sum_j c_j x_j)` as a `y`-linear form.
    pub fn linear_form(&self, coeffs: &[(usize, F::Elem)]) -> Vec<F::Elem> {
        let mut form = vec![self.field.zero(); self.r];
        for (j, c) in coeffs {
            if let Some(Some(phi)) = self.phi.get(*j) {
                for (acc, a) in form.iter_mut().zip(phi) {
                    *acc = self.field.mul_add(acc, c, a);
                }
            }
        }
        form
    }

    pub fn variable(&self, j: usize) -> Vec<F::Elem> {
        self.linear_form(&[(j, self.field.one())])
    }

    /// Multiplies a degree-`s` element by a linear form; `None` past `top`.
    pub fn mul_linear(&self, s: usize, coords: &[F::Elem], form: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let next = self.pieces.get(s + 1)?;
        let full = self.to_full(s, coords);
        let mut out = vec![self.field.zero(); next.monomials.len()];
        for (c, x) in full.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (f, a) in form.iter().enumerate() {
                if self.field.is_zero(a) {
                    continue;
                }
                let mut m = self.pieces[s].monomials[c].clone();
                m[f] += 1;
                let i = next.index[&m];
                out[i] = self.field.mul_add(&out[i], x, a);
            }
        }
        Some(self.reduce_full(s + 1, &out))
    }

    pub fn mul_linear_pow(
        &self,
        s: usize,
        coords: &[F::Elem],
        form: &[F::Elem],
        power: usize,
    ) -> Option<Vec<F::Elem>> {
        let mut v = coords.to_vec();
        for k in 0..power {
            v = self.mul_linear(s + k, &v, form)?;
        }
        Some(v)
    }

    /// Product of a degree-`s` and a degree-`t` element.
    pub fn mul(&self, s: usize, a: &[F::Elem], t: usize, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let target = self.pieces.get(s + t)?;
        let (fa, fb) = (self.to_full(s, a), self.to_full(t, b));
        let mut out = vec![self.field.zero(); target.monomials.len()];
        for (i, x) in fa.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in fb.iter().enumerate() {
                if self.field.is_zero(y) {
                    continue;
                }
                let m: Vec<u8> = self.pieces[s].monomials[i]
                    .iter()
                    .zip(&self.pieces[t].monomials[j])
                    .map(|(p, q)| p + q)
                    .collect();
                let k = target.index[&m];
                out[k] = self.field.mul_add(&out[k], x, y);
            }
        }
        Some(self.reduce_full(s + t, &out))
    }

    /// Image of `prod x_j^{e_j}`; `None` past `top`.
    pub fn monomial(&self, exps: &[(usize, u32)]) -> Option<Vec<F::Elem>> {
        let mut v = self.one();
        let mut s = 0;
        for &(j, e) in exps {
            let form = self.variable(j);
            for _ in 0..e {
                v = self.mul_linear(s, &v, &form)?;
                s += 1;
            }
        }
        Some(v)
    }

    /// Image of the squarefree monomial `x^G`.
    pub fn face_monomial(&self, g: BitSet) -> Option<Vec<F::Elem>> {
        let exps: Vec<(usize, u32)> = g.iter().map(|j| (j, 1)).collect();
        self.monomial(&exps)
    }

    /// Orders exponent vectors as the pieces do (descending lex).
    pub fn monomial_order(a: &[u8], b: &[u8]) -> Ordering {
        b.cmp(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::{FiniteField, Rationals};
    use crate::lsop::SpecialLsop;
    use crate::linalg::is_zero_vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomial_enumeration_is_descending() {
        let ms = monomials_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0], vec![2, 0, 0]);
        assert_eq!(ms[5], vec![0, 0, 2]);
        assert!(ms.windows(2).all(|w| GradedAlgebra::<Rationals>::monomial_order(&w[0], &w[1]).is_lt()));
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert!(monomials_of_degree(0, 1).is_empty());
    }

    #[test]
    fn interior_triangle_over_f2_is_truncated_polynomial_ring() {
        let t = catalog::interior_point(3).unwrap();
        let f2 = FiniteField::prime(2).unwrap();
        let l = SpecialLsop::uniform(&t, &f2, &1).unwrap();
        let h = t.h_vector();
        let a = GradedAlgebra::new(f2, t.complex().clone(), &l.coeffs, 3, Some(&h), "A").unwrap();
        assert_eq!(a.hilbert(), vec![1, 1, 1, 0]);
        let w = t.vertex_index("w").unwrap();
        let x2 = a.monomial(&[(w, 2)]).unwrap();
        assert!(!is_zero_vec(a.field(), &x2));
        assert!(a.monomial(&[(w, 3)]).unwrap().is_empty());
    }

    #[test]
    fn figure1_and_cone_hilbert() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = catalog::figure1();
        let l = SpecialLsop::sample(&t, &Rationals, &mut rng, 3, 0).unwrap();
        let a = GradedAlgebra::new(Rationals, t.complex().clone(), &l.coeffs, 3, None, "A").unwrap();
        assert_eq!(a.hilbert(), vec![1, 2, 1, 0]);

        let t = catalog::interior_point(3).unwrap();
        let l = SpecialLsop::sample(&t, &Rationals, &mut rng, 3, 0).unwrap();
        let sphere = t.cone_sphere().unwrap();
        let theta_hat = l.theta_hat(&Rationals);
        let a = GradedAlgebra::new(Rationals, sphere.complex, &theta_hat, 3, None, "Â").unwrap();
        assert_eq!(a.hilbert(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn theta_acts_as_zero_and_variables_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f = FiniteField::new(3, 5).unwrap();
        let t = catalog::figure1();
        let l = SpecialLsop::sample(&t, &f, &mut rng, 11, 0).unwrap();
        let a = GradedAlgebra::new(f.clone(), t.complex().clone(), &l.coeffs, 3, Some(&t.h_vector()), "A").unwrap();
        for i in 0..3 {
            let coeffs: Vec<(usize, u64)> = (0..t.n()).map(|j| (j, *l.get(i, j))).collect();
            assert!(is_zero_vec(&f, &a.linear_form(&coeffs)));
        }
        for j in 0..t.n() {
            for k in 0..t.n() {
                let xj = a.variable(j);
                let xk = a.variable(k);
                for s in 0..2 {
                    for b in 0..a.dim(s) {
                        let mut e = a.zero(s);
                        e[b] = 1;
                        let jk = a.mul_linear(s + 1, &a.mul_linear(s, &e, &xk).unwrap(), &xj).unwrap();
                        let kj = a.mul_linear(s + 1, &a.mul_linear(s, &e, &xj).unwrap(), &xk).unwrap();
                        assert_eq!(jk, kj);
                    }
                }
            }
        }
    }

    #[test]
    fn product_matches_iterated_linear_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let t = catalog::interior_point(4).unwrap();
        let l = SpecialLsop::sample(&t, &Rationals, &mut rng, 5, 0).unwrap();
        let a = GradedAlgebra::new(Rationals, t.complex().clone(), &l.coeffs, 4, Some(&t.h_vector()), "A").unwrap();
        let w = t.vertex_index("w").unwrap();
        let x1 = a.monomial(&[(0, 1), (w, 1)]).unwrap();
        let x2 = a.monomial(&[(w, 1)]).unwrap();
        let direct = a.monomial(&[(0, 1), (w, 2)]).unwrap();
        assert_eq!(a.mul(2, &x1, 1, &x2).unwrap(), direct);
    }
}
