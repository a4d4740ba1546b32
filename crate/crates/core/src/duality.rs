//! Orientation of `Γ̂`, the normalized degree map on `A_θ̂(Γ̂)` and Stanley's
//! bilinear form on `L_θ(Γ)`.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, RngCore};

use crate::algebra::GradedAlgebra;
use crate::bitset::BitSet;
use crate::complex::{SimplicialComplex, Triangulation};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{determinant, rank, Matrix};
use crate::lsop::SpecialLsop;
use crate::specialize::Specialization;

/// Compatible facet signs of a closed pseudomanifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub facets: Vec<BitSet>,
    pub signs: Vec<i8>,
}

impl Orientation {
    pub fn sign(&self, f: BitSet) -> Option<i8> {
        self.facets.iter().position(|&g| g == f).map(|i| self.signs[i])
    }

    /// Sign induced on the ridge `F ∖ {v}` by the facet `F`.
    fn induced(sign: i8, f: BitSet, v: usize) -> i8 {
        let pos = f.position(v).expect("vertex of the facet");
        if pos % 2 == 0 {
            sign
        } else {
            -sign
        }
    }

    /// Whether every ridge receives opposite signs from its two facets.
    pub fn is_compatible(&self, complex: &SimplicialComplex) -> bool {
        complex.ridge_incidence().into_iter().all(|(ridge, fs)| {
            if fs.len() != 2 {
                return false;
            }
            let signs: Vec<i8> = fs
                .iter()
                .map(|&f| {
                    let v = f.difference(ridge).iter().next().expect("facet covers ridge");
                    Orientation::induced(self.sign(f).expect("facet"), f, v)
                })
                .collect();
            signs[0] == -signs[1]
        })
    }
}

/// Breadth-first sign propagation from the lexicographically least facet.
pub fn orient(complex: &SimplicialComplex) -> Result<Orientation> {
    let facets = complex.facets();
    if !complex.is_closed_pseudomanifold() {
        return Err(Error::Input("coned complex is not a closed pseudomanifold".into()));
    }
    let index: HashMap<BitSet, usize> = facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let incidence = complex.ridge_incidence();
    let mut signs: Vec<Option<i8>> = vec![None; facets.len()];
    signs[0] = Some(1);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let f = facets[i];
        let s = signs[i].expect("queued facets are signed");
        for v in f.iter() {
            let ridge = f.without(v);
            for &g in &incidence[&ridge] {
                if g == f {
                    continue;
                }
                let w = g.difference(ridge).iter().next().expect("facet covers ridge");
                let want = -Orientation::induced(s, f, v);
                let sg = if Orientation::induced(1, g, w) == want { 1 } else { -1 };
                let k = index[&g];
                match signs[k] {
                    None => {
                        signs[k] = Some(sg);
                        queue.push_back(k);
                    }
                    Some(existing) if existing != sg => {
                        return Err(Error::Input("coned complex is not orientable".into()));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    let signs = signs
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::Input("coned complex is disconnected".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Orientation { facets, signs })
}

/// `A_θ̂(Γ̂)` with its orientation and normalized degree map.
pub struct Sphere<F: Field> {
    pub algebra: GradedAlgebra<F>,
    pub cone: usize,
    pub orientation: Orientation,
    /// `deg` of the basis element of the one-dimensional top piece.
    deg_basis: F::Elem,
    pub facets_checked: usize,
}

impl<F: Field> Sphere<F> {
    pub fn build(t: &Triangulation, lsop: &SpecialLsop<F::Elem>, field: F) -> Result<Self> {
        let d = t.d();
        let coned = t.cone_sphere()?;
        let h = coned.complex.h_polynomial(d)?;
        let theta_hat = lsop.theta_hat(&field);
        let algebra = GradedAlgebra::new(field.clone(), coned.complex, &theta_hat, d, Some(&h), "A_θ̂(Γ̂)")?;
        let orientation = orient(algebra.complex())?;
        let mut prescribed = Vec::with_capacity(orientation.facets.len());
        for (&f, &s) in orientation.facets.iter().zip(&orientation.signs) {
            let cols = f.to_vec();
            let det = determinant(&field, &theta_hat.select_columns(&cols));
            let inv = field.inv(&det).ok_or_else(|| Error::CertificateFailed(cols.clone()))?;
            let value = if s > 0 { inv } else { field.neg(&inv) };
            let img = algebra.face_monomial(f).expect("facets have size d");
            prescribed.push((img[0].clone(), value));
        }
        let (c0, v0) = &prescribed[0];
        let deg_basis = field
            .div(v0, c0)
            .ok_or_else(|| Error::Consistency("reference facet monomial vanishes in the top degree".into()))?;
        for (k, (c, v)) in prescribed.iter().enumerate() {
            if field.mul(c, &deg_basis) != *v {
                return Err(Error::Consistency(format!(
                    "degree map disagrees with the facet normalization on {:?}",
                    orientation.facets[k]
                )));
            }
        }
        Ok(Sphere {
            algebra,
            cone: coned.cone,
            facets_checked: prescribed.len(),
            orientation,
            deg_basis,
        })
    }

    /// `deg` of a top-degree element.
    pub fn degree(&self, top: &[F::Elem]) -> F::Elem {
        self.algebra.field().mul(&top[0], &self.deg_basis)
    }

    /// `deg(x^F)` for a facet, from the stored normalization.
    pub fn facet_degree(&self, f: BitSet) -> Option<F::Elem> {
        let img = self.algebra.face_monomial(f)?;
        Some(self.degree(&img))
    }
}

/// Monomial `prod x_j^{e_j}` by vertex index.
pub type Monomial = Vec<(usize, u32)>;

pub fn monomial_degree(m: &[(usize, u32)]) -> usize {
    m.iter().map(|&(_, e)| e as usize).sum()
}

#[derive(Clone, Debug)]
pub struct GramMatrix<E> {
    pub s: usize,
    pub w: usize,
    pub entries: Matrix<E>,
    pub basis: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsotropyResult<E> {
    pub value: E,
    pub isotropic: bool,
}

impl<F: Field> Specialization<F> {
    pub fn sphere(&self) -> Result<&Sphere<F>> {
        self.sphere
            .as_ref()
            .ok_or_else(|| Error::Consistency("specialization built without Γ̂".into()))
    }

    /// `ℓ = sum_j x_j` over the vertices of `Γ`.
    pub fn ell(&self) -> Vec<(usize, F::Elem)> {
        let field = self.module.field();
        (0..self.n).map(|j| (j, field.one())).collect()
    }

    /// A nonzero-coefficient random linear form on the vertices of `Γ`.
    pub fn random_form<G>(&self, rng: &mut dyn RngCore, sample: G) -> Vec<(usize, F::Elem)>
    where
        G: Fn(&mut dyn RngCore) -> F::Elem,
    {
        (0..self.n).map(|j| (j, sample(rng))).collect()
    }

    /// Lift of an `L^s` element to `A_θ̂^s(Γ̂)` through its interior-face
    /// monomial representatives.
    pub fn lift(&self, s: usize, coords: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let sphere = self.sphere()?;
        let field = sphere.algebra.field();
        let mut v = sphere.algebra.zero(s);
        for (c, &g) in coords.iter().zip(self.module.basis_faces(s)) {
            if field.is_zero(c) {
                continue;
            }
            let img = sphere.algebra.face_monomial(g).expect("degree within top");
            for (acc, x) in v.iter_mut().zip(&img) {
                *acc = field.mul_add(acc, c, x);
            }
        }
        Ok(v)
    }

    /// `B(u, v)` for `u ∈ L^s`, `v ∈ L^{s'}` in module coordinates; zero
    /// unless `s + s' = d`.
    pub fn bilinear(&self, s: usize, u: &[F::Elem], s2: usize, v: &[F::Elem]) -> Result<F::Elem> {
        let sphere = self.sphere()?;
        let field = sphere.algebra.field();
        if s + s2 != self.d {
            return Ok(field.zero());
        }
        let prod = sphere
            .algebra
            .mul(s, &self.lift(s, u)?, s2, &self.lift(s2, v)?)
            .expect("degree d is built");
        Ok(sphere.degree(&prod))
    }

    /// Checks that a monomial lies in `ann(x_c)` through its support.
    fn check_interior_support(&self, t: &Triangulation, m: &[(usize, u32)]) -> Result<()> {
        let support = BitSet::from_indices(m.iter().filter(|&&(_, e)| e > 0).map(|&(j, _)| j));
        if !t.is_interior(support) {
            return Err(Error::Input(format!(
                "monomial support {:?} is not an interior face",
                t.face_ids(support)
            )));
        }
        Ok(())
    }

    /// `[B(b_i, u^w b_j)]` on the given monomials (default: the `L^s` basis)
    /// with `u` defaulting to `ℓ`.
    pub fn gram(
        &self,
        t: &Triangulation,
        s: usize,
        w: usize,
        u: Option<&[(usize, F::Elem)]>,
        basis: Option<Vec<Monomial>>,
    ) -> Result<GramMatrix<F::Elem>> {
        let sphere = self.sphere()?;
        let alg = &sphere.algebra;
        let field = alg.field();
        if 2 * s + w != self.d {
            return Err(Error::DimensionMismatch(format!(
                "2s + w = {} but d = {}",
                2 * s + w,
                self.d
            )));
        }
        let basis = match basis {
            Some(b) => b,
            None => self
                .module
                .basis_faces(s)
                .iter()
                .map(|g| g.iter().map(|j| (j, 1)).collect())
                .collect(),
        };
        let mut lifts = Vec::with_capacity(basis.len());
        for m in &basis {
            if monomial_degree(m) != s {
                return Err(Error::DimensionMismatch(format!("monomial of degree {} in L^{s}", monomial_degree(m))));
            }
            self.check_interior_support(t, m)?;
            lifts.push(alg.monomial(m).expect("degree within top"));
        }
        let ell = self.ell();
        let form = alg.linear_form(u.unwrap_or(&ell));
        let k = basis.len();
        let mut entries = Matrix::from_elem(k, k, field.zero());
        for j in 0..k {
            let right = alg.mul_linear_pow(s, &lifts[j], &form, w).expect("degree within top");
            for i in 0..k {
                let prod = alg.mul(s, &lifts[i], s + w, &right).expect("degree d is built");
                entries.set(i, j, sphere.degree(&prod));
            }
        }
        Ok(GramMatrix {
            s,
            w,
            entries,
            basis,
        })
    }

    /// Rank of `[B(b_i, b'_k)]` on `L^s × L^{d-s}`.
    pub fn pairing_rank(&self, s: usize) -> Result<usize> {
        let (p, q) = (self.module.dim(s), self.module.dim(self.d - s));
        let field = self.module.field();
        if p == 0 || q == 0 {
            return Ok(0);
        }
        let unit = |k: usize, i: usize| {
            let mut v = vec![field.zero(); k];
            v[i] = field.one();
            v
        };
        let mut m = Matrix::from_elem(p, q, field.zero());
        for i in 0..p {
            for k in 0..q {
                m.set(i, k, self.bilinear(s, &unit(p, i), self.d - s, &unit(q, k))?);
            }
        }
        Ok(rank(field, &m))
    }

    /// `B(x_j u, v) = B(u, x_j v)` on random basis elements; returns the
    /// number of checks performed.
    pub fn invariance_checks(&self, rng: &mut dyn RngCore, count: usize) -> Result<usize> {
        let d = self.d;
        let field = self.module.field();
        let degrees: Vec<usize> = (0..d)
            .filter(|&s| self.module.dim(s) > 0 && self.module.dim(d - 1 - s) > 0)
            .collect();
        if degrees.is_empty() {
            return Ok(0);
        }
        let alg = self.module.algebra();
        let times = |s: usize, coords: &[F::Elem], j: usize| -> Result<Vec<F::Elem>> {
            let img = alg
                .mul_linear(s, &self.module.to_algebra(s, coords), &alg.variable(j))
                .expect("degree within top");
            self.module
                .coordinates(s + 1, &img)
                .ok_or_else(|| Error::Consistency(format!("x_{j} maps L^{s} outside L^{}", s + 1)))
        };
        for _ in 0..count {
            let s = degrees[rng.gen_range(0..degrees.len())];
            let s2 = d - 1 - s;
            let j = rng.gen_range(0..self.n);
            let u: Vec<F::Elem> = (0..self.module.dim(s)).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
            let v: Vec<F::Elem> = (0..self.module.dim(s2)).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
            let left = self.bilinear(s + 1, &times(s, &u, j)?, s2, &v)?;
            let right = self.bilinear(s, &u, s2 + 1, &times(s2, &v, j)?)?;
            if left != right {
                return Err(Error::Consistency(format!(
                    "B(x_{j}·u, v) ≠ B(u, x_{j}·v) for u ∈ L^{s}"
                )));
            }
        }
        Ok(count)
    }
}

/// `vᵀ G v` and whether it vanishes.
pub fn isotropy_check<F: Field>(field: &F, gram: &GramMatrix<F::Elem>, v: &[F::Elem]) -> Result<IsotropyResult<F::Elem>> {
    if v.len() != gram.entries.rows() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a {}×{} Gram matrix",
            v.len(),
            gram.entries.rows(),
            gram.entries.cols()
        )));
    }
    if v.iter().all(|x| field.is_zero(x)) {
        return Err(Error::Input("isotropy check needs a nonzero vector".into()));
    }
    let mut value = field.zero();
    for (i, a) in v.iter().enumerate() {
        for (j, b) in v.iter().enumerate() {
            let ab = field.mul(a, b);
            value = field.mul_add(&value, &ab, gram.entries.get(i, j));
        }
    }
    let isotropic = field.is_zero(&value);
    Ok(IsotropyResult { value, isotropic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn zero_sphere_signs() {
        let s0 = SimplicialComplex::from_generators(2, [BitSet::singleton(0), BitSet::singleton(1)]);
        let o = orient(&s0).unwrap();
        assert_eq!(o.signs, vec![1, -1]);
        assert!(o.is_compatible(&s0));
    }

    #[test]
    fn coned_spheres_orient() {
        for (t, count) in [(catalog::interior_point(3).unwrap(), 6), (catalog::figure1(), 8)] {
            let c = t.cone_sphere().unwrap().complex;
            let o = orient(&c).unwrap();
            assert_eq!(o.facets.len(), count);
            assert!(o.is_compatible(&c));
            assert_eq!(o.signs[0], 1);
        }
    }

    #[test]
    fn non_pseudomanifold_rejected() {
        let path = SimplicialComplex::from_generators(3, [BitSet::from_indices([0, 1]), BitSet::from_indices([1, 2])]);
        assert!(orient(&path).is_err());
    }
}
