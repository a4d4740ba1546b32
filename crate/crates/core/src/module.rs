//! The local face module `L_θ(Γ)` and its relative version.

use crate::algebra::GradedAlgebra;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel, rank_of_rows, solve, Matrix, RowSpace};
use crate::poly::IntPolynomial;

/// Graded subspace of a [`GradedAlgebra`] spanned by images of squarefree
/// face monomials, with a basis chosen greedily in face order.
pub struct LocalModule<F: Field> {
    algebra: GradedAlgebra<F>,
    basis: Vec<Vec<Vec<F::Elem>>>,
    basis_faces: Vec<Vec<BitSet>>,
}

impl<F: Field> LocalModule<F> {
    /// `generators` are the faces whose monomials span the module, in the
    /// order they should be tried.
    pub fn new(
        algebra: GradedAlgebra<F>,
        generators: &[BitSet],
        expected: Option<&IntPolynomial>,
        what: &'static str,
    ) -> Result<Self> {
        let top = algebra.top();
        let mut spaces: Vec<RowSpace<F::Elem>> = (0..=top).map(|s| RowSpace::new(algebra.dim(s))).collect();
        let mut basis = vec![Vec::new(); top + 1];
        let mut basis_faces = vec![Vec::new(); top + 1];
        for &g in generators {
            let s = g.len();
            if s > top {
                continue;
            }
            let img = algebra.face_monomial(g).expect("degree within top");
            if spaces[s].insert(algebra.field(), &img) {
                basis[s].push(img);
                basis_faces[s].push(g);
            }
        }
        let module = LocalModule {
            algebra,
            basis,
            basis_faces,
        };
        if let Some(h) = expected {
            let found = module.hilbert();
            let want: Vec<i64> = (0..=top).map(|s| h.coeff(s)).collect();
            if found != want {
                return Err(Error::HilbertMismatch {
                    what,
                    expected: want,
                    found,
                });
            }
        }
        Ok(module)
    }

    pub fn algebra(&self) -> &GradedAlgebra<F> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn top(&self) -> usize {
        self.algebra.top()
    }

    pub fn dim(&self, s: usize) -> usize {
        self.basis.get(s).map_or(0, Vec::len)
    }

    pub fn hilbert(&self) -> Vec<i64> {
        self.basis.iter().map(|b| b.len() as i64).collect()
    }

    /// Basis of `L^s` in coordinates of `A^s`.
    pub fn basis(&self, s: usize) -> &[Vec<F::Elem>] {
        self.basis.get(s).map_or(&[], Vec::as_slice)
    }

    /// The face `G` with `b = x^G` for each basis element of `L^s`.
    pub fn basis_faces(&self, s: usize) -> &[BitSet] {
        self.basis_faces.get(s).map_or(&[], Vec::as_slice)
    }

    /// Expands `L^s` coordinates into `A^s` coordinates.
    pub fn to_algebra(&self, s: usize, coords: &[F::Elem]) -> Vec<F::Elem> {
        let field = self.field();
        let mut v = self.algebra.zero(s);
        for (c, b) in coords.iter().zip(self.basis(s)) {
            for (acc, x) in v.iter_mut().zip(b) {
                *acc = field.mul_add(acc, c, x);
            }
        }
        v
    }

    /// Coordinates in the `L^s` basis of an element of `A^s`, when it lies
    /// in `L^s`.
    pub fn coordinates(&self, s: usize, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let field = self.field();
        let k = self.dim(s);
        if k == 0 {
            return crate::linalg::is_zero_vec(field, v).then(Vec::new);
        }
        let m = Matrix::from_rows(k, (0..v.len()).map(|i| self.basis(s).iter().map(|b| b[i].clone()).collect()).collect());
        solve(field, &m, v).particular().map(<[F::Elem]>::to_vec)
    }

    /// Images of the `L^s` basis under multiplication by `form^power`, as
    /// rows in `A^{s + power}` coordinates.
    pub fn power_map_rows(&self, s: usize, form: &[F::Elem], power: usize) -> Vec<Vec<F::Elem>> {
        self.basis(s)
            .iter()
            .map(|b| {
                self.algebra
                    .mul_linear_pow(s, b, form, power)
                    .unwrap_or_default()
            })
            .collect()
    }

    /// Vertex slots of the underlying complex.
    fn vertices(&self) -> Vec<usize> {
        self.algebra.complex().vertices()
    }

    /// Basis of `Soc L^s = {u : x_j u = 0 for all j}` in `L^s` coordinates.
    pub fn socle(&self, s: usize) -> Vec<Vec<F::Elem>> {
        let k = self.dim(s);
        if k == 0 {
            return Vec::new();
        }
        let identity = || {
            (0..k)
                .map(|i| {
                    let mut v = vec![self.field().zero(); k];
                    v[i] = self.field().one();
                    v
                })
                .collect()
        };
        if s >= self.top() {
            return identity();
        }
        let mut columns: Vec<Vec<F::Elem>> = Vec::new();
        for j in self.vertices() {
            let form = self.algebra.variable(j);
            let rows = self.power_map_rows(s, &form, 1);
            for i in 0..self.algebra.dim(s + 1) {
                columns.push(rows.iter().map(|r| r[i].clone()).collect());
            }
        }
        if columns.is_empty() {
            return identity();
        }
        kernel(self.field(), &Matrix::from_rows(k, columns))
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|s| self.socle(s).len()).collect()
    }

    /// `dim L^s / (sum_j x_j L^{s-1})` for each `s`.
    pub fn generator_degrees(&self) -> Vec<usize> {
        (0..=self.top())
            .map(|s| {
                if s == 0 {
                    return self.dim(0);
                }
                let mut rows = Vec::new();
                for j in self.vertices() {
                    rows.extend(self.power_map_rows(s - 1, &self.algebra.variable(j), 1));
                }
                self.dim(s) - rank_of_rows(self.field(), self.algebra.dim(s), &rows)
            })
            .collect()
    }

    /// Rank of the span of the given face monomials of size `s` inside
    /// `L^s`; equals `dim L^s` exactly when they span.
    pub fn span_rank(&self, s: usize, faces: &[BitSet]) -> usize {
        let rows: Vec<Vec<F::Elem>> = faces
            .iter()
            .filter(|g| g.len() == s)
            .filter_map(|&g| self.algebra.face_monomial(g))
            .collect();
        rank_of_rows(self.field(), self.algebra.dim(s), &rows)
    }

    /// Rank of the span of `x_j x^G` over vertices `j` and the given faces of
    /// size `s - 1`.
    pub fn vertex_times_face_rank(&self, s: usize, faces: &[BitSet]) -> usize {
        let mut rows = Vec::new();
        for &g in faces.iter().filter(|g| g.len() + 1 == s) {
            let img = self.algebra.face_monomial(g).expect("degree within top");
            for j in self.vertices() {
                if let Some(v) = self.algebra.mul_linear(s - 1, &img, &self.algebra.variable(j)) {
                    rows.push(v);
                }
            }
        }
        rank_of_rows(self.field(), self.algebra.dim(s), &rows)
    }
}
