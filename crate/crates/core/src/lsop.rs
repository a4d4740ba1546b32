//! Special linear systems of parameters and their certificates.

use rand::RngCore;

use crate::bitset::BitSet;
use crate::complex::Triangulation;
use crate::error::{Error, Result};
use crate::field::{Field, SampleField};
use crate::linalg::{rank, Matrix};

/// Coefficients `a_{i,j}` of `θ_i = sum_j a_{i,j} x_j`, zero unless
/// `i ∈ σ(j)`. Rows are indexed by `V`, columns by the vertices of `Γ`.
#[derive(Clone, Debug)]
pub struct SpecialLsop<E> {
    pub coeffs: Matrix<E>,
    pub seed: u64,
    pub attempt: usize,
}

impl<E: Clone + PartialEq + std::fmt::Debug> SpecialLsop<E> {
    pub fn sample<F: SampleField<Elem = E>>(
        t: &Triangulation,
        field: &F,
        rng: &mut dyn RngCore,
        seed: u64,
        attempt: usize,
    ) -> Result<Self> {
        if !t.classify().quasi_geometric {
            return Err(Error::NotQuasiGeometric);
        }
        let mut coeffs = Matrix::from_elem(t.d(), t.n(), field.zero());
        for i in 0..t.d() {
            for j in 0..t.n() {
                if t.sigma_of_vertex(j).contains(i) {
                    coeffs.set(i, j, field.sample_nonzero(rng));
                }
            }
        }
        Ok(SpecialLsop {
            coeffs,
            seed,
            attempt,
        })
    }

    /// Every supported coefficient set to `value`.
    pub fn uniform<F: Field<Elem = E>>(t: &Triangulation, field: &F, value: &E) -> Result<Self> {
        if !t.classify().quasi_geometric {
            return Err(Error::NotQuasiGeometric);
        }
        let mut coeffs = Matrix::from_elem(t.d(), t.n(), field.zero());
        for i in 0..t.d() {
            for j in 0..t.n() {
                if t.sigma_of_vertex(j).contains(i) {
                    coeffs.set(i, j, value.clone());
                }
            }
        }
        Ok(SpecialLsop {
            coeffs,
            seed: 0,
            attempt: 0,
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        self.coeffs.get(i, j)
    }

    /// Each facet's coefficient columns are linearly independent.
    pub fn certify<F: Field<Elem = E>>(&self, t: &Triangulation, field: &F) -> Result<()> {
        for f in t.facets() {
            let cols: Vec<usize> = f.to_vec();
            let sub = self.coeffs.select_columns(&cols);
            if rank(field, &sub) < cols.len() {
                return Err(Error::CertificateFailed(cols));
            }
        }
        Ok(())
    }

    /// `θ̂_i = θ_i - x_c` with the cone vertex as the last column.
    pub fn theta_hat<F: Field<Elem = E>>(&self, field: &F) -> Matrix<E> {
        let (d, n) = (self.coeffs.rows(), self.coeffs.cols());
        let mut m = Matrix::from_elem(d, n + 1, field.zero());
        for i in 0..d {
            for j in 0..n {
                m.set(i, j, self.coeffs.get(i, j).clone());
            }
            m.set(i, n, field.neg(&field.one()));
        }
        m
    }
}

/// Relative l.s.o.p. on `lk_Γ(E)`: the elements of `V ∖ σ(E)`, in
/// increasing order, are assigned rows `0, 1, ..`; row `f(i)` is supported
/// on link vertices `j` with `i ∈ σ(j)`. The remaining rows are generic on
/// all link vertices.
pub fn sample_relative<F: SampleField>(
    t: &Triangulation,
    e: BitSet,
    link_vertices: &[usize],
    field: &F,
    rng: &mut dyn RngCore,
) -> Result<Matrix<F::Elem>> {
    let sigma_e = t.sigma(e).ok_or_else(|| Error::NotAFace(t.face_ids(e)))?;
    let rows = t.d() - e.len();
    let outside: Vec<usize> = t.full_v().difference(sigma_e).iter().collect();
    let mut m = Matrix::from_elem(rows, t.n(), field.zero());
    for (r, &i) in outside.iter().enumerate() {
        for &j in link_vertices {
            if t.sigma_of_vertex(j).contains(i) {
                m.set(r, j, field.sample_nonzero(rng));
            }
        }
    }
    for r in outside.len()..rows {
        for &j in link_vertices {
            m.set(r, j, field.sample_nonzero(rng));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::{FiniteField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn forced_unit_lsop_over_f2() {
        let t = catalog::interior_point(3).unwrap();
        let f2 = FiniteField::prime(2).unwrap();
        let l = SpecialLsop::uniform(&t, &f2, &1).unwrap();
        l.certify(&t, &f2).unwrap();
        let w = t.vertex_index("w").unwrap();
        for i in 0..3 {
            assert_eq!(*l.get(i, w), 1);
            assert_eq!(*l.get(i, i), 1);
            assert_eq!(*l.get(i, (i + 1) % 3), 0);
        }
    }

    #[test]
    fn figure1_generic_certificate() {
        let t = catalog::figure1();
        for seed in 0..5 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let l = SpecialLsop::sample(&t, &Rationals, &mut rng, seed, 0).unwrap();
            l.certify(&t, &Rationals).unwrap();
        }
    }

    #[test]
    fn non_quasi_geometric_rejected() {
        let edge = Triangulation::from_ids(
            2,
            &[("a", &[1]), ("b", &[1])],
            &[&["a", "b"]],
            &[(&["a", "b"], &[1, 2])],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            SpecialLsop::sample(&edge, &Rationals, &mut rng, 0, 0),
            Err(Error::NotQuasiGeometric)
        ));
    }
}
