//! Homology-ball validation of triangulations by boundary-matrix ranks.

use serde::Serialize;

use super::triangulation::{v_set_elements, Triangulation};
use crate::bitset::BitSet;
use crate::error::Result;
use crate::field::{Field, FieldSpec, FieldVisitor, SampleField};
use crate::linalg::{rank, zeros};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetVerdict {
    pub u: Vec<usize>,
    /// Reduced Betti numbers of `Γ_U`, index `k` is dimension `k - 1`.
    pub reduced_betti: Vec<usize>,
    /// Betti numbers of `(Γ_U, B_U)` by face size.
    pub relative_betti: Vec<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub field: String,
    pub subsets: Vec<SubsetVerdict>,
}

impl HomologyReport {
    pub fn passed(&self) -> bool {
        self.subsets.iter().all(|s| s.passed)
    }

    pub fn failures(&self) -> Vec<Vec<usize>> {
        self.subsets.iter().filter(|s| !s.passed).map(|s| s.u.clone()).collect()
    }
}

/// Betti numbers of the chain complex spanned by `faces`, where a face of
/// size `k` sits in degree `k` and boundaries drop faces outside the list.
fn betti<F: Field>(field: &F, faces: &[BitSet], top: usize) -> Vec<usize> {
    let by_size: Vec<Vec<BitSet>> = (0..=top)
        .map(|k| faces.iter().copied().filter(|f| f.len() == k).collect())
        .collect();
    // ranks[k] = rank of ∂: C_k -> C_{k-1}
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let (rows, cols) = (&by_size[k - 1], &by_size[k]);
        if rows.is_empty() || cols.is_empty() {
            continue;
        }
        let mut m = zeros(field, rows.len(), cols.len());
        for (j, f) in cols.iter().enumerate() {
            for (pos, v) in f.iter().enumerate() {
                if let Some(i) = rows.iter().position(|r| *r == f.without(v)) {
                    let s = if pos % 2 == 0 { field.one() } else { field.neg(&field.one()) };
                    m.set(i, j, s);
                }
            }
        }
        ranks[k] = rank(field, &m);
    }
    (0..=top)
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

pub fn homology_validate<F: Field>(t: &Triangulation, field: &F) -> HomologyReport {
    let top = t.d();
    let mut subsets = Vec::new();
    let mut all: Vec<BitSet> = t.full_v().subsets().collect();
    all.sort_by(BitSet::cmp_graded_lex);
    for u in all {
        let gamma_u: Vec<BitSet> = t
            .faces_with_sigma()
            .filter(|&(_, s)| s.is_subset(u))
            .map(|(f, _)| f)
            .collect();
        let interior: Vec<BitSet> = t
            .faces_with_sigma()
            .filter(|&(_, s)| s == u)
            .map(|(f, _)| f)
            .collect();
        let reduced_betti = betti(field, &gamma_u, top);
        let relative_betti = betti(field, &interior, top);
        let passed = if u.is_empty() {
            gamma_u == [BitSet::EMPTY]
        } else {
            reduced_betti.iter().all(|&b| b == 0)
                && relative_betti
                    .iter()
                    .enumerate()
                    .all(|(k, &b)| b == usize::from(k == u.len()))
        };
        subsets.push(SubsetVerdict {
            u: v_set_elements(u),
            reduced_betti,
            relative_betti,
            passed,
        });
    }
    HomologyReport {
        field: field.describe(),
        subsets,
    }
}

struct Validate<'a>(&'a Triangulation);

impl FieldVisitor for Validate<'_> {
    type Output = HomologyReport;
    fn visit<F: SampleField>(self, field: F) -> HomologyReport {
        homology_validate(self.0, &field)
    }
}

/// Validation over the prime field of the spec's characteristic (or ℚ).
pub fn homology_validate_spec(t: &Triangulation, spec: FieldSpec) -> Result<HomologyReport> {
    let prime = FieldSpec::new(spec.characteristic(), Some(1))?;
    prime.dispatch(Validate(t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn corpus_passes() {
        for t in [
            catalog::interior_point(3).unwrap(),
            catalog::figure1(),
            catalog::trivial(3).unwrap(),
        ] {
            assert!(homology_validate(&t, &Rationals).passed());
            assert!(homology_validate(&t, &FiniteField::prime(2).unwrap()).passed());
        }
    }

    #[test]
    fn doctored_figure1_fails_at_23() {
        let t = catalog::figure1_without_override();
        let report = homology_validate(&t, &Rationals);
        assert!(report.failures().contains(&vec![2, 3]));
    }
}
