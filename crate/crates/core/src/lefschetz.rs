//! Weak and strong Lefschetz tests on local face modules.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::Triangulation;
use crate::error::Result;
use crate::field::{Field, SampleField};
use crate::linalg::{kernel, rank_of_rows, Matrix};
use crate::module::LocalModule;
use crate::specialize::{specialize, SpecializeOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LefschetzMode {
    Weak,
    Strong,
}

/// Outcome for one map `L^s → L^target`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeVerdict<E> {
    pub s: usize,
    pub target: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// Kernel vector in `L^s` coordinates when the map is not of full rank.
    pub witness: Option<Vec<E>>,
}

impl<E> DegreeVerdict<E> {
    pub fn full_rank(&self) -> bool {
        self.rank == self.source_dim.min(self.target_dim)
    }
}

#[derive(Clone, Debug)]
pub struct LefschetzReport<E> {
    pub mode: LefschetzMode,
    pub specializations: usize,
    pub forms_per_specialization: usize,
    pub degrees: Vec<DegreeVerdict<E>>,
}

impl<E> LefschetzReport<E> {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(DegreeVerdict::full_rank)
    }

    pub fn label(&self) -> &'static str {
        if self.holds() {
            "generic (sampled)"
        } else {
            "fails (witness)"
        }
    }

    pub fn degree(&self, s: usize) -> Option<&DegreeVerdict<E>> {
        self.degrees.iter().find(|v| v.s == s)
    }
}

/// Rank of `form^power: L^s → L^{s+power}` with a kernel witness.
pub fn map_verdict<F: Field>(
    module: &LocalModule<F>,
    s: usize,
    form: &[F::Elem],
    power: usize,
) -> DegreeVerdict<F::Elem> {
    let field = module.field();
    let target = s + power;
    let rows = module.power_map_rows(s, form, power);
    let cols = module.algebra().dim(target);
    let rank = rank_of_rows(field, cols, &rows);
    let (source_dim, target_dim) = (module.dim(s), module.dim(target));
    let witness = (rank < source_dim.min(target_dim)).then(|| {
        let transposed = Matrix::from_rows(
            source_dim,
            (0..cols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect(),
        );
        kernel(field, &transposed).into_iter().next().expect("rank deficit gives a kernel")
    });
    DegreeVerdict {
        s,
        target,
        source_dim,
        target_dim,
        rank,
        witness,
    }
}

/// `ℓ^{d-2s}: L^s → L^{d-s}` for every `s ≤ d/2`.
pub fn strong_verdicts<F: Field>(module: &LocalModule<F>, form: &[F::Elem]) -> Vec<DegreeVerdict<F::Elem>> {
    let d = module.top();
    (0..=d / 2).map(|s| map_verdict(module, s, form, d - 2 * s)).collect()
}

/// `u: L^s → L^{s+1}` for every `s < d`.
pub fn weak_verdicts<F: Field>(module: &LocalModule<F>, form: &[F::Elem]) -> Vec<DegreeVerdict<F::Elem>> {
    let d = module.top();
    (0..d).map(|s| map_verdict(module, s, form, 1)).collect()
}

/// Keeps the larger rank per degree; the first witness is retained while
/// the rank stays deficient.
fn merge<E: Clone>(acc: &mut Option<Vec<DegreeVerdict<E>>>, new: Vec<DegreeVerdict<E>>) {
    match acc {
        None => *acc = Some(new),
        Some(old) => {
            for (o, n) in old.iter_mut().zip(new) {
                if n.rank > o.rank {
                    *o = n;
                }
            }
        }
    }
}

/// Lefschetz test over `specializations` independent l.s.o.p.s (seeds
/// `seed, seed+1, ..`). Strong mode uses `ℓ`; weak mode uses `ℓ` and
/// `random_forms` further random linear forms per specialization.
pub fn lefschetz<F: SampleField>(
    t: &Triangulation,
    field: F,
    mode: LefschetzMode,
    seed: u64,
    specializations: usize,
    random_forms: usize,
) -> Result<LefschetzReport<F::Elem>> {
    let mut acc = None;
    for k in 0..specializations.max(1) {
        let spec = specialize(t, field.clone(), SpecializeOptions::new(seed.wrapping_add(k as u64)))?;
        let alg = spec.module.algebra();
        let ell = alg.linear_form(&spec.ell());
        match mode {
            LefschetzMode::Strong => merge(&mut acc, strong_verdicts(&spec.module, &ell)),
            LefschetzMode::Weak => {
                merge(&mut acc, weak_verdicts(&spec.module, &ell));
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64) ^ 0x5eed);
                for _ in 0..random_forms {
                    let u = spec.random_form(&mut rng, |r| field.sample_nonzero(r));
                    merge(&mut acc, weak_verdicts(&spec.module, &alg.linear_form(&u)));
                }
            }
        }
    }
    Ok(LefschetzReport {
        mode,
        specializations: specializations.max(1),
        forms_per_specialization: match mode {
            LefschetzMode::Strong => 1,
            LefschetzMode::Weak => random_forms + 1,
        },
        degrees: acc.unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::{FiniteField, Rationals};

    #[test]
    fn figure1_weak_fails_at_one() {
        let r = lefschetz(&catalog::figure1(), Rationals, LefschetzMode::Weak, 1, 2, 3).unwrap();
        let v = r.degree(1).unwrap();
        assert_eq!((v.rank, v.source_dim, v.target_dim), (0, 1, 1));
        assert!(v.witness.is_some());
        assert!(!r.holds());
    }

    #[test]
    fn gamma2_strong_char2_fails_with_rank_zero() {
        let f = FiniteField::new(2, 31).unwrap();
        let r = lefschetz(&catalog::gamma_t(2).unwrap(), f, LefschetzMode::Strong, 7, 3, 0).unwrap();
        let v = r.degree(2).unwrap();
        assert_eq!((v.rank, v.source_dim), (0, 1));
    }

    #[test]
    fn gamma2_strong_over_rationals_holds() {
        let r = lefschetz(&catalog::gamma_t(2).unwrap(), Rationals, LefschetzMode::Strong, 7, 3, 0).unwrap();
        assert!(r.holds());
        assert_eq!(r.label(), "generic (sampled)");
    }
}
