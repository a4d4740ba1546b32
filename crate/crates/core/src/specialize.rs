//! Specializing the generic l.s.o.p.: sample, certify, build, and resample
//! when the Hilbert functions come out wrong.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::bitset::BitSet;
use crate::complex::Triangulation;
use crate::duality::Sphere;
use crate::error::{Error, Result};
use crate::field::{Field, SampleField};
use crate::lsop::{sample_relative, SpecialLsop};
use crate::module::LocalModule;

pub const DEFAULT_ATTEMPTS: usize = 8;

#[derive(Clone, Copy, Debug)]
pub struct SpecializeOptions {
    pub seed: u64,
    pub max_attempts: usize,
    pub with_sphere: bool,
}

impl SpecializeOptions {
    pub fn new(seed: u64) -> Self {
        SpecializeOptions {
            seed,
            max_attempts: DEFAULT_ATTEMPTS,
            with_sphere: false,
        }
    }

    pub fn with_sphere(mut self) -> Self {
        self.with_sphere = true;
        self
    }
}

/// One specialization `θ` with `A_θ(Γ)`, `L_θ(Γ)` and optionally `A_θ̂(Γ̂)`.
pub struct Specialization<F: Field> {
    pub lsop: SpecialLsop<F::Elem>,
    pub module: LocalModule<F>,
    pub sphere: Option<Sphere<F>>,
    pub d: usize,
    pub n: usize,
    pub attempts: usize,
}

/// Builds everything for a fixed `θ`, without resampling.
pub fn specialize_with<F: Field>(
    t: &Triangulation,
    field: F,
    lsop: SpecialLsop<F::Elem>,
    with_sphere: bool,
) -> Result<Specialization<F>> {
    lsop.certify(t, &field)?;
    let d = t.d();
    let h = t.h_vector();
    let algebra = GradedAlgebra::new(field.clone(), t.complex().clone(), &lsop.coeffs, d, Some(&h), "A_θ(Γ)")?;
    let ell = t.local_h(crate::complex::LocalHMethod::Excess);
    let module = LocalModule::new(algebra, &t.interior_faces(), Some(&ell), "L_θ(Γ)")?;
    let sphere = if with_sphere {
        Some(Sphere::build(t, &lsop, field)?)
    } else {
        None
    };
    Ok(Specialization {
        lsop,
        module,
        sphere,
        d,
        n: t.n(),
        attempts: 1,
    })
}

/// Samples special l.s.o.p.s from `seed` until one passes every check.
pub fn specialize<F: SampleField>(t: &Triangulation, field: F, opts: SpecializeOptions) -> Result<Specialization<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last = None;
    for attempt in 0..opts.max_attempts {
        let lsop = SpecialLsop::sample(t, &field, &mut rng, opts.seed, attempt)?;
        match specialize_with(t, field.clone(), lsop, opts.with_sphere) {
            Ok(mut spec) => {
                spec.attempts = attempt + 1;
                return Ok(spec);
            }
            Err(e) if e.is_resample_signal() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::ExhaustedRetries {
        attempts: opts.max_attempts,
        last: last.map_or_else(String::new, |e| e.to_string()),
    })
}

/// `L_θ(Γ, E)` inside `A_θ(lk_Γ(E))` for a sampled relative l.s.o.p.
pub fn relative_module<F: SampleField>(
    t: &Triangulation,
    e: BitSet,
    field: F,
    opts: SpecializeOptions,
) -> Result<LocalModule<F>> {
    let link = t.link(e)?;
    let top = t.d() - e.len();
    let h = link.complex.h_polynomial(top)?;
    let expected = t.relative_local_h(e)?;
    let vertices = link.complex.vertices();
    let full = t.full_v();
    let generators: Vec<BitSet> = link
        .complex
        .faces()
        .iter()
        .copied()
        .filter(|&g| link.carrier(g) == Some(full))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut last = None;
    for _ in 0..opts.max_attempts {
        let theta = sample_relative(t, e, &vertices, &field, &mut rng)?;
        let built = GradedAlgebra::new(field.clone(), link.complex.clone(), &theta, top, Some(&h), "A_θ(lk E)")
            .and_then(|a| LocalModule::new(a, &generators, Some(&expected), "L_θ(Γ, E)"));
        match built {
            Ok(m) => return Ok(m),
            Err(e) if e.is_resample_signal() => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(Error::ExhaustedRetries {
        attempts: opts.max_attempts,
        last: last.map_or_else(String::new, |e| e.to_string()),
    })
}
