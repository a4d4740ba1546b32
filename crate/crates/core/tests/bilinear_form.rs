use localface::catalog;
use localface::duality::isotropy_check;
use localface::field::{Field, FiniteField, Rationals};
use localface::lsop::SpecialLsop;
use localface::specialize::{specialize, specialize_with, SpecializeOptions};
use localface::Triangulation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w(t: &Triangulation, k: usize) -> usize {
    t.vertex_index(&format!("w_{k}")).unwrap()
}

#[test]
fn interior_triangle_hr_form_is_nonzero() {
    let t = catalog::interior_point(3).unwrap();
    for seed in 0..3 {
        let spec = specialize(&t, Rationals, SpecializeOptions::new(seed).with_sphere()).unwrap();
        let g = spec.gram(&t, 1, 1, None, None).unwrap();
        assert_eq!(g.entries.rows(), 1);
        let r = isotropy_check(&Rationals, &g, &[Rationals.one()]).unwrap();
        assert!(!r.isotropic);
    }
    let f = FiniteField::new(2, 31).unwrap();
    for seed in 0..3 {
        let spec = specialize(&t, f.clone(), SpecializeOptions::new(seed).with_sphere()).unwrap();
        let g = spec.gram(&t, 1, 1, None, None).unwrap();
        assert!(!f.is_zero(g.entries.get(0, 0)));
    }
}

#[test]
fn unit_lsop_over_f2_kills_ell() {
    let t = catalog::interior_point(3).unwrap();
    let f2 = FiniteField::prime(2).unwrap();
    let spec = specialize_with(&t, f2.clone(), SpecialLsop::uniform(&t, &f2, &1).unwrap(), true).unwrap();
    let g = spec.gram(&t, 1, 1, None, None).unwrap();
    assert_eq!(*g.entries.get(0, 0), 0);
    let w = t.vertex_index("w").unwrap();
    let g = spec.gram(&t, 1, 1, Some(&[(w, 1)]), None).unwrap();
    assert_eq!(*g.entries.get(0, 0), 1);
}

#[test]
fn gamma2_middle_degree_form_has_isotropic_basis_vectors() {
    let t = catalog::gamma_t(2).unwrap();
    let (w1, w2) = (w(&t, 1), w(&t, 2));
    let basis = vec![vec![(w1, 2), (w2, 1)], vec![(w1, 1), (w2, 2)]];
    for seed in 0..2 {
        let spec = specialize(&t, Rationals, SpecializeOptions::new(seed).with_sphere()).unwrap();
        let g = spec.gram(&t, 3, 0, None, Some(basis.clone())).unwrap();
        assert!(Rationals.is_zero(g.entries.get(0, 0)));
        assert!(Rationals.is_zero(g.entries.get(1, 1)));
        assert!(!Rationals.is_zero(g.entries.get(0, 1)));
        assert_eq!(g.entries.get(0, 1), g.entries.get(1, 0));
        let r = isotropy_check(&Rationals, &g, &[Rationals.one(), Rationals.zero()]).unwrap();
        assert!(r.isotropic);
    }
    let f = FiniteField::new(2, 31).unwrap();
    let spec = specialize(&t, f.clone(), SpecializeOptions::new(5).with_sphere()).unwrap();
    let g = spec.gram(&t, 3, 0, None, Some(basis)).unwrap();
    assert!(isotropy_check(&f, &g, &[1, 0]).unwrap().isotropic);
    assert!(!f.is_zero(g.entries.get(0, 1)));

    let g = spec.gram(&t, 2, 2, None, None).unwrap();
    assert_eq!(g.basis, vec![vec![(w1, 1), (w2, 1)]]);
    assert!(isotropy_check(&f, &g, &[1]).unwrap().isotropic);
}

#[test]
fn pairing_is_perfect_and_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for t in [
        catalog::interior_point(3).unwrap(),
        catalog::figure1(),
        catalog::interior_point(4).unwrap(),
        catalog::gamma_t(2).unwrap(),
    ] {
        let spec = specialize(&t, FiniteField::new(3, 20).unwrap(), SpecializeOptions::new(1).with_sphere()).unwrap();
        for s in 0..=t.d() {
            assert_eq!(spec.pairing_rank(s).unwrap(), spec.module.dim(s), "s = {s}");
        }
        assert_eq!(spec.invariance_checks(&mut rng, 20).unwrap(), 20);
    }
}

#[test]
fn off_degree_pairs_vanish() {
    let t = catalog::interior_point(3).unwrap();
    let spec = specialize(&t, Rationals, SpecializeOptions::new(2).with_sphere()).unwrap();
    let one = vec![Rationals.one()];
    assert!(Rationals.is_zero(&spec.bilinear(1, &one, 1, &one).unwrap()));
    assert!(!Rationals.is_zero(&spec.bilinear(1, &one, 2, &one).unwrap()));
}

#[test]
fn gram_rejects_bad_requests() {
    let t = catalog::interior_point(3).unwrap();
    let spec = specialize(&t, Rationals, SpecializeOptions::new(2).with_sphere()).unwrap();
    assert!(spec.gram(&t, 1, 0, None, None).is_err());
    let v1 = t.vertex_index("v1").unwrap();
    assert!(spec.gram(&t, 1, 1, None, Some(vec![vec![(v1, 1)]])).is_err());
    let g = spec.gram(&t, 0, 3, None, None).unwrap();
    assert_eq!(g.entries.rows(), 0);
}
