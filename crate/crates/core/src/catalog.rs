//! Built-in example triangulations.

use crate::bitset::BitSet;
use crate::complex::Triangulation;
use crate::error::{Error, Result};

/// `Γ = 2^V` with `σ` the identity, on vertices `v1..vd`.
pub fn trivial(d: usize) -> Result<Triangulation> {
    if d == 0 {
        return Err(Error::Input("trivial triangulation needs d >= 1".into()));
    }
    let ids = (1..=d).map(|i| format!("v{i}")).collect();
    let sigma = (0..d).map(BitSet::singleton).collect();
    Triangulation::from_parts(d, ids, sigma, vec![BitSet::full(d)], vec![])
}

/// The simplex on `v1..vd` subdivided by one interior vertex `w`.
pub fn interior_point(d: usize) -> Result<Triangulation> {
    if d < 2 {
        return Err(Error::Input("interior-point triangulation needs d >= 2".into()));
    }
    let mut ids: Vec<String> = (1..=d).map(|i| format!("v{i}")).collect();
    ids.push("w".into());
    let mut sigma: Vec<BitSet> = (0..d).map(BitSet::singleton).collect();
    sigma.push(BitSet::full(d));
    let facets = (0..d).map(|i| BitSet::full(d).without(i).with(d)).collect();
    Triangulation::from_parts(d, ids, sigma, facets, vec![])
}

/// A non-vertex-induced triangulation of the triangle with `ℓ = t + t²`.
pub fn figure1() -> Triangulation {
    figure1_with(true)
}

/// [`figure1`] without the override `σ({2,3}) = V`; fails homology
/// validation at `U = {2,3}`.
pub fn figure1_without_override() -> Triangulation {
    figure1_with(false)
}

fn figure1_with(override_23: bool) -> Triangulation {
    let overrides: &[(&[&str], &[usize])] = if override_23 {
        &[(&["2", "3"], &[1, 2, 3])]
    } else {
        &[]
    };
    Triangulation::from_ids(
        3,
        &[
            ("1", &[1]),
            ("2", &[2]),
            ("3", &[3]),
            ("4", &[2, 3]),
            ("5", &[1, 2, 3]),
        ],
        &[&["1", "2", "3"], &["2", "3", "5"], &["2", "4", "5"], &["3", "4", "5"]],
        overrides,
    )
    .expect("static example is well formed")
}

/// `Γ_t`: the join of `t` copies of the interior-point triangle, with the
/// vertices of copy `k` suffixed `_k`.
pub fn gamma_t(t: usize) -> Result<Triangulation> {
    if t == 0 {
        return Err(Error::Input("gamma-t needs t >= 1".into()));
    }
    let base = interior_point(3)?;
    let mut acc = base.with_suffix("_1");
    for k in 2..=t {
        acc = acc.join(&base.with_suffix(&format!("_{k}")))?;
    }
    Ok(acc)
}

/// Looks up a builder by its CLI name.
pub fn by_name(name: &str, t: Option<usize>, d: Option<usize>) -> Result<Triangulation> {
    match name {
        "gamma-t" => gamma_t(t.ok_or_else(|| Error::Input("gamma-t requires --t".into()))?),
        "interior-point" => interior_point(d.ok_or_else(|| Error::Input("interior-point requires --d".into()))?),
        "figure1" => Ok(figure1()),
        "figure1-doctored" => Ok(figure1_without_override()),
        "trivial" => trivial(d.ok_or_else(|| Error::Input("trivial requires --d".into()))?),
        other => Err(Error::Input(format!("unknown example `{other}`"))),
    }
}

/// Named triangulations with every property the validation layers demand.
pub fn corpus() -> Vec<(String, Triangulation)> {
    let mut out = Vec::new();
    for d in 1..=4 {
        out.push((format!("trivial-{d}"), trivial(d).expect("d >= 1")));
    }
    out.push(("interior-point-3".into(), interior_point(3).expect("d >= 2")));
    out.push(("interior-point-4".into(), interior_point(4).expect("d >= 2")));
    out.push(("figure1".into(), figure1()));
    out.push(("gamma-2".into(), gamma_t(2).expect("t >= 1")));
    out.push((
        "interior-point-3*trivial-1".into(),
        interior_point(3).and_then(|g| g.join(&trivial(1)?)).expect("small join"),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        for (name, t) in corpus() {
            assert!(t.validate().is_ok(), "{name}");
        }
    }

    #[test]
    fn gamma_t_shapes() {
        let g = gamma_t(2).unwrap();
        assert_eq!((g.d(), g.n()), (6, 8));
        assert_eq!(g.ids()[0], "v1_1");
        let g = gamma_t(3).unwrap();
        assert_eq!((g.d(), g.n()), (9, 12));
    }
}
