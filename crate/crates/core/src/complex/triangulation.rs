use std::collections::HashMap;

use serde::Serialize;

use super::simplicial::SimplicialComplex;
use crate::bitset::{BitSet, MAX_ELEMENTS};
use crate::error::{Error, Result};

/// A triangulation `σ: Γ → 2^V` of the simplex on `V = {1, .., d}`.
///
/// Vertices of `Γ` are indexed `0..n` in input order. Subsets of `V` are
/// stored as [`BitSet`]s where element `i` of `V` is bit `i - 1`. The carrier
/// of a face is the union of the carriers of its vertices together with every
/// override attached to one of its subsets.
#[derive(Clone, Debug)]
pub struct Triangulation {
    d: usize,
    ids: Vec<String>,
    vertex_sigma: Vec<BitSet>,
    overrides: Vec<(BitSet, BitSet)>,
    complex: SimplicialComplex,
    sigma: Vec<BitSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    pub face: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub quasi_geometric: bool,
    pub vertex_induced: bool,
}

/// Face numbers `f_i^j`: faces `G` with `|G| = i` and `|σ(G)| = j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceCensus {
    pub d: usize,
    /// `counts[i][j]`, `0 <= i, j <= d`; the empty face is not counted.
    pub counts: Vec<Vec<usize>>,
}

impl FaceCensus {
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.counts
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    /// `ℓ_1 = f_1^d`, valid for `d >= 2`.
    pub fn predicted_l1(&self) -> i64 {
        self.get(1, self.d) as i64
    }

    /// `ℓ_2 = f_2^d - f_1^{d-1} - (d-1) f_1^d`, valid for `d >= 3`.
    pub fn predicted_l2(&self) -> i64 {
        let d = self.d;
        self.get(2, d) as i64 - self.get(1, d - 1) as i64 - (d as i64 - 1) * self.get(1, d) as i64
    }
}

/// `Γ̂`: `Γ` plus a cone vertex over its boundary.
#[derive(Clone, Debug)]
pub struct ConedSphere {
    pub complex: SimplicialComplex,
    /// Index of the cone vertex `c` (one past the last vertex of `Γ`).
    pub cone: usize,
}

/// `lk_Γ(E)` together with the carriers `σ(G ∪ E)` of its faces.
#[derive(Clone, Debug)]
pub struct Link {
    pub face: BitSet,
    pub complex: SimplicialComplex,
    carrier: HashMap<BitSet, BitSet>,
}

impl Link {
    /// `σ(G ∪ E)` for a face `G` of the link.
    pub fn carrier(&self, g: BitSet) -> Option<BitSet> {
        self.carrier.get(&g).copied()
    }
}

pub(crate) fn v_set_from_elements(d: usize, elems: &[usize]) -> Result<BitSet> {
    elems.iter().try_fold(BitSet::EMPTY, |s, &i| {
        if i == 0 || i > d {
            Err(Error::SigmaOutOfRange { value: i, d })
        } else {
            Ok(s.with(i - 1))
        }
    })
}

/// 1-based elements of a subset of `V`.
pub fn v_set_elements(s: BitSet) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

impl Triangulation {
    /// Builds a triangulation from index data. `vertex_sigma` and override
    /// carriers are subsets of `V` (bit `i-1` for element `i`).
    pub fn from_parts(
        d: usize,
        ids: Vec<String>,
        vertex_sigma: Vec<BitSet>,
        facets: Vec<BitSet>,
        overrides: Vec<(BitSet, BitSet)>,
    ) -> Result<Self> {
        let n = ids.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyVertices(n));
        }
        if d == 0 || d > MAX_ELEMENTS {
            return Err(Error::Input(format!("simplex dimension d = {d} unsupported")));
        }
        let mut seen = HashMap::new();
        for (i, id) in ids.iter().enumerate() {
            if seen.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        assert_eq!(vertex_sigma.len(), n, "one carrier per vertex");
        let full_v = BitSet::full(d);
        for s in vertex_sigma.iter().chain(overrides.iter().map(|(_, s)| s)) {
            if !s.is_subset(full_v) {
                return Err(Error::SigmaOutOfRange {
                    value: s.max().unwrap() + 1,
                    d,
                });
            }
        }
        let all = BitSet::full(n);
        for f in &facets {
            if !f.is_subset(all) {
                return Err(Error::UnknownVertex(format!("#{}", f.difference(all).max().unwrap())));
            }
        }
        let complex = SimplicialComplex::from_generators(n, facets);
        for (face, _) in &overrides {
            if !complex.contains(*face) {
                return Err(Error::OverrideOnNonFace(
                    face.iter().map(|v| ids[v].clone()).collect(),
                ));
            }
        }
        let sigma = complex
            .faces()
            .iter()
            .map(|&f| {
                let from_vertices = f
                    .iter()
                    .fold(BitSet::EMPTY, |s, v| s.union(vertex_sigma[v]));
                overrides
                    .iter()
                    .filter(|(o, _)| o.is_subset(f))
                    .fold(from_vertices, |s, (_, os)| s.union(*os))
            })
            .collect();
        Ok(Triangulation {
            d,
            ids,
            vertex_sigma,
            overrides,
            complex,
            sigma,
        })
    }

    /// Builds from string ids and 1-based carrier lists.
    pub fn from_ids(
        d: usize,
        vertices: &[(&str, &[usize])],
        facets: &[&[&str]],
        overrides: &[(&[&str], &[usize])],
    ) -> Result<Self> {
        let ids: Vec<String> = vertices.iter().map(|(id, _)| id.to_string()).collect();
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, (id, _))| (*id, i)).collect();
        let lookup = |names: &[&str]| -> Result<BitSet> {
            names.iter().try_fold(BitSet::EMPTY, |s, name| {
                index
                    .get(name)
                    .map(|&i| s.with(i))
                    .ok_or_else(|| Error::UnknownVertex(name.to_string()))
            })
        };
        let vertex_sigma = vertices
            .iter()
            .map(|(_, s)| v_set_from_elements(d, s))
            .collect::<Result<Vec<_>>>()?;
        let facets = facets.iter().map(|f| lookup(f)).collect::<Result<Vec<_>>>()?;
        let overrides = overrides
            .iter()
            .map(|(f, s)| Ok((lookup(f)?, v_set_from_elements(d, s)?)))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::from_parts(d, ids, vertex_sigma, facets, overrides)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of vertices of `Γ`.
    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn full_v(&self) -> BitSet {
        BitSet::full(self.d)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn faces(&self) -> &[BitSet] {
        self.complex.faces()
    }

    pub fn facets(&self) -> Vec<BitSet> {
        self.complex.facets()
    }

    pub fn vertex_sigmas(&self) -> &[BitSet] {
        &self.vertex_sigma
    }

    pub fn overrides(&self) -> &[(BitSet, BitSet)] {
        &self.overrides
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|v| v == id)
    }

    pub fn face_from_ids<S: AsRef<str>>(&self, names: &[S]) -> Result<BitSet> {
        names.iter().try_fold(BitSet::EMPTY, |s, name| {
            self.vertex_index(name.as_ref())
                .map(|i| s.with(i))
                .ok_or_else(|| Error::UnknownVertex(name.as_ref().to_string()))
        })
    }

    pub fn face_ids(&self, f: BitSet) -> Vec<String> {
        f.iter().map(|v| self.ids[v].clone()).collect()
    }

    /// Effective carrier `σ(F)`; `None` when `F` is not a face.
    pub fn sigma(&self, f: BitSet) -> Option<BitSet> {
        self.complex.face_index(f).map(|i| self.sigma[i])
    }

    /// `σ({j})` for a vertex, including overrides on the singleton.
    pub fn sigma_of_vertex(&self, j: usize) -> BitSet {
        self.sigma(BitSet::singleton(j)).unwrap_or(self.vertex_sigma[j])
    }

    /// Faces paired with their carriers, in face order.
    pub fn faces_with_sigma(&self) -> impl Iterator<Item = (BitSet, BitSet)> + '_ {
        self.complex.faces().iter().copied().zip(self.sigma.iter().copied())
    }

    /// `e(F) = |σ(F)| - |F|`.
    pub fn excess(&self, f: BitSet) -> Option<i64> {
        self.sigma(f).map(|s| s.len() as i64 - f.len() as i64)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for v in 0..self.n() {
            if !self.complex.contains(BitSet::singleton(v)) {
                violations.push(Violation {
                    rule: "every vertex lies in a facet",
                    face: vec![self.ids[v].clone()],
                    detail: "vertex is not contained in any facet".into(),
                });
            }
        }
        for (f, s) in self.faces_with_sigma() {
            if f.is_empty() && !s.is_empty() {
                violations.push(Violation {
                    rule: "σ(∅) = ∅",
                    face: vec![],
                    detail: format!("σ(∅) = {:?}", v_set_elements(s)),
                });
            }
            if f.len() > s.len() {
                violations.push(Violation {
                    rule: "|F| ≤ |σ(F)|",
                    face: self.face_ids(f),
                    detail: format!("σ(F) = {:?} has size {} < {}", v_set_elements(s), s.len(), f.len()),
                });
            }
            for v in f.iter() {
                let sub = self.sigma(f.without(v)).expect("faces are closed");
                if !sub.is_subset(s) {
                    violations.push(Violation {
                        rule: "σ is order-preserving",
                        face: self.face_ids(f),
                        detail: format!("σ of subface {:?} not contained in σ(F)", self.face_ids(f.without(v))),
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn classify(&self) -> Classification {
        let mut quasi_geometric = true;
        let mut vertex_induced = true;
        for (g, s) in self.faces_with_sigma() {
            let from_vertices = g
                .iter()
                .fold(BitSet::EMPTY, |acc, j| acc.union(self.sigma_of_vertex(j)));
            if from_vertices != s {
                vertex_induced = false;
            }
            if from_vertices.len() < g.len() {
                quasi_geometric = false;
            }
        }
        Classification {
            quasi_geometric,
            vertex_induced,
        }
    }

    pub fn is_interior(&self, f: BitSet) -> bool {
        self.sigma(f) == Some(self.full_v())
    }

    /// Faces `G` with `σ(G) = V`, graded-lex.
    pub fn interior_faces(&self) -> Vec<BitSet> {
        self.faces_with_sigma()
            .filter(|&(_, s)| s == self.full_v())
            .map(|(f, _)| f)
            .collect()
    }

    pub fn face_census(&self) -> FaceCensus {
        let d = self.d;
        let mut counts = vec![vec![0usize; d + 1]; d + 1];
        for (f, s) in self.faces_with_sigma() {
            if f.is_empty() {
                continue;
            }
            if f.len() <= d {
                counts[f.len()][s.len()] += 1;
            }
        }
        FaceCensus { d, counts }
    }

    /// `Γ_U = σ^{-1}(2^U)`.
    pub fn restriction(&self, u: BitSet) -> SimplicialComplex {
        let keep: std::collections::HashSet<BitSet> = self
            .faces_with_sigma()
            .filter(|&(_, s)| s.is_subset(u))
            .map(|(f, _)| f)
            .collect();
        SimplicialComplex::from_closed(self.n(), keep)
    }

    pub fn link(&self, e: BitSet) -> Result<Link> {
        if !self.complex.contains(e) {
            return Err(Error::NotAFace(self.face_ids(e)));
        }
        let complex = self.complex.link(e)?;
        let carrier = complex
            .faces()
            .iter()
            .map(|&g| (g, self.sigma(g.union(e)).expect("link faces extend to faces")))
            .collect();
        Ok(Link {
            face: e,
            complex,
            carrier,
        })
    }

    /// Simplicial join with carrier `σ(F ⊔ F') = σ(F) ∪ σ(F')`. Colliding
    /// vertex ids on the right are primed until unique.
    pub fn join(&self, other: &Triangulation) -> Result<Triangulation> {
        let n = self.n();
        let d = self.d;
        let mut ids = self.ids.clone();
        for id in &other.ids {
            let mut name = id.clone();
            while ids.contains(&name) {
                name.push('\'');
            }
            ids.push(name);
        }
        let shift_v = |s: BitSet| BitSet::from_bits(s.bits() << d);
        let shift_g = |f: BitSet| BitSet::from_bits(f.bits() << n);
        if n + other.n() > MAX_ELEMENTS {
            return Err(Error::TooManyVertices(n + other.n()));
        }
        if d + other.d > MAX_ELEMENTS {
            return Err(Error::Input("joined simplex too large".into()));
        }
        let vertex_sigma = self
            .vertex_sigma
            .iter()
            .copied()
            .chain(other.vertex_sigma.iter().map(|&s| shift_v(s)))
            .collect();
        let right_facets = other.facets();
        let facets = self
            .facets()
            .into_iter()
            .flat_map(|f| right_facets.iter().map(move |&g| f.union(shift_g(g))))
            .collect();
        let overrides = self
            .overrides
            .iter()
            .copied()
            .chain(other.overrides.iter().map(|&(f, s)| (shift_g(f), shift_v(s))))
            .collect();
        Triangulation::from_parts(d + other.d, ids, vertex_sigma, facets, overrides)
    }

    /// Renames every vertex id by appending `suffix`.
    pub fn with_suffix(&self, suffix: &str) -> Triangulation {
        let mut t = self.clone();
        for id in t.ids.iter_mut() {
            id.push_str(suffix);
        }
        t
    }

    /// `Γ̂ = Γ ∪ { G ∪ {c} : σ(G) ≠ V }`.
    pub fn cone_sphere(&self) -> Result<ConedSphere> {
        let n = self.n();
        if n + 1 > MAX_ELEMENTS {
            return Err(Error::TooManyVertices(n + 1));
        }
        let full = self.full_v();
        let mut faces: Vec<BitSet> = self.faces().to_vec();
        faces.extend(
            self.faces_with_sigma()
                .filter(|&(_, s)| s != full)
                .map(|(g, _)| g.with(n)),
        );
        Ok(ConedSphere {
            complex: SimplicialComplex::from_closed(n + 1, faces),
            cone: n,
        })
    }

    /// Faces of size `d - 1` on the boundary (`σ(G) ≠ V`).
    pub fn boundary_ridges(&self) -> Vec<BitSet> {
        let full = self.full_v();
        self.faces_with_sigma()
            .filter(|&(f, s)| f.len() + 1 == self.d && s != full)
            .map(|(f, _)| f)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn validation_examples() {
        assert!(catalog::interior_point(3).unwrap().validate().is_ok());
        assert!(catalog::figure1().validate().is_ok());
        let bad = Triangulation::from_ids(
            3,
            &[("v1", &[1]), ("v2", &[2]), ("v3", &[3]), ("w", &[1])],
            &[&["v1", "v2", "w"], &["v2", "v3", "w"], &["v1", "v3", "w"]],
            &[],
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.is_ok());
        assert!(report
            .violations
            .iter()
            .any(|v| v.rule == "|F| ≤ |σ(F)|" && v.face == ["v1", "v2", "w"]));
    }

    #[test]
    fn structural_errors() {
        let dup = Triangulation::from_ids(1, &[("a", &[1]), ("a", &[1])], &[&["a"]], &[]);
        assert!(matches!(dup, Err(Error::DuplicateVertex(_))));
        let unknown = Triangulation::from_ids(1, &[("a", &[1])], &[&["b"]], &[]);
        assert!(matches!(unknown, Err(Error::UnknownVertex(_))));
        let nonface = Triangulation::from_ids(
            2,
            &[("a", &[1]), ("b", &[2]), ("c", &[1, 2])],
            &[&["a", "c"], &["b", "c"]],
            &[(&["a", "b"], &[1, 2])],
        );
        assert!(matches!(nonface, Err(Error::OverrideOnNonFace(_))));
        let range = Triangulation::from_ids(1, &[("a", &[2])], &[&["a"]], &[]);
        assert!(matches!(range, Err(Error::SigmaOutOfRange { .. })));
    }

    #[test]
    fn classification_examples() {
        let c = catalog::interior_point(3).unwrap().classify();
        assert!(c.quasi_geometric && c.vertex_induced);
        let c = catalog::figure1().classify();
        assert!(c.quasi_geometric && !c.vertex_induced);
        let edge = Triangulation::from_ids(
            2,
            &[("a", &[1]), ("b", &[1])],
            &[&["a", "b"]],
            &[(&["a", "b"], &[1, 2])],
        )
        .unwrap();
        let c = edge.classify();
        assert!(!c.quasi_geometric && !c.vertex_induced);
    }

    #[test]
    fn census_examples() {
        let c = catalog::figure1().face_census();
        assert_eq!((c.get(1, 3), c.get(1, 2), c.get(2, 3)), (1, 1, 4));
        assert_eq!(c.predicted_l2(), 1);
        let c = catalog::interior_point(3).unwrap().face_census();
        assert_eq!((c.get(1, 3), c.get(1, 2), c.get(2, 3)), (1, 0, 3));
        assert_eq!(c.predicted_l2(), 1);
        let c = catalog::trivial(3).unwrap().face_census();
        for i in 1..=3 {
            for j in 1..=3 {
                let expected = if i == j { [0, 3, 3, 1][i] } else { 0 };
                assert_eq!(c.get(i, j), expected, "f_{i}^{j}");
            }
        }
        assert_eq!(c.predicted_l1(), 0);
    }

    #[test]
    fn interior_face_examples() {
        let t = catalog::interior_point(3).unwrap();
        let names: Vec<Vec<String>> = t.interior_faces().into_iter().map(|f| t.face_ids(f)).collect();
        assert_eq!(
            names,
            vec![
                vec!["w"],
                vec!["v1", "w"],
                vec!["v2", "w"],
                vec!["v3", "w"],
                vec!["v1", "v2", "w"],
                vec!["v1", "v3", "w"],
                vec!["v2", "v3", "w"],
            ]
        );
        let t = catalog::figure1();
        let names: Vec<Vec<String>> = t.interior_faces().into_iter().map(|f| t.face_ids(f)).collect();
        let expected: Vec<Vec<&str>> = vec![
            vec!["5"],
            vec!["2", "3"],
            vec!["2", "5"],
            vec!["3", "5"],
            vec!["4", "5"],
            vec!["1", "2", "3"],
            vec!["2", "3", "5"],
            vec!["2", "4", "5"],
            vec!["3", "4", "5"],
        ];
        assert_eq!(names, expected);
        let t = catalog::trivial(4).unwrap();
        assert_eq!(t.interior_faces(), vec![BitSet::full(4)]);
    }

    #[test]
    fn link_examples() {
        let t = catalog::interior_point(3).unwrap();
        let w = t.face_from_ids(&["w"]).unwrap();
        let lk = t.link(w).unwrap();
        assert_eq!(lk.complex.f_vector(), vec![1, 3, 3]);
        let v1 = t.face_from_ids(&["v1"]).unwrap();
        let lk = t.link(v1).unwrap();
        let facets: Vec<Vec<String>> = lk.complex.facets().into_iter().map(|f| t.face_ids(f)).collect();
        assert_eq!(facets, vec![vec!["v2", "w"], vec!["v3", "w"]]);
        assert_eq!(lk.carrier(BitSet::EMPTY), Some(BitSet::singleton(0)));
        let lk = t.link(BitSet::EMPTY).unwrap();
        assert_eq!(lk.complex.faces(), t.faces());
        assert!(t.link(t.face_from_ids(&["v1", "v2", "v3"]).unwrap()).is_err());
    }

    #[test]
    fn cone_sphere_examples() {
        let t = catalog::interior_point(3).unwrap();
        let s = t.cone_sphere().unwrap();
        assert_eq!(s.complex.f_vector(), vec![1, 5, 9, 6]);
        assert_eq!(s.complex.euler_characteristic(), 2);
        assert!(s.complex.is_closed_pseudomanifold());

        let point = catalog::trivial(1).unwrap();
        let s = point.cone_sphere().unwrap();
        assert_eq!(s.complex.facets(), vec![BitSet::singleton(0), BitSet::singleton(1)]);

        let f1 = catalog::figure1();
        let s = f1.cone_sphere().unwrap();
        assert_eq!(s.complex.facets().len(), 8);
        let ridges: Vec<Vec<String>> = f1.boundary_ridges().into_iter().map(|r| f1.face_ids(r)).collect();
        assert_eq!(ridges, vec![vec!["1", "2"], vec!["1", "3"], vec!["2", "4"], vec!["3", "4"]]);
        assert!(s.complex.is_closed_pseudomanifold());
    }

    #[test]
    fn join_shapes() {
        let g1 = catalog::interior_point(3).unwrap();
        let g2 = g1.join(&g1).unwrap();
        assert_eq!((g2.d(), g2.n()), (6, 8));
        assert!(g2.validate().is_ok());
        assert_eq!(g2.ids()[4], "v1'");
        assert_eq!(g2.facets().len(), 9);
    }
}
