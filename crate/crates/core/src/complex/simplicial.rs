use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;

/// Abstract simplicial complex on vertex indices `0..n`, stored as its full
/// face list (including the empty face) in graded-lex order.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n: usize,
    faces: Vec<BitSet>,
    index: HashMap<BitSet, usize>,
}

impl SimplicialComplex {
    /// Downward closure of `generators` on `n` vertices.
    pub fn from_generators<I: IntoIterator<Item = BitSet>>(n: usize, generators: I) -> Self {
        let mut set: HashSet<BitSet> = HashSet::new();
        set.insert(BitSet::EMPTY);
        for g in generators {
            if set.contains(&g) {
                continue;
            }
            for s in g.subsets() {
                set.insert(s);
            }
        }
        Self::from_closed(n, set)
    }

    /// `faces` must already be closed under taking subsets.
    pub fn from_closed<I: IntoIterator<Item = BitSet>>(n: usize, faces: I) -> Self {
        let mut faces: Vec<BitSet> = faces.into_iter().collect();
        faces.sort_by(BitSet::cmp_graded_lex);
        faces.dedup();
        let index = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        SimplicialComplex { n, faces, index }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// All faces, empty face first, sorted by size and then lexicographically.
    pub fn faces(&self) -> &[BitSet] {
        &self.faces
    }

    pub fn face_index(&self, f: BitSet) -> Option<usize> {
        self.index.get(&f).copied()
    }

    pub fn contains(&self, f: BitSet) -> bool {
        self.index.contains_key(&f)
    }

    pub fn faces_of_size(&self, k: usize) -> impl Iterator<Item = BitSet> + '_ {
        self.faces.iter().copied().filter(move |f| f.len() == k)
    }

    /// Largest face size (dimension + 1).
    pub fn max_face_size(&self) -> usize {
        self.faces.last().map_or(0, |f| f.len())
    }

    pub fn facets(&self) -> Vec<BitSet> {
        let mut covered: HashSet<BitSet> = HashSet::new();
        for f in &self.faces {
            for v in f.iter() {
                covered.insert(f.without(v));
            }
        }
        self.faces
            .iter()
            .copied()
            .filter(|f| !covered.contains(f))
            .collect()
    }

    /// Vertices that are faces.
    pub fn vertices(&self) -> Vec<usize> {
        self.faces_of_size(1).map(|f| f.iter().next().unwrap()).collect()
    }

    /// `f[k]` = number of faces with `k` vertices, `k = 0..=max`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.max_face_size() + 1];
        for face in &self.faces {
            f[face.len()] += 1;
        }
        f
    }

    /// `h(t) = sum_i f_{i-1} t^i (1 - t)^{m - i}` for a complex of dimension
    /// at most `m - 1`.
    pub fn h_polynomial(&self, m: usize) -> Result<IntPolynomial> {
        h_from_f(&self.f_vector(), m)
    }

    /// Minimal non-faces: vertex sets not in the complex all of whose proper
    /// subsets are faces. Sorted graded-lex.
    pub fn minimal_nonfaces(&self) -> Vec<BitSet> {
        let verts = self.vertices();
        let mut out = Vec::new();
        for &f in &self.faces {
            let start = f.max().map_or(0, |m| m + 1);
            for &v in verts.iter().filter(|&&v| v >= start) {
                let s = f.with(v);
                if self.contains(s) {
                    continue;
                }
                if s.iter().all(|u| self.contains(s.without(u))) {
                    out.push(s);
                }
            }
        }
        out.sort_by(BitSet::cmp_graded_lex);
        out
    }

    /// `lk(E) = { G : G ∩ E = ∅, G ∪ E ∈ Δ }`, on the same vertex indices.
    pub fn link(&self, e: BitSet) -> Result<SimplicialComplex> {
        if !self.contains(e) {
            return Err(Error::NotAFace(e.iter().map(|v| v.to_string()).collect()));
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|g| g.is_disjoint(e) && self.contains(g.union(e)));
        Ok(SimplicialComplex::from_closed(self.n, faces))
    }

    /// Subcomplex of faces satisfying `keep` (which must be closed downward).
    pub fn filter<P: Fn(BitSet) -> bool>(&self, keep: P) -> SimplicialComplex {
        SimplicialComplex::from_closed(self.n, self.faces.iter().copied().filter(|&f| keep(f)))
    }

    /// Unreduced Euler characteristic `sum_k (-1)^k f_k` over nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| if f.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    /// Map from each ridge of a pure complex to the facets containing it.
    pub fn ridge_incidence(&self) -> HashMap<BitSet, Vec<BitSet>> {
        let mut map: HashMap<BitSet, Vec<BitSet>> = HashMap::new();
        for f in self.facets() {
            for v in f.iter() {
                map.entry(f.without(v)).or_default().push(f);
            }
        }
        map
    }

    /// Pure, and every ridge lies in exactly two facets.
    pub fn is_closed_pseudomanifold(&self) -> bool {
        let facets = self.facets();
        let Some(first) = facets.first() else {
            return false;
        };
        let k = first.len();
        if facets.iter().any(|f| f.len() != k) {
            return false;
        }
        self.ridge_incidence().values().all(|fs| fs.len() == 2)
    }
}

/// h-vector from the face numbers `f[k]` (faces with `k` vertices).
pub fn h_from_f(f: &[usize], m: usize) -> Result<IntPolynomial> {
    if f.len() > m + 1 && f[m + 1..].iter().any(|&c| c > 0) {
        return Err(Error::DimensionMismatch(format!(
            "complex has faces with more than {m} vertices"
        )));
    }
    Ok((0..=m)
        .map(|i| {
            let count = f.get(i).copied().unwrap_or(0) as i64;
            IntPolynomial::t_pow_one_minus_t(i, m - i).scaled(count)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> SimplicialComplex {
        SimplicialComplex::from_generators(
            3,
            [
                BitSet::from_indices([0, 1]),
                BitSet::from_indices([1, 2]),
                BitSet::from_indices([0, 2]),
            ],
        )
    }

    #[test]
    fn cycle_invariants() {
        let c = cycle3();
        assert_eq!(c.f_vector(), vec![1, 3, 3]);
        assert_eq!(c.h_polynomial(2).unwrap(), vec![1, 1, 1].into());
        assert_eq!(c.minimal_nonfaces(), vec![BitSet::from_indices([0, 1, 2])]);
        assert!(c.is_closed_pseudomanifold());
        assert_eq!(c.euler_characteristic(), 0);
        assert!(c.h_polynomial(1).is_err());
    }

    #[test]
    fn link_of_vertex_in_cycle() {
        let c = cycle3();
        let lk = c.link(BitSet::singleton(0)).unwrap();
        assert_eq!(lk.facets(), vec![BitSet::singleton(1), BitSet::singleton(2)]);
        assert!(c.link(BitSet::from_indices([0, 1, 2])).is_err());
    }
}
