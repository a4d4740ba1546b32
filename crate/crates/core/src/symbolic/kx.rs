use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::poly2::{F2Poly, Poly2};
use super::ratfun::RatFun2;
use crate::bitset::BitSet;
use crate::catalog;
use crate::complex::{SimplicialComplex, Triangulation};
use crate::error::{Error, Result};
use crate::linalg::bareiss_determinant;

pub const MAX_D: usize = 3;
pub const MAX_N: usize = 6;
pub const CONE_TOKEN: &str = "cone";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KxMode {
    Prop,
    Cor,
}

/// A valid matrix, stored as the column of the unique 1 in each row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidMatrix {
    rows: Vec<usize>,
}

impl ValidMatrix {
    pub fn new(t: &Triangulation, rows: Vec<usize>) -> Result<Self> {
        if rows.len() != t.d() {
            return Err(Error::Input(format!("valid matrix needs {} rows, got {}", t.d(), rows.len())));
        }
        for (i, &j) in rows.iter().enumerate() {
            if j >= t.n() || !t.sigma_of_vertex(j).contains(i) {
                return Err(Error::Input(format!(
                    "matrix is not valid: row {} has its 1 outside the carrier of its vertex",
                    i + 1
                )));
            }
        }
        Ok(ValidMatrix { rows })
    }

    pub fn from_ids<S: AsRef<str>>(t: &Triangulation, ids: &[S]) -> Result<Self> {
        let rows = ids
            .iter()
            .map(|s| t.vertex_index(s.as_ref()).ok_or_else(|| Error::UnknownVertex(s.as_ref().into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(t, rows)
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    /// The `d × n` 0/1 matrix.
    pub fn entries(&self, n: usize) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|&j| (0..n).map(|k| u32::from(k == j)).collect())
            .collect()
    }

    /// Exponent vector of `x^I`.
    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for &j in &self.rows {
            e[j] += 1;
        }
        e
    }
}

/// `√m`, or `None` when some exponent is odd.
pub fn sqrt_monomial(m: &[u32]) -> Option<Vec<u32>> {
    m.iter().all(|e| e % 2 == 0).then(|| m.iter().map(|e| e / 2).collect())
}

/// The symbolic coned sphere `Γ̂` with the generic special l.s.o.p.
/// `θ_i = Σ_{σ(j) ∋ i} a_{i,j} x_j` and `θ̂ = θ − x_c`, over `𝔽₂(a)`.
pub struct SymbolicSphere {
    d: usize,
    n: usize,
    complex: SimplicialComplex,
    facets: Vec<BitSet>,
    vars: Vec<(usize, usize)>,
    names: Vec<String>,
    columns: Vec<Vec<Poly2>>,
    reverse_choice: bool,
    dets: RefCell<HashMap<BitSet, Poly2>>,
    degrees: RefCell<HashMap<Vec<u32>, RatFun2>>,
}

impl SymbolicSphere {
    pub fn new(t: &Triangulation) -> Result<Self> {
        if t.d() > MAX_D || t.n() > MAX_N {
            return Err(Error::SizeBound(format!(
                "symbolic verification needs d ≤ {MAX_D} and n ≤ {MAX_N}, got d = {} and n = {}",
                t.d(),
                t.n()
            )));
        }
        if !t.classify().quasi_geometric {
            return Err(Error::NotQuasiGeometric);
        }
        let (d, n) = (t.d(), t.n());
        let mut vars = Vec::new();
        let mut names = Vec::new();
        for j in 0..n {
            for i in t.sigma_of_vertex(j).iter() {
                vars.push((i, j));
                names.push(format!("a[{},{}]", i + 1, t.ids()[j]));
            }
        }
        let nv = vars.len();
        let mut columns = vec![vec![Poly2::zero(nv); d]; n + 1];
        for (k, &(i, j)) in vars.iter().enumerate() {
            columns[j][i] = Poly2::var(nv, k);
        }
        columns[n] = vec![Poly2::one(nv); d];
        let complex = t.cone_sphere()?.complex;
        let facets = complex.facets();
        Ok(SymbolicSphere {
            d,
            n,
            complex,
            facets,
            vars,
            names,
            columns,
            reverse_choice: false,
            dets: RefCell::default(),
            degrees: RefCell::default(),
        })
    }

    /// Same functional, but recursing through the last containing facet
    /// instead of the first.
    pub fn with_reversed_choice(mut self) -> Self {
        self.reverse_choice = true;
        self.degrees.borrow_mut().clear();
        self
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, i: usize, j: usize) -> Option<usize> {
        self.vars.iter().position(|&v| v == (i, j))
    }

    pub fn cone(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[BitSet] {
        &self.facets
    }

    fn minor(&self, cols: &[usize]) -> Poly2 {
        let m: Vec<Vec<Poly2>> = (0..self.d)
            .map(|i| cols.iter().map(|&j| self.columns[j][i].clone()).collect())
            .collect();
        bareiss_determinant(&F2Poly { nvars: self.nvars() }, &m)
    }

    pub fn facet_det(&self, f: BitSet) -> Poly2 {
        if let Some(p) = self.dets.borrow().get(&f) {
            return p.clone();
        }
        let p = self.minor(&f.to_vec());
        self.dets.borrow_mut().insert(f, p.clone());
        p
    }

    /// `deg(x^m)` for an exponent vector over the `n + 1` vertices of `Γ̂`.
    pub fn degree(&self, m: &[u32]) -> Result<RatFun2> {
        if m.len() != self.n + 1 || m.iter().sum::<u32>() as usize != self.d {
            return Err(Error::DimensionMismatch(format!("degree needs a monomial of degree {}", self.d)));
        }
        if let Some(r) = self.degrees.borrow().get(m) {
            return Ok(r.clone());
        }
        let r = self.degree_uncached(m)?;
        self.degrees.borrow_mut().insert(m.to_vec(), r.clone());
        Ok(r)
    }

    fn degree_uncached(&self, m: &[u32]) -> Result<RatFun2> {
        let nv = self.nvars();
        let supp = BitSet::from_indices(m.iter().enumerate().filter(|&(_, &e)| e > 0).map(|(j, _)| j));
        if !self.complex.contains(supp) {
            return Ok(RatFun2::zero(nv));
        }
        if supp.len() == self.d {
            let det = self.facet_det(supp);
            return RatFun2::new(Poly2::one(nv), det)
                .ok_or_else(|| Error::Consistency(format!("singular facet {:?}", supp.to_vec())));
        }
        let mut containing = self.facets.iter().filter(|f| supp.is_subset(**f));
        let facet = if self.reverse_choice {
            containing.next_back()
        } else {
            containing.next()
        }
        .copied()
        .ok_or_else(|| Error::Consistency("face of Γ̂ in no facet".into()))?;
        let det = self.facet_det(facet);
        if det.is_zero() {
            return Err(Error::Consistency(format!("singular facet {:?}", facet.to_vec())));
        }
        let cols = facet.to_vec();
        let j = (0..m.len()).find(|&j| m[j] >= 2).expect("a non-facet monomial of top degree repeats a vertex");
        let pos = cols.iter().position(|&c| c == j).unwrap();
        let mut total = RatFun2::zero(nv);
        for k in (0..=self.n).filter(|&k| !facet.contains(k)) {
            if !self.complex.contains(supp.with(k)) {
                continue;
            }
            let mut replaced = cols.clone();
            replaced[pos] = k;
            let num = self.minor(&replaced);
            if num.is_zero() {
                continue;
            }
            let mut next = m.to_vec();
            next[j] -= 1;
            next[k] += 1;
            let coeff = RatFun2::new(num, det.clone()).unwrap();
            total = total.add(&coeff.mul(&self.degree(&next)?));
        }
        Ok(total)
    }

    /// `deg` of a sum of monomials with coefficient 1.
    pub fn degree_of_sum(&self, monomials: &[Vec<u32>]) -> Result<RatFun2> {
        let mut total = RatFun2::zero(self.nvars());
        for m in monomials {
            total = total.add(&self.degree(m)?);
        }
        Ok(total)
    }

    pub fn apply_derivatives(&self, f: &RatFun2, i: &ValidMatrix) -> RatFun2 {
        let mut f = f.clone();
        for (row, &j) in i.rows().iter().enumerate() {
            let v = self.var_index(row, j).expect("valid matrices only touch existing variables");
            f = f.derivative(v);
        }
        f
    }
}

/// One identity to check: `h` is a sum of monomials (each with coefficient
/// 1) over the vertices of `Γ̂`, with the cone vertex at index `n`.
#[derive(Clone, Debug)]
pub struct KxInstance {
    pub name: String,
    pub mode: KxMode,
    pub h: Vec<Vec<u32>>,
    pub i: ValidMatrix,
    pub j: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct KxVerdict {
    pub s: usize,
    pub lhs: RatFun2,
    pub rhs: RatFun2,
    pub holds: bool,
}

fn add_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn padded(v: &[u32], len: usize) -> Vec<u32> {
    let mut v = v.to_vec();
    v.resize(len, 0);
    v
}

impl KxInstance {
    /// Reduces `h` modulo 2 and checks degrees, the row sum of `J` and, in
    /// corollary mode, that every monomial of `u` lives on an interior face.
    pub fn check(&self, t: &Triangulation) -> Result<usize> {
        let n = t.n();
        if self.j.len() != n || self.h.iter().any(|m| m.len() != n + 1) {
            return Err(Error::DimensionMismatch("exponent vectors must cover every vertex".into()));
        }
        let degrees: Vec<u32> = self.h.iter().map(|m| m.iter().sum()).collect();
        let s = degrees.first().copied().unwrap_or(0) as usize;
        if degrees.iter().any(|&e| e as usize != s) {
            return Err(Error::Input("h must be homogeneous".into()));
        }
        if 2 * s > t.d() {
            return Err(Error::Input(format!("s = {s} exceeds d/2")));
        }
        if self.j.iter().sum::<u32>() as usize != t.d() - 2 * s {
            return Err(Error::Input(format!("J must have row sum d − 2s = {}", t.d() - 2 * s)));
        }
        if self.mode == KxMode::Cor {
            for m in &self.h {
                if m[n] > 0 {
                    return Err(Error::Input("u may not involve the cone vertex".into()));
                }
                let supp = BitSet::from_indices((0..n).filter(|&j| m[j] > 0));
                if !t.complex().contains(supp) || !t.is_interior(supp) {
                    return Err(Error::Input("u must be supported on interior faces".into()));
                }
            }
        }
        Ok(s)
    }
}

/// `∂^I deg(h² · x^J)` against `deg(h · √(x^I · x^J))²`. In corollary mode
/// `h = u ∈ L(Γ)` and both sides are values of the bilinear form.
pub fn verify_kx(t: &Triangulation, inst: &KxInstance) -> Result<KxVerdict> {
    let sphere = SymbolicSphere::new(t)?;
    verify_on(&sphere, t, inst)
}

pub fn verify_on(sphere: &SymbolicSphere, t: &Triangulation, inst: &KxInstance) -> Result<KxVerdict> {
    let s = inst.check(t)?;
    let n = t.n();
    let nv = sphere.nvars();
    let mut h: BTreeMap<Vec<u32>, bool> = BTreeMap::new();
    for m in &inst.h {
        *h.entry(m.clone()).or_default() ^= true;
    }
    let h: Vec<Vec<u32>> = h.into_iter().filter(|&(_, c)| c).map(|(m, _)| m).collect();
    let xj = padded(&inst.j, n + 1);
    let squares: Vec<Vec<u32>> = h.iter().map(|m| add_exponents(&add_exponents(m, m), &xj)).collect();
    let lhs = sphere.apply_derivatives(&sphere.degree_of_sum(&squares)?, &inst.i);
    let rhs = match sqrt_monomial(&add_exponents(&inst.i.exponents(n), &inst.j)) {
        None => RatFun2::zero(nv),
        Some(root) => {
            let root = padded(&root, n + 1);
            let terms: Vec<Vec<u32>> = h.iter().map(|m| add_exponents(m, &root)).collect();
            sphere.degree_of_sum(&terms)?.square()
        }
    };
    let holds = lhs == rhs;
    Ok(KxVerdict { s, lhs, rhs, holds })
}

/// `∂^I B(ℓ·u, x^J·u)` and `Σ_j B(u, √(x^I x^J x_j))²` with
/// `ℓ = Σ_{j ∈ Γ} x_j`.
pub fn ell_identity(t: &Triangulation, u: &[Vec<u32>], i: &ValidMatrix, j: &[u32]) -> Result<(RatFun2, RatFun2)> {
    let sphere = SymbolicSphere::new(t)?;
    let n = t.n();
    let nv = sphere.nvars();
    let (mut lhs, mut rhs) = (RatFun2::zero(nv), RatFun2::zero(nv));
    for k in 0..n {
        let mut jk = j.to_vec();
        jk[k] += 1;
        let inst = KxInstance {
            name: String::new(),
            mode: KxMode::Cor,
            h: u.to_vec(),
            i: i.clone(),
            j: jk,
        };
        let v = verify_on(&sphere, t, &inst)?;
        lhs = lhs.add(&v.lhs);
        rhs = rhs.add(&v.rhs);
    }
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KxInstanceJson {
    #[serde(default)]
    pub name: Option<String>,
    pub mode: KxMode,
    /// Monomials of `h`, each a map from vertex id (or `"cone"`) to exponent.
    pub h: Vec<BTreeMap<String, u32>>,
    /// For each row of `I`, the vertex holding its 1.
    #[serde(rename = "I")]
    pub i: Vec<String>,
    #[serde(rename = "J")]
    pub j: BTreeMap<String, u32>,
}

impl KxInstanceJson {
    pub fn build(&self, t: &Triangulation) -> Result<KxInstance> {
        let n = t.n();
        let index = |id: &str| -> Result<usize> {
            match t.vertex_index(id) {
                Some(j) => Ok(j),
                None if id == CONE_TOKEN => Ok(n),
                None => Err(Error::UnknownVertex(id.into())),
            }
        };
        let mut h = Vec::new();
        for m in &self.h {
            let mut e = vec![0; n + 1];
            for (id, &x) in m {
                e[index(id)?] += x;
            }
            h.push(e);
        }
        let mut j = vec![0; n];
        for (id, &x) in &self.j {
            let k = index(id)?;
            if k == n {
                return Err(Error::Input("J ranges over the vertices of Γ".into()));
            }
            j[k] += x;
        }
        Ok(KxInstance {
            name: self.name.clone().unwrap_or_else(|| "custom".into()),
            mode: self.mode,
            h,
            i: ValidMatrix::from_ids(t, &self.i)?,
            j,
        })
    }
}

fn exps(t: &Triangulation, len: usize, parts: &[(&str, u32)]) -> Vec<u32> {
    let mut e = vec![0; len];
    for &(id, x) in parts {
        let k = t.vertex_index(id).unwrap_or(t.n());
        e[k] += x;
    }
    e
}

/// The fixed regression corpus: named instances on the interior-point
/// triangle and on the trivial edge.
pub fn regression_corpus() -> Vec<(Triangulation, KxInstance)> {
    let tri = catalog::interior_point(3).expect("triangle builds");
    let edge = catalog::trivial(2).expect("edge builds");
    let mut out = Vec::new();
    let mut push = |t: &Triangulation, name: &str, mode, h: &[&[(&str, u32)]], rows: &[&str], j: &[(&str, u32)]| {
        let n = t.n();
        out.push((
            t.clone(),
            KxInstance {
                name: name.into(),
                mode,
                h: h.iter().map(|m| exps(t, n + 1, m)).collect(),
                i: ValidMatrix::from_ids(t, rows).expect("corpus matrices are valid"),
                j: exps(t, n, j),
            },
        ));
    };
    let w: &[(&str, u32)] = &[("w", 1)];
    push(&tri, "triangle-proof-instance", KxMode::Cor, &[w], &["v1", "w", "w"], &[("v1", 1)]);
    push(&tri, "triangle-odd-exponent", KxMode::Cor, &[w], &["v1", "w", "w"], &[("w", 1)]);
    push(&tri, "triangle-two-boundary-rows", KxMode::Cor, &[w], &["v1", "v2", "w"], &[("w", 1)]);
    push(&tri, "triangle-all-interior-rows", KxMode::Cor, &[w], &["w", "w", "w"], &[("w", 1)]);
    push(&tri, "triangle-boundary-rows", KxMode::Cor, &[w], &["v1", "v2", "v3"], &[("v3", 1)]);
    push(&tri, "triangle-prop-mixed", KxMode::Prop, &[&[("w", 1)], &[("cone", 1)]], &["v1", "w", "w"], &[("v2", 1)]);
    push(&edge, "edge-unit-square-root", KxMode::Prop, &[&[]], &["v1", "v2"], &[("v1", 1), ("v2", 1)]);
    push(&edge, "edge-odd-exponent", KxMode::Prop, &[&[]], &["v1", "v2"], &[("v1", 2)]);
    push(&edge, "edge-with-cone", KxMode::Prop, &[&[("v1", 1)], &[("cone", 1)]], &["v1", "v2"], &[]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_monomials(len: usize, deg: u32) -> Vec<Vec<u32>> {
        if len == 0 {
            return if deg == 0 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for e in 0..=deg {
            for mut rest in all_monomials(len - 1, deg - e) {
                rest.insert(0, e);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_monomial(&[2, 2]), Some(vec![1, 1]));
        assert_eq!(sqrt_monomial(&[1, 2]), None);
        assert_eq!(sqrt_monomial(&[]), Some(vec![]));
    }

    #[test]
    fn valid_matrix_rules() {
        let t = catalog::interior_point(3).unwrap();
        assert!(ValidMatrix::from_ids(&t, &["v1", "w", "w"]).is_ok());
        assert!(ValidMatrix::from_ids(&t, &["v2", "w", "w"]).is_err());
        assert!(ValidMatrix::from_ids(&t, &["w", "w"]).is_err());
        let i = ValidMatrix::from_ids(&t, &["v1", "w", "w"]).unwrap();
        assert_eq!(i.exponents(4), vec![1, 0, 0, 2]);
        assert_eq!(i.entries(4)[1], vec![0, 0, 0, 1]);
    }

    #[test]
    fn degree_is_independent_of_facet_choice() {
        for t in [catalog::interior_point(3).unwrap(), catalog::trivial(2).unwrap(), catalog::trivial(3).unwrap()] {
            let a = SymbolicSphere::new(&t).unwrap();
            let b = SymbolicSphere::new(&t).unwrap().with_reversed_choice();
            for m in all_monomials(t.n() + 1, t.d() as u32) {
                assert_eq!(a.degree(&m).unwrap(), b.degree(&m).unwrap(), "{m:?}");
            }
        }
    }

    #[test]
    fn degree_kills_theta() {
        let t = catalog::interior_point(3).unwrap();
        let sp = SymbolicSphere::new(&t).unwrap();
        let nv = sp.nvars();
        for m in all_monomials(t.n() + 1, t.d() as u32 - 1) {
            for i in 0..t.d() {
                let mut total = RatFun2::zero(nv);
                for j in 0..=t.n() {
                    let c = &sp.columns[j][i];
                    if c.is_zero() {
                        continue;
                    }
                    let mut e = m.clone();
                    e[j] += 1;
                    total = total.add(&RatFun2::from_poly(c.clone()).mul(&sp.degree(&e).unwrap()));
                }
                assert!(total.is_zero(), "θ_{i} · {m:?}");
            }
        }
    }

    #[test]
    fn denominators_are_products_of_facet_determinants() {
        let t = catalog::interior_point(3).unwrap();
        let sp = SymbolicSphere::new(&t).unwrap();
        let nv = sp.nvars();
        let mut all = Poly2::one(nv);
        for &f in sp.facets() {
            all = all.mul(&sp.facet_det(f));
        }
        let clear = RatFun2::from_poly(all.pow(t.d() as u32));
        for m in all_monomials(t.n() + 1, t.d() as u32) {
            let v = sp.degree(&m).unwrap().mul(&clear).simplify();
            assert!(v.denominator().is_one(), "{m:?}");
        }
    }

    #[test]
    fn edge_unit_instance_by_hand() {
        let t = catalog::trivial(2).unwrap();
        let sp = SymbolicSphere::new(&t).unwrap();
        let a11 = RatFun2::from_poly(Poly2::var(2, 0));
        let a22 = RatFun2::from_poly(Poly2::var(2, 1));
        let deg = sp.degree(&[1, 1, 0]).unwrap();
        assert_eq!(deg, a11.mul(&a22).inv().unwrap());
    }

    #[test]
    fn corpus_holds() {
        let corpus = regression_corpus();
        assert!(corpus.len() >= 6);
        for (t, inst) in &corpus {
            let v = verify_kx(t, inst).unwrap();
            assert!(v.holds, "{}: {:?} vs {:?}", inst.name, v.lhs, v.rhs);
        }
        let (_, odd) = &corpus[1];
        let v = verify_kx(&corpus[1].0, odd).unwrap();
        assert!(v.rhs.is_zero() && v.lhs.is_zero());
        let v = verify_kx(&corpus[0].0, &corpus[0].1).unwrap();
        assert!(!v.lhs.is_zero());
    }

    #[test]
    fn proof_instance_through_ell() {
        let t = catalog::interior_point(3).unwrap();
        let sp = SymbolicSphere::new(&t).unwrap();
        let u = vec![vec![0, 0, 0, 1, 0]];
        let i = ValidMatrix::from_ids(&t, &["v1", "w", "w"]).unwrap();
        let (lhs, rhs) = ell_identity(&t, &u, &i, &[0, 0, 0, 0]).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, sp.degree(&[1, 0, 0, 2, 0]).unwrap().square());
        assert!(!rhs.is_zero());
    }

    #[test]
    fn bad_instances() {
        let t = catalog::interior_point(3).unwrap();
        let inst = KxInstance {
            name: "boundary u".into(),
            mode: KxMode::Cor,
            h: vec![vec![1, 0, 0, 0, 0]],
            i: ValidMatrix::from_ids(&t, &["v1", "w", "w"]).unwrap(),
            j: vec![0, 0, 0, 1],
        };
        assert!(verify_kx(&t, &inst).is_err());
        let inst = KxInstance { j: vec![0, 0, 0, 2], h: vec![vec![0, 0, 0, 1, 0]], ..inst };
        assert!(verify_kx(&t, &inst).is_err());
        assert!(matches!(
            SymbolicSphere::new(&catalog::interior_point(4).unwrap()),
            Err(Error::SizeBound(_))
        ));
    }

    #[test]
    fn json_instances() {
        let t = catalog::interior_point(3).unwrap();
        let text = r#"{"mode":"prop","h":[{"w":1},{"cone":1}],"I":["v1","w","w"],"J":{"v2":1}}"#;
        let raw: KxInstanceJson = serde_json::from_str(text).unwrap();
        let inst = raw.build(&t).unwrap();
        assert_eq!(inst.h, vec![vec![0, 0, 0, 1, 0], vec![0, 0, 0, 0, 1]]);
        assert!(verify_kx(&t, &inst).unwrap().holds);
    }
}
