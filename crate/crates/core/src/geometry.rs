//! Regularity certificates: a height function whose lower hull projects
//! onto the triangulation.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::Triangulation;
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, Rationals};
use crate::linalg::{determinant, solve, Matrix};

/// Coordinates in `ℝ^{d-1}` (reference simplex: `v_1` at the origin,
/// `v_i` at the `(i-1)`-th unit vector) and heights, per vertex index.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricRealization {
    pub coords: Vec<Vec<BigRational>>,
    pub heights: Vec<BigRational>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationJson {
    pub coords: BTreeMap<String, Vec<String>>,
    pub heights: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityViolation {
    pub facet: Vec<String>,
    pub vertex: String,
    /// `h_F(v) - height(v)`, which must be negative.
    pub gap: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub violations: Vec<RegularityViolation>,
}

fn rat(s: &str) -> Result<BigRational> {
    parse_rational(s).ok_or_else(|| Error::Input(format!("`{s}` is not a rational number")))
}

impl RealizationJson {
    pub fn build(&self, t: &Triangulation) -> Result<GeometricRealization> {
        let mut coords = Vec::with_capacity(t.n());
        let mut heights = Vec::with_capacity(t.n());
        for id in t.ids() {
            let c = self
                .coords
                .get(id)
                .ok_or_else(|| Error::Input(format!("no coordinates for vertex `{id}`")))?;
            coords.push(c.iter().map(|s| rat(s)).collect::<Result<Vec<_>>>()?);
            let h = self
                .heights
                .get(id)
                .ok_or_else(|| Error::Input(format!("no height for vertex `{id}`")))?;
            heights.push(rat(h)?);
        }
        for key in self.coords.keys().chain(self.heights.keys()) {
            if t.vertex_index(key).is_none() {
                return Err(Error::UnknownVertex(key.clone()));
            }
        }
        Ok(GeometricRealization { coords, heights })
    }
}

impl GeometricRealization {
    pub fn from_json(t: &Triangulation, text: &str) -> Result<Self> {
        let raw: RealizationJson = serde_json::from_str(text)?;
        raw.build(t)
    }

    pub fn to_json(&self, t: &Triangulation) -> RealizationJson {
        let q = Rationals;
        RealizationJson {
            coords: t
                .ids()
                .iter()
                .zip(&self.coords)
                .map(|(id, c)| (id.clone(), c.iter().map(|x| q.format(x)).collect()))
                .collect(),
            heights: t
                .ids()
                .iter()
                .zip(&self.heights)
                .map(|(id, h)| (id.clone(), q.format(h)))
                .collect(),
        }
    }

    /// Builds coordinates from barycentric vectors over `V`.
    pub fn from_barycentric(bary: &[Vec<BigRational>], heights: Vec<BigRational>) -> Self {
        let coords = bary.iter().map(|b| b[1..].to_vec()).collect();
        GeometricRealization { coords, heights }
    }

    /// Barycentric coordinates of a vertex with respect to the reference
    /// simplex.
    pub fn barycentric(&self, j: usize) -> Vec<BigRational> {
        let c = &self.coords[j];
        let rest: BigRational = c.iter().cloned().sum();
        std::iter::once(BigRational::one() - rest).chain(c.iter().cloned()).collect()
    }

    /// Realization of the join: barycentric coordinates are concatenated,
    /// each vertex keeps its height.
    pub fn join(&self, other: &GeometricRealization) -> GeometricRealization {
        let (d, d2) = (self.coords.first().map_or(0, Vec::len) + 1, other.coords.first().map_or(0, Vec::len) + 1);
        let zero = BigRational::zero();
        let mut bary = Vec::new();
        for j in 0..self.coords.len() {
            let mut b = self.barycentric(j);
            b.extend(std::iter::repeat_n(zero.clone(), d2));
            bary.push(b);
        }
        for j in 0..other.coords.len() {
            let mut b = vec![zero.clone(); d];
            b.extend(other.barycentric(j));
            bary.push(b);
        }
        let heights = self.heights.iter().chain(&other.heights).cloned().collect();
        GeometricRealization::from_barycentric(&bary, heights)
    }

    pub fn with_heights(&self, heights: Vec<BigRational>) -> Self {
        GeometricRealization {
            coords: self.coords.clone(),
            heights,
        }
    }

    /// Checks the realization invariants against `t`.
    pub fn check(&self, t: &Triangulation) -> Result<()> {
        let d = t.d();
        if self.coords.len() != t.n() || self.heights.len() != t.n() {
            return Err(Error::DimensionMismatch("one point and height per vertex".into()));
        }
        for (j, c) in self.coords.iter().enumerate() {
            if c.len() + 1 != d {
                return Err(Error::DimensionMismatch(format!(
                    "vertex `{}` has {} coordinates, expected {}",
                    t.ids()[j],
                    c.len(),
                    d - 1
                )));
            }
            let carrier = t.sigma_of_vertex(j);
            for (i, l) in self.barycentric(j).iter().enumerate() {
                let ok = if carrier.contains(i) { l.is_positive() } else { l.is_zero() };
                if !ok {
                    return Err(Error::Input(format!(
                        "vertex `{}` is not in the relative interior of its carrier face",
                        t.ids()[j]
                    )));
                }
            }
        }
        for f in t.facets() {
            if f.len() != d || Rationals.is_zero(&determinant(&Rationals, &self.affine_matrix(&f.to_vec()))) {
                return Err(Error::Input(format!("degenerate facet {:?}", t.face_ids(f))));
            }
        }
        Ok(())
    }

    /// Rows `(x_j, 1)` for the given vertices.
    fn affine_matrix(&self, vertices: &[usize]) -> Matrix<BigRational> {
        Matrix::from_rows(
            vertices.len(),
            vertices
                .iter()
                .map(|&j| self.coords[j].iter().cloned().chain(std::iter::once(BigRational::one())).collect())
                .collect(),
        )
    }
}

/// Lower-hull test: for every facet `F`, the affine function agreeing with
/// the heights on `F` lies strictly below every other vertex.
pub fn verify_regular(t: &Triangulation, g: &GeometricRealization) -> Result<RegularityReport> {
    g.check(t)?;
    let q = Rationals;
    let mut violations = Vec::new();
    for f in t.facets() {
        let verts = f.to_vec();
        let m = g.affine_matrix(&verts);
        let rhs: Vec<BigRational> = verts.iter().map(|&j| g.heights[j].clone()).collect();
        let affine = solve(&q, &m, &rhs)
            .particular()
            .map(<[BigRational]>::to_vec)
            .ok_or_else(|| Error::Input(format!("degenerate facet {:?}", t.face_ids(f))))?;
        for v in (0..t.n()).filter(|&v| !f.contains(v)) {
            let point: Vec<BigRational> = g.coords[v].iter().cloned().chain(std::iter::once(BigRational::one())).collect();
            let value: BigRational = point.iter().zip(&affine).map(|(a, b)| a * b).sum();
            let gap = value - &g.heights[v];
            if !gap.is_negative() {
                violations.push(RegularityViolation {
                    facet: t.face_ids(f),
                    vertex: t.ids()[v].clone(),
                    gap: q.format(&gap),
                });
            }
        }
    }
    Ok(RegularityReport {
        regular: violations.is_empty(),
        violations,
    })
}

/// The interior-point triangle with `w` at the barycenter.
pub fn interior_triangle_realization(heights: [i64; 4]) -> GeometricRealization {
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    GeometricRealization {
        coords: vec![
            vec![r(0, 1), r(0, 1)],
            vec![r(1, 1), r(0, 1)],
            vec![r(0, 1), r(1, 1)],
            vec![r(1, 3), r(1, 3)],
        ],
        heights: heights.iter().map(|&h| r(h, 1)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn interior_triangle_certificates() {
        let t = catalog::interior_point(3).unwrap();
        let good = interior_triangle_realization([0, 0, 0, -1]);
        let report = verify_regular(&t, &good).unwrap();
        assert!(report.regular, "{report:?}");
        let flat = interior_triangle_realization([0, 0, 0, 0]);
        let report = verify_regular(&t, &flat).unwrap();
        assert!(!report.regular);
        assert_eq!(report.violations.len(), 3);
        assert_eq!(report.violations[0].gap, "0");
    }

    #[test]
    fn join_of_regular_is_regular() {
        let g1 = catalog::interior_point(3).unwrap();
        let r1 = interior_triangle_realization([0, 0, 0, -1]);
        let g2 = g1.join(&g1).unwrap();
        let r2 = r1.join(&r1);
        assert!(verify_regular(&g2, &r2).unwrap().regular);
    }

    #[test]
    fn realization_errors() {
        let t = catalog::interior_point(3).unwrap();
        let mut bad = interior_triangle_realization([0, 0, 0, -1]);
        bad.coords[3] = vec![BigRational::new(1.into(), 2u32.into()), BigRational::zero()];
        assert!(verify_regular(&t, &bad).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = catalog::interior_point(3).unwrap();
        let r = interior_triangle_realization([0, 0, 0, -1]);
        let text = serde_json::to_string(&r.to_json(&t)).unwrap();
        assert!(text.contains("\"1/3\""));
        assert_eq!(GeometricRealization::from_json(&t, &text).unwrap(), r);
    }
}
