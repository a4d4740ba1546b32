use serde::{Deserialize, Serialize};

use super::triangulation::{v_set_elements, v_set_from_elements, Triangulation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: String,
    pub sigma: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverrideJson {
    pub face: Vec<String>,
    pub sigma: Vec<usize>,
}

/// On-disk form of a [`Triangulation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationJson {
    pub d: usize,
    pub vertices: Vec<VertexJson>,
    pub facets: Vec<Vec<String>>,
    #[serde(default)]
    pub sigma_overrides: Vec<OverrideJson>,
}

impl TriangulationJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<Triangulation> {
        let d = self.d;
        for v in &self.vertices {
            if v.sigma.is_empty() {
                return Err(Error::EmptyVertexSigma(v.id.clone()));
            }
        }
        let ids: Vec<String> = self.vertices.iter().map(|v| v.id.clone()).collect();
        let lookup = |face: &[String]| -> Result<crate::bitset::BitSet> {
            face.iter().try_fold(crate::bitset::BitSet::EMPTY, |s, name| {
                ids.iter()
                    .position(|id| id == name)
                    .map(|i| s.with(i))
                    .ok_or_else(|| Error::UnknownVertex(name.clone()))
            })
        };
        let vertex_sigma = self
            .vertices
            .iter()
            .map(|v| v_set_from_elements(d, &v.sigma))
            .collect::<Result<Vec<_>>>()?;
        let facets = self
            .facets
            .iter()
            .map(|f| lookup(f))
            .collect::<Result<Vec<_>>>()?;
        let overrides = self
            .sigma_overrides
            .iter()
            .map(|o| Ok((lookup(&o.face)?, v_set_from_elements(d, &o.sigma)?)))
            .collect::<Result<Vec<_>>>()?;
        Triangulation::from_parts(d, ids, vertex_sigma, facets, overrides)
    }
}

impl Triangulation {
    pub fn from_json(text: &str) -> Result<Self> {
        TriangulationJson::parse(text)?.build()
    }

    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson {
            d: self.d(),
            vertices: self
                .ids()
                .iter()
                .zip(self.vertex_sigmas())
                .map(|(id, &s)| VertexJson {
                    id: id.clone(),
                    sigma: v_set_elements(s),
                })
                .collect(),
            facets: self.facets().into_iter().map(|f| self.face_ids(f)).collect(),
            sigma_overrides: self
                .overrides()
                .iter()
                .map(|&(f, s)| OverrideJson {
                    face: self.face_ids(f),
                    sigma: v_set_elements(s),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip() {
        let t = catalog::figure1();
        let text = serde_json::to_string(&t.to_json()).unwrap();
        let back = Triangulation::from_json(&text).unwrap();
        assert_eq!(back.to_json(), t.to_json());
        assert_eq!(back.interior_faces(), t.interior_faces());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Triangulation::from_json("{"), Err(Error::Json(_))));
        let empty = r#"{"d":1,"vertices":[{"id":"a","sigma":[]}],"facets":[["a"]]}"#;
        assert!(matches!(Triangulation::from_json(empty), Err(Error::EmptyVertexSigma(_))));
        let extra = r#"{"d":1,"vertices":[],"facets":[],"colour":1}"#;
        assert!(Triangulation::from_json(extra).is_err());
    }
}
