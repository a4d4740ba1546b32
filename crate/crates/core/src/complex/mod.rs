//! Triangulations of simplices and the simplicial complexes around them.

mod homology;
mod json;
mod localh;
mod simplicial;
mod triangulation;

pub use homology::{homology_validate, homology_validate_spec, HomologyReport, SubsetVerdict};
pub use json::{OverrideJson, TriangulationJson, VertexJson};
pub use localh::LocalHMethod;
pub use simplicial::{h_from_f, SimplicialComplex};
pub use triangulation::{
    v_set_elements, Classification, ConedSphere, FaceCensus, Link, Triangulation, ValidationReport,
    Violation,
};
