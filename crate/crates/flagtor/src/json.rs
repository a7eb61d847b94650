//! Canonical on-disk format for complexes and graphs.
//!
//! A complex file is a JSON object `{"n": <int>, "maximal_faces": [[..], ..]}`
//! where the inner arrays are strictly increasing and the outer array is
//! sorted lexicographically. Two equal objects serialize to identical bytes.
//! Graphs use the same format with all maximal faces of size <= 2.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    n: u32,
    maximal_faces: Vec<Vec<VertexId>>,
}

pub fn complex_to_json(cx: &SimplicialComplex) -> String {
    let file = ComplexFile { n: cx.n(), maximal_faces: cx.maximal_faces() };
    serde_json::to_string(&file).expect("serialization cannot fail")
}

pub fn complex_from_json(s: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
    for f in &file.maximal_faces {
        if !f.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!("face {f:?} is not strictly increasing")));
        }
    }
    SimplicialComplex::from_faces(file.n, file.maximal_faces)
}

/// Writes a graph as a complex whose faces are its vertices and edges.
pub fn graph_to_json(g: &Graph) -> String {
    let cx = SimplicialComplex::from_faces(
        g.n(),
        g.edges().iter().map(|&(u, v)| vec![u, v]).chain((0..g.n()).map(|v| vec![v])),
    )
    .expect("graph faces are valid");
    complex_to_json(&cx)
}

/// Reads a graph: accepts any complex file and takes the 1-skeleton.
pub fn graph_from_json(s: &str) -> Result<Graph> {
    Ok(complex_from_json(s)?.skeleton_graph())
}
