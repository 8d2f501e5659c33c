//! Edge dispersion: for an edge (u, v), how spread-out the common
//! neighborhood of u and v is. Each unordered pair {i, j} of common
//! neighbors contributes 1 when i and j are not adjacent and no third
//! common neighbor of u and v is adjacent to both — i.e. the pair is
//! disconnected even through the rest of the shared neighborhood.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{PolyhedralComplex, VertexId};
use crate::error::Result;

/// Dispersion of one edge, along with the size of the common neighborhood.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DispersionValue {
    pub u: VertexId,
    pub v: VertexId,
    /// Number of common neighbors of u and v.
    pub common: usize,
    pub disp: u64,
}

/// Common neighbors of `u` and `v`, sorted, excluding both endpoints.
pub fn common_neighbors(
    c: &PolyhedralComplex,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<VertexId>> {
    let mut nu: Vec<VertexId> =
        c.incident_edges(u)?.iter().map(|&e| c.edge(e).other(u)).collect();
    let mut nv: Vec<VertexId> =
        c.incident_edges(v)?.iter().map(|&e| c.edge(e).other(v)).collect();
    nu.sort_unstable();
    nv.sort_unstable();
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < nu.len() && j < nv.len() {
        match nu[i].cmp(&nv[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if nu[i] != u && nu[i] != v {
                    out.push(nu[i]);
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(out)
}

fn count_pairs<F>(common: &[VertexId], mut disconnected: F) -> u64
where
    F: FnMut(VertexId, VertexId) -> bool,
{
    let mut disp = 0u64;
    for a in 0..common.len() {
        for b in a + 1..common.len() {
            if disconnected(common[a], common[b]) {
                disp += 1;
            }
        }
    }
    disp
}

/// Dispersion of the pair (u, v): pairs of common neighbors that are
/// non-adjacent and share no further common neighbor *within* the common
/// neighborhood of u and v.
pub fn dispersion(c: &PolyhedralComplex, u: VertexId, v: VertexId) -> Result<u64> {
    let common = common_neighbors(c, u, v)?;
    Ok(count_pairs(&common, |i, j| {
        if c.has_edge(i, j) {
            return false;
        }
        !common
            .iter()
            .any(|&w| w != i && w != j && c.has_edge(w, i) && c.has_edge(w, j))
    }))
}

/// Literal variant: a pair counts when non-adjacent with an empty *global*
/// common neighborhood. For common neighbors of an edge (u, v) that global
/// neighborhood always contains u and v themselves, so this variant is
/// identically zero on edges; it is kept for comparison.
pub fn dispersion_literal(c: &PolyhedralComplex, u: VertexId, v: VertexId) -> Result<u64> {
    let common = common_neighbors(c, u, v)?;
    let mut disp = 0u64;
    for a in 0..common.len() {
        for b in a + 1..common.len() {
            let (i, j) = (common[a], common[b]);
            if c.has_edge(i, j) {
                continue;
            }
            if common_neighbors(c, i, j)?.is_empty() {
                disp += 1;
            }
        }
    }
    Ok(disp)
}

/// Dispersion of every edge, in edge-id order.
pub fn dispersion_all(c: &PolyhedralComplex, literal: bool) -> Result<Vec<DispersionValue>> {
    let edges: Vec<_> = c.edge_ids_iter().collect();
    edges
        .par_iter()
        .map(|&e| {
            let [u, v] = c.edge(e).endpoints();
            let common = common_neighbors(c, u, v)?.len();
            let disp = if literal {
                dispersion_literal(c, u, v)?
            } else {
                dispersion(c, u, v)?
            };
            Ok(DispersionValue { u, v, common, disp })
        })
        .collect()
}
