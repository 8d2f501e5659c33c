//! Geometric analysis of networks through a two-dimensional polyhedral lens:
//! lift a graph to a complex by filling triangles, chordless cycles, and
//! cliques; compute Forman-Ricci curvature, Bochner-style Laplacians, and
//! curvature-function summaries; evaluate Euler characteristics by discrete
//! Gauss-Bonnet; evolve edge weights under a normalized Ricci flow; and
//! measure edge dispersion.

#![forbid(unsafe_code)]

pub mod bloch;
pub mod complex;
pub mod curvature;
pub mod dispersion;
pub mod error;
pub mod faces;
pub mod flow;
pub mod ingest;
pub mod weights;

pub use complex::{
    canonical_cycle, Edge, EdgeId, FaceId, FaceRecord, PolyhedralComplex, SimplexRecord, VertexId,
};
pub use error::{Error, Result};
