//! Cell curvature functions R0/R1/R2 on a polyhedral complex, the
//! Gauss-Bonnet Euler characteristic their alternating sum yields, the
//! combinatorial Euler characteristic, mean-curvature positivity criteria,
//! and the prototype classification of a complex by the sign of χ.
//!
//! Everything here is combinatorial: counts of parents, children, and
//! neighbors. All values are multiples of 1/2, so χ is accumulated in exact
//! half-integer units and tolerance never enters the combinatorial case.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{EdgeId, PolyhedralComplex};
use crate::error::Result;

/// Auxiliary counts of one edge: parents (A1), child vertices (B1, always 2),
/// total boundary size of parent faces (U1), total endpoint degree (D1), and
/// the size N1 of the symmetric difference between the face-sharing and
/// vertex-sharing edge neighborhoods.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeAux {
    pub a1: usize,
    pub b1: usize,
    pub u1: usize,
    pub d1: usize,
    pub n1: usize,
}

/// Auxiliary counts of edge `e`. The two neighborhoods behind N1 are built
/// as explicit sets, independently of the parallelism query in the complex
/// module, so the two act as cross-checks of one another.
pub fn edge_aux(c: &PolyhedralComplex, e: EdgeId) -> Result<EdgeAux> {
    let parents = c.parents_of_edge(e)?;
    let edge = c.edge(e);
    let a1 = parents.len();
    let u1: usize = parents.iter().map(|&f| c.face(f).degree()).sum();
    let d1 = c.degree(edge.u) + c.degree(edge.v);
    let mut by_face: BTreeSet<EdgeId> = BTreeSet::new();
    for &f in parents {
        for &be in c.face(f).boundary_edges() {
            if be != e {
                by_face.insert(be);
            }
        }
    }
    let mut by_vertex: BTreeSet<EdgeId> = BTreeSet::new();
    for v in [edge.u, edge.v] {
        for &ie in c.incident_edges(v)? {
            if ie != e {
                by_vertex.insert(ie);
            }
        }
    }
    let n1 = by_face.symmetric_difference(&by_vertex).count();
    Ok(EdgeAux { a1, b1: 2, u1, d1, n1 })
}

/// Twice the vertex curvature R0 = 1 + (3/2)·deg − deg², kept integer.
pub fn r0_twice(degree: usize) -> i64 {
    let d = degree as i64;
    2 + 3 * d - 2 * d * d
}

/// Vertex curvature R0(v) as a real.
pub fn r0(degree: usize) -> f64 {
    r0_twice(degree) as f64 / 2.0
}

/// Twice the edge curvature R1 = 1 + 6·A1 + (3/2)·B1 − U1 − D1.
pub fn r1_twice(aux: &EdgeAux) -> i64 {
    2 + 12 * aux.a1 as i64 + 3 * aux.b1 as i64 - 2 * aux.u1 as i64 - 2 * aux.d1 as i64
}

/// Edge curvature R1(e) as a real; an integer whenever B1 = 2.
pub fn r1(aux: &EdgeAux) -> f64 {
    r1_twice(aux) as f64 / 2.0
}

/// Face curvature R2 = 1 + 6·d − d² for a face of boundary degree d.
pub fn r2(face_degree: usize) -> i64 {
    let d = face_degree as i64;
    1 + 6 * d - d * d
}

/// Twice the Gauss-Bonnet sum Σ R0 − Σ R1 + Σ R2, exact.
pub fn euler_characteristic_gb_twice(c: &PolyhedralComplex) -> Result<i64> {
    let mut acc: i64 = c.vertices().map(|v| r0_twice(c.degree(v))).sum();
    for e in c.edge_ids_iter() {
        acc -= r1_twice(&edge_aux(c, e)?);
    }
    acc += c.faces().map(|(_, f)| 2 * r2(f.degree())).sum::<i64>();
    Ok(acc)
}

/// Gauss-Bonnet Euler characteristic Σ R0 − Σ R1 + Σ R2.
pub fn euler_characteristic_gb(c: &PolyhedralComplex) -> Result<f64> {
    Ok(euler_characteristic_gb_twice(c)? as f64 / 2.0)
}

/// Combinatorial Euler characteristic #V − #E + #F. The simplex inventory
/// of dimension 3 and above stays out: the complex is 2-dimensional.
pub fn euler_characteristic_comb(c: &PolyhedralComplex) -> i64 {
    c.vertex_count() as i64 - c.edge_count() as i64 + c.face_count() as i64
}

/// Limiting shape class by the sign of the Euler characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Prototype {
    Spherical,
    Euclidean,
    Hyperbolic,
}

impl Prototype {
    pub fn name(self) -> &'static str {
        match self {
            Prototype::Spherical => "spherical",
            Prototype::Euclidean => "euclidean",
            Prototype::Hyperbolic => "hyperbolic",
        }
    }
}

/// Classify by sign of χ: positive is spherical, zero (within 1e-9, for
/// sums computed in floating point) is euclidean, negative is hyperbolic.
pub fn classify_prototype(chi: f64) -> Prototype {
    if chi.abs() <= 1e-9 {
        Prototype::Euclidean
    } else if chi > 0.0 {
        Prototype::Spherical
    } else {
        Prototype::Hyperbolic
    }
}

/// Mean-curvature positivity criteria. Each condition, when it holds, is a
/// structural guarantee that χ > 0; independently, a positive mean edge
/// curvature R̄1 forces χ > 0, which is checked against the computed χ.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PositivityCriteria {
    /// B̄1 ≥ 20/9. Never holds on a polyhedral complex, where B̄1 = 2.
    pub cond1: bool,
    /// B̄1 = 2 and Ā1 ≥ 2.
    pub cond2: bool,
    /// (Ā1 + B̄1)² − 6·Ā1 − (3/2)·B̄1 − 1 ≥ 0, with Ā1 > 0 required: the
    /// face-free root Ā1 = 0 is vacuous and excluded.
    pub cond3: bool,
    /// R̄1 > 0, the hypothesis under which χ > 0 is forced.
    pub positive_mean_r1: bool,
    /// When `positive_mean_r1`, whether the computed χ is indeed positive;
    /// vacuously true otherwise.
    pub consistent_with_chi: bool,
}

/// Full per-cell curvature report for a complex.
#[derive(Clone, Debug, Serialize)]
pub struct BlochReport {
    /// Per-vertex R0, indexed by vertex id.
    pub r0: Vec<f64>,
    /// Per-edge R1, indexed by edge id.
    pub r1: Vec<f64>,
    /// Per-face R2, indexed by face id.
    pub r2: Vec<f64>,
    pub chi_gb: f64,
    pub chi_comb: i64,
    /// χ floor-divided by the triangular face count; absent without triangles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_mean: Option<i64>,
    pub mean_r1: Option<f64>,
    pub mean_a1: Option<f64>,
    pub mean_b1: Option<f64>,
    pub prototype: Prototype,
    pub criteria: PositivityCriteria,
}

/// Evaluate every cell curvature, both Euler characteristics, the positivity
/// criteria, and the prototype class of `c`.
pub fn bloch_report(c: &PolyhedralComplex) -> Result<BlochReport> {
    let r0_vals: Vec<f64> = c.vertices().map(|v| r0(c.degree(v))).collect();
    let mut r1_vals = Vec::with_capacity(c.edge_count());
    let mut a1_sum = 0usize;
    let mut b1_sum = 0usize;
    for e in c.edge_ids_iter() {
        let aux = edge_aux(c, e)?;
        a1_sum += aux.a1;
        b1_sum += aux.b1;
        r1_vals.push(r1(&aux));
    }
    let r2_vals: Vec<f64> = c.faces().map(|(_, f)| r2(f.degree()) as f64).collect();
    let chi_gb = euler_characteristic_gb(c)?;
    let chi_comb = euler_characteristic_comb(c);
    let triangles = c.faces().filter(|(_, f)| f.degree() == 3).count() as i64;
    let chi_mean = (triangles > 0).then(|| chi_comb.div_euclid(triangles));
    let n_edges = c.edge_count();
    let (mean_r1, mean_a1, mean_b1) = if n_edges > 0 {
        (
            Some(r1_vals.iter().sum::<f64>() / n_edges as f64),
            Some(a1_sum as f64 / n_edges as f64),
            Some(b1_sum as f64 / n_edges as f64),
        )
    } else {
        (None, None, None)
    };
    let criteria = {
        let (a1, b1, r1m) = (
            mean_a1.unwrap_or(0.0),
            mean_b1.unwrap_or(0.0),
            mean_r1.unwrap_or(0.0),
        );
        let cond1 = n_edges > 0 && b1 >= 20.0 / 9.0;
        let cond2 = n_edges > 0 && b1 == 2.0 && a1 >= 2.0;
        let cond3 = n_edges > 0
            && a1 > 0.0
            && (a1 + b1) * (a1 + b1) - 6.0 * a1 - 1.5 * b1 - 1.0 >= 0.0;
        let positive_mean_r1 = n_edges > 0 && r1m > 0.0;
        PositivityCriteria {
            cond1,
            cond2,
            cond3,
            positive_mean_r1,
            consistent_with_chi: !positive_mean_r1 || chi_comb > 0,
        }
    };
    Ok(BlochReport {
        r0: r0_vals,
        r1: r1_vals,
        r2: r2_vals,
        chi_gb,
        chi_comb,
        chi_mean,
        mean_r1,
        mean_a1,
        mean_b1,
        prototype: classify_prototype(chi_gb),
        criteria,
    })
}
