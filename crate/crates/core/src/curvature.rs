//! Forman-Ricci curvature of edges in a 2-dimensional polyhedral complex,
//! in weighted and combinatorial forms, together with the edge (Bochner)
//! Laplacian and the rough Laplacian it decomposes into.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{EdgeId, FaceId, PolyhedralComplex, VertexId};
use crate::error::{Error, Result};

/// Which curvature formula to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurvatureMode {
    /// Full weighted formula over faces, endpoints, and parallel edges.
    Weighted,
    /// Counting form: parents minus parallels plus 2.
    Combinatorial,
    /// Degenerate graph case: 4 minus the endpoint degrees. Requires a
    /// face-free complex.
    OneDim,
}

impl CurvatureMode {
    pub fn parse(s: &str) -> Option<CurvatureMode> {
        match s {
            "weighted" => Some(CurvatureMode::Weighted),
            "combinatorial" => Some(CurvatureMode::Combinatorial),
            "1d" => Some(CurvatureMode::OneDim),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurvatureMode::Weighted => "weighted",
            CurvatureMode::Combinatorial => "combinatorial",
            CurvatureMode::OneDim => "1d",
        }
    }
}

/// Ascending intersection of two sorted face-id slices.
fn shared_faces(a: &[FaceId], b: &[FaceId]) -> Vec<FaceId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn shared_vertices(c: &PolyhedralComplex, e1: EdgeId, e2: EdgeId) -> Vec<VertexId> {
    let a = c.edge(e1).endpoints();
    let b = c.edge(e2).endpoints();
    a.into_iter().filter(|v| b.contains(v)).collect()
}

/// Weighted Forman-Ricci curvature of edge `e`:
/// ω(e)·[ Σ_{f>e} ω(e)/ω(f) + Σ_{v<e} ω(v)/ω(e)
///        − Σ_{ê ∥ e} | Σ_{f>e,ê} √(ω(e)ω(ê))/ω(f) − Σ_{v<e,ê} ω(v)/√(ω(e)ω(ê)) | ]
/// where the last sum ranges over the parallel edges of `e`.
pub fn forman_ricci_weighted(c: &PolyhedralComplex, e: EdgeId) -> Result<f64> {
    let parents = c.parents_of_edge(e)?;
    let edge = c.edge(e);
    let we = edge.weight;
    let mut acc = 0.0;
    for &f in parents {
        acc += we / c.face(f).weight;
    }
    acc += (c.vertex_weight(edge.u) + c.vertex_weight(edge.v)) / we;
    for p in c.parallel_edges(e)? {
        let wp = c.edge(p).weight;
        let root = (we * wp).sqrt();
        let mut face_sum = 0.0;
        for f in shared_faces(parents, c.parents_of_edge(p)?) {
            face_sum += root / c.face(f).weight;
        }
        let mut vertex_sum = 0.0;
        for v in shared_vertices(c, e, p) {
            vertex_sum += c.vertex_weight(v) / root;
        }
        acc -= (face_sum - vertex_sum).abs();
    }
    Ok(we * acc)
}

/// Combinatorial Forman-Ricci curvature: #faces over `e` − #parallel edges + 2.
pub fn forman_ricci_combinatorial(c: &PolyhedralComplex, e: EdgeId) -> Result<i64> {
    let parents = c.parents_of_edge(e)?.len() as i64;
    let parallels = c.parallel_edges(e)?.len() as i64;
    Ok(parents - parallels + 2)
}

/// Graph (1-dimensional) Forman-Ricci curvature: 4 − deg(u) − deg(v).
/// Only defined on face-free complexes; equals the combinatorial value there.
pub fn forman_ricci_1d(c: &PolyhedralComplex, e: EdgeId) -> Result<i64> {
    if c.face_count() > 0 {
        return Err(Error::Misuse(
            "1d curvature mode requires a face-free complex".into(),
        ));
    }
    let edge = c.edge_checked(e)?;
    Ok(4 - c.degree(edge.u) as i64 - c.degree(edge.v) as i64)
}

/// Curvature of every edge under `mode`, in edge-id order.
pub fn ricci_all(c: &PolyhedralComplex, mode: CurvatureMode) -> Result<Vec<f64>> {
    if mode == CurvatureMode::OneDim && c.face_count() > 0 {
        return Err(Error::Misuse(
            "1d curvature mode requires a face-free complex".into(),
        ));
    }
    let ids: Vec<EdgeId> = c.edge_ids_iter().collect();
    ids.par_iter()
        .map(|&e| match mode {
            CurvatureMode::Weighted => forman_ricci_weighted(c, e),
            CurvatureMode::Combinatorial => forman_ricci_combinatorial(c, e).map(|x| x as f64),
            CurvatureMode::OneDim => forman_ricci_1d(c, e).map(|x| x as f64),
        })
        .collect()
}

/// Change in the combinatorial curvature of a boundary edge when a face of
/// degree `face_degree` is glued onto it, valid when the new face's boundary
/// edges previously shared no face with one another: +6 − degree.
pub fn glue_delta(face_degree: usize) -> i64 {
    debug_assert!(face_degree >= 3);
    6 - face_degree as i64
}

fn edge_sense_in_face(c: &PolyhedralComplex, f: FaceId, e: EdgeId) -> f64 {
    let rec = c.face(f);
    let d = rec.degree();
    for i in 0..d {
        if rec.boundary_edges()[i] == e {
            // Boundary edge i runs boundary[i] -> boundary[i+1]; the edge's
            // own orientation is small endpoint -> large endpoint.
            return if rec.boundary()[i] == c.edge(e).u { 1.0 } else { -1.0 };
        }
    }
    unreachable!("edge {e} not on face {f}");
}

/// One entry of the edge (Bochner) Laplacian. Both indices may coincide.
///
/// Diagonal: Σ_{f>e} ω(e)/ω(f) + Σ_{v<e} ω(v)/ω(e). Off-diagonal:
/// Σ_{f>e1,e2} ε_f √(ω(e1)ω(e2))/ω(f) + Σ_{v<e1,e2} ε_v ω(v)/√(ω(e1)ω(e2)),
/// with edges oriented from smaller to larger endpoint, ε_v = +1 when both
/// edges point into or both out of the shared vertex, and ε_f = +1 when the
/// face's canonical cycle traverses both edges with the same sense.
pub fn bochner_entry(c: &PolyhedralComplex, e1: EdgeId, e2: EdgeId) -> Result<f64> {
    let p1 = c.parents_of_edge(e1)?;
    let p2 = c.parents_of_edge(e2)?;
    if e1 == e2 {
        let edge = c.edge(e1);
        let mut acc = 0.0;
        for &f in p1 {
            acc += edge.weight / c.face(f).weight;
        }
        acc += (c.vertex_weight(edge.u) + c.vertex_weight(edge.v)) / edge.weight;
        return Ok(acc);
    }
    let (a, b) = (c.edge(e1), c.edge(e2));
    let root = (a.weight * b.weight).sqrt();
    let mut acc = 0.0;
    for f in shared_faces(p1, p2) {
        let eps = edge_sense_in_face(c, f, e1) * edge_sense_in_face(c, f, e2);
        acc += eps * root / c.face(f).weight;
    }
    for v in shared_vertices(c, e1, e2) {
        // Both oriented low -> high: an edge points into v iff v is its head.
        let eps = if (a.v == v) == (b.v == v) { 1.0 } else { -1.0 };
        acc += eps * c.vertex_weight(v) / root;
    }
    Ok(acc)
}

/// Dense edge-by-edge Bochner Laplacian. Quadratic in the edge count; meant
/// for small complexes.
pub fn bochner_matrix(c: &PolyhedralComplex) -> Result<Vec<Vec<f64>>> {
    let ids: Vec<EdgeId> = c.edge_ids_iter().collect();
    ids.par_iter()
        .map(|&e1| ids.iter().map(|&e2| bochner_entry(c, e1, e2)).collect())
        .collect()
}

/// Rough Laplacian diagonal of edge `e` in the combinatorial case:
/// Σ_{f>e} deg(f) − 5·#{f>e} + Σ_{v<e} deg(v) − 2. Equals the Bochner
/// diagonal minus the counting curvature function of the edge.
pub fn rough_laplacian(c: &PolyhedralComplex, e: EdgeId) -> Result<i64> {
    let parents = c.parents_of_edge(e)?;
    let face_part: i64 =
        parents.iter().map(|&f| c.face(f).degree() as i64 - 5).sum();
    let edge = c.edge(e);
    Ok(face_part + c.degree(edge.u) as i64 + c.degree(edge.v) as i64 - 2)
}

/// Histogram of curvature values with equal-width bins spanning min..max.
#[derive(Clone, Debug, Serialize)]
pub struct Histogram {
    pub min: f64,
    pub max: f64,
    pub bin_width: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    /// Bin count: √n clamped to 1..=20, single bin when all values agree.
    pub fn of(values: &[f64]) -> Option<Histogram> {
        if values.is_empty() {
            return None;
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if min == max {
            return Some(Histogram { min, max, bin_width: 0.0, counts: vec![values.len()] });
        }
        let bins = ((values.len() as f64).sqrt().ceil() as usize).clamp(1, 20);
        let width = (max - min) / bins as f64;
        let mut counts = vec![0usize; bins];
        for &v in values {
            let idx = (((v - min) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        Some(Histogram { min, max, bin_width: width, counts })
    }
}

/// Per-edge curvature values with summary statistics.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    #[serde(skip)]
    pub values: Vec<f64>,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
    pub histogram: Histogram,
}

impl CurvatureReport {
    pub fn from_values(values: Vec<f64>) -> Result<CurvatureReport> {
        let histogram = Histogram::of(&values)
            .ok_or_else(|| Error::EmptyInput("no edges to summarize".into()))?;
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Ok(CurvatureReport { mean, min: histogram.min, max: histogram.max, histogram, values })
    }
}

/// Curvature of every edge plus summary, under `mode`.
pub fn curvature_report(c: &PolyhedralComplex, mode: CurvatureMode) -> Result<CurvatureReport> {
    CurvatureReport::from_values(ricci_all(c, mode)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::PolyhedralComplex;
    use approx::assert_relative_eq;

    fn vid(i: u32) -> VertexId {
        VertexId(i)
    }

    fn filled_triangle() -> PolyhedralComplex {
        let mut c = PolyhedralComplex::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        c.add_face(&[vid(0), vid(1), vid(2)], 1.0).unwrap();
        c
    }

    fn tetrahedron() -> PolyhedralComplex {
        let mut c = PolyhedralComplex::from_edges(
            4,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            c.add_face(&[vid(t[0]), vid(t[1]), vid(t[2])], 1.0).unwrap();
        }
        c
    }

    #[test]
    fn filled_triangle_has_curvature_three() {
        let c = filled_triangle();
        for e in c.edge_ids_iter() {
            assert_eq!(forman_ricci_combinatorial(&c, e).unwrap(), 3);
            assert_relative_eq!(forman_ricci_weighted(&c, e).unwrap(), 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn tetrahedron_boundary_has_curvature_four() {
        let c = tetrahedron();
        for e in c.edge_ids_iter() {
            assert!(c.parallel_edges(e).unwrap().is_empty());
            assert_eq!(forman_ricci_combinatorial(&c, e).unwrap(), 4);
            assert_relative_eq!(forman_ricci_weighted(&c, e).unwrap(), 4.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn star_edge_has_negative_curvature() {
        let c = PolyhedralComplex::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)])
            .unwrap();
        for e in c.edge_ids_iter() {
            assert_eq!(forman_ricci_combinatorial(&c, e).unwrap(), -2);
            assert_eq!(forman_ricci_1d(&c, e).unwrap(), -2);
        }
    }

    #[test]
    fn one_dim_values_on_paths_and_isolated_edges() {
        let path = PolyhedralComplex::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let middle = path.edge_between(vid(1), vid(2)).unwrap();
        assert_eq!(forman_ricci_1d(&path, middle).unwrap(), 0);
        let lone = PolyhedralComplex::from_edges(2, &[(0, 1)]).unwrap();
        let e = crate::complex::EdgeId(0);
        assert_eq!(forman_ricci_1d(&lone, e).unwrap(), 2);
        assert_eq!(forman_ricci_combinatorial(&lone, e).unwrap(), 2);
        assert_relative_eq!(forman_ricci_weighted(&lone, e).unwrap(), 2.0);
    }

    #[test]
    fn one_dim_mode_rejects_faced_complexes() {
        let c = filled_triangle();
        assert!(matches!(
            forman_ricci_1d(&c, crate::complex::EdgeId(0)),
            Err(Error::Misuse(_))
        ));
        assert!(ricci_all(&c, CurvatureMode::OneDim).is_err());
    }

    #[test]
    fn bare_cycle_has_zero_curvature() {
        let c = PolyhedralComplex::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        for e in c.edge_ids_iter() {
            assert_eq!(forman_ricci_combinatorial(&c, e).unwrap(), 0);
            assert_relative_eq!(forman_ricci_weighted(&c, e).unwrap(), 0.0);
        }
    }

    #[test]
    fn unit_weights_reduce_weighted_to_combinatorial() {
        // Bowtie with one filled triangle plus a pendant edge.
        let mut c = PolyhedralComplex::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (3, 4), (0, 5)],
        )
        .unwrap();
        c.add_face(&[vid(0), vid(1), vid(2)], 1.0).unwrap();
        for e in c.edge_ids_iter() {
            let w = forman_ricci_weighted(&c, e).unwrap();
            let k = forman_ricci_combinatorial(&c, e).unwrap() as f64;
            assert_relative_eq!(w, k, epsilon = 1e-12);
        }
    }

    #[test]
    fn scaling_edge_weights_scales_isolated_edge_curvature() {
        // Isolated edge, weight 2: 2 * (0 + (1 + 1)/2) = 2.
        let c = PolyhedralComplex::from_weighted_edges(2, &[(0, 1, 2.0)]).unwrap();
        assert_relative_eq!(
            forman_ricci_weighted(&c, crate::complex::EdgeId(0)).unwrap(),
            2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn glue_delta_matches_hand_counts() {
        assert_eq!(glue_delta(3), 3);
        assert_eq!(glue_delta(4), 2);
        assert_eq!(glue_delta(6), 0);
        // Filling a bare triangle raises each boundary edge by 3.
        let mut c = PolyhedralComplex::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let before: Vec<i64> = c
            .edge_ids_iter()
            .map(|e| forman_ricci_combinatorial(&c, e).unwrap())
            .collect();
        c.add_face(&[vid(0), vid(1), vid(2)], 1.0).unwrap();
        for (i, e) in c.edge_ids_iter().enumerate() {
            assert_eq!(
                forman_ricci_combinatorial(&c, e).unwrap(),
                before[i] + glue_delta(3)
            );
        }
    }

    #[test]
    fn bochner_diagonal_counts_faces_plus_two() {
        let c = tetrahedron();
        for e in c.edge_ids_iter() {
            assert_relative_eq!(bochner_entry(&c, e, e).unwrap(), 4.0);
        }
        let t = filled_triangle();
        for e in t.edge_ids_iter() {
            assert_relative_eq!(bochner_entry(&t, e, e).unwrap(), 3.0);
        }
    }

    #[test]
    fn bochner_matrix_is_symmetric_and_zero_on_disjoint_edges() {
        let mut c = PolyhedralComplex::from_edges(
            6,
            &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (4, 5)],
        )
        .unwrap();
        c.add_face(&[vid(0), vid(1), vid(2)], 1.0).unwrap();
        let m = bochner_matrix(&c).unwrap();
        let n = c.edge_count();
        for i in 0..n {
            for j in 0..n {
                assert_relative_eq!(m[i][j], m[j][i], epsilon = 1e-12);
            }
        }
        // Edge (4,5) shares nothing with edge (0,1).
        let a = c.edge_between(vid(0), vid(1)).unwrap();
        let b = c.edge_between(vid(4), vid(5)).unwrap();
        assert_eq!(m[a.index()][b.index()], 0.0);
    }

    #[test]
    fn rough_laplacian_hand_values() {
        let t = filled_triangle();
        for e in t.edge_ids_iter() {
            assert_eq!(rough_laplacian(&t, e).unwrap(), 0);
        }
        let tet = tetrahedron();
        for e in tet.edge_ids_iter() {
            assert_eq!(rough_laplacian(&tet, e).unwrap(), 0);
        }
        // Face-free edge with endpoint degrees (2, 2).
        let path = PolyhedralComplex::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let middle = path.edge_between(vid(1), vid(2)).unwrap();
        assert_eq!(rough_laplacian(&path, middle).unwrap(), 2);
    }

    #[test]
    fn report_summarizes_values() {
        let c = filled_triangle();
        let r = curvature_report(&c, CurvatureMode::Combinatorial).unwrap();
        assert_relative_eq!(r.mean, 3.0);
        assert_eq!((r.min, r.max), (3.0, 3.0));
        assert_eq!(r.histogram.counts, vec![3]);
        assert_eq!(r.histogram.bin_width, 0.0);
    }

    #[test]
    fn histogram_bins_cover_the_range() {
        let values = vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0];
        let h = Histogram::of(&values).unwrap();
        assert_eq!(h.counts.iter().sum::<usize>(), values.len());
        assert_eq!(h.counts.len(), 3);
        assert_relative_eq!(h.bin_width * h.counts.len() as f64, h.max - h.min);
    }
}
