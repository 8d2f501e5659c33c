//! Two-dimensional polyhedral complex: a simple undirected graph together
//! with weighted polygonal faces glued along edge cycles, plus an inventory
//! of higher-dimensional simplices (complete subgraphs).
//!
//! Invariants maintained by every constructor and mutator:
//! - edges store endpoints with `u < v`; no loops, no duplicates
//! - face boundaries are stored in canonical form (lexicographically
//!   smallest rotation over both orientations) with distinct vertices and
//!   every consecutive pair realized by an edge
//! - simplices store sorted vertex sets whose pairs are all edges
//! - all weights are finite and positive

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex, contiguous from 0 within one complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

/// Index of an edge, contiguous from 0 within one complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

/// Index of a face, contiguous from 0 within one complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FaceId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl FaceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for EdgeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::fmt::Display for FaceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Undirected weighted edge; endpoints are ordered `u < v`.
#[derive(Clone, Debug)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub weight: f64,
}

impl Edge {
    pub fn endpoints(&self) -> [VertexId; 2] {
        [self.u, self.v]
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.u == v || self.v == v
    }

    /// The endpoint that is not `v`. Panics if `v` is not an endpoint.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.u == v {
            self.v
        } else {
            debug_assert_eq!(self.v, v);
            self.u
        }
    }
}

/// Polygonal 2-face stored via its canonical boundary cycle.
#[derive(Clone, Debug)]
pub struct FaceRecord {
    boundary: Vec<VertexId>,
    boundary_edges: Vec<EdgeId>,
    pub weight: f64,
}

impl FaceRecord {
    /// Boundary vertices in canonical cyclic order.
    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    /// Boundary edges aligned with the boundary: entry `i` joins
    /// `boundary[i]` and `boundary[(i + 1) % degree]`.
    pub fn boundary_edges(&self) -> &[EdgeId] {
        &self.boundary_edges
    }

    /// Number of boundary vertices (equivalently boundary edges).
    pub fn degree(&self) -> usize {
        self.boundary.len()
    }
}

/// Inventory record for an n-simplex with n >= 2: a complete subgraph on
/// n + 1 vertices. Dimension 2 entries mirror triangular faces; entries of
/// dimension 3 and above are bookkeeping only and never enter curvature.
#[derive(Clone, Debug)]
pub struct SimplexRecord {
    vertices: Vec<VertexId>,
    pub weight: f64,
}

impl SimplexRecord {
    /// Vertices in ascending order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Canonical form of a boundary cycle: the lexicographically smallest
/// sequence among all rotations of both traversal orientations.
pub fn canonical_cycle(cycle: &[VertexId]) -> Vec<VertexId> {
    let d = cycle.len();
    let reversed: Vec<VertexId> = cycle.iter().rev().copied().collect();
    let mut best: Option<Vec<VertexId>> = None;
    for seq in [cycle, reversed.as_slice()] {
        for r in 0..d {
            let cand: Vec<VertexId> = (0..d).map(|i| seq[(r + i) % d]).collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn check_weight(w: f64, what: &str) -> Result<()> {
    if !w.is_finite() || w <= 0.0 {
        return Err(Error::Domain(format!("{what} weight must be positive and finite, got {w}")));
    }
    Ok(())
}

/// Weighted 2-dimensional polyhedral complex with a simplex inventory.
#[derive(Clone, Debug)]
pub struct PolyhedralComplex {
    labels: Vec<String>,
    vertex_weights: Vec<f64>,
    edges: Vec<Edge>,
    faces: Vec<FaceRecord>,
    simplices: Vec<SimplexRecord>,
    // Incidence indexes, kept sorted ascending by construction.
    vertex_edges: Vec<Vec<EdgeId>>,
    edge_faces: Vec<Vec<FaceId>>,
    edge_ids: HashMap<(u32, u32), EdgeId>,
    face_keys: HashSet<Vec<u32>>,
    simplex_keys: HashSet<Vec<u32>>,
}

impl PolyhedralComplex {
    /// Empty complex on `n` vertices labelled by their indices.
    pub fn new(n: usize) -> Self {
        PolyhedralComplex {
            labels: (0..n).map(|i| i.to_string()).collect(),
            vertex_weights: vec![1.0; n],
            edges: Vec::new(),
            faces: Vec::new(),
            simplices: Vec::new(),
            vertex_edges: vec![Vec::new(); n],
            edge_faces: Vec::new(),
            edge_ids: HashMap::new(),
            face_keys: HashSet::new(),
            simplex_keys: HashSet::new(),
        }
    }

    /// Complex on `n` vertices with the given unit-weight edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut c = PolyhedralComplex::new(n);
        for &(u, v) in edges {
            c.add_edge(VertexId(u), VertexId(v), 1.0)?;
        }
        Ok(c)
    }

    /// Complex on `n` vertices with explicitly weighted edges.
    pub fn from_weighted_edges(n: usize, edges: &[(u32, u32, f64)]) -> Result<Self> {
        let mut c = PolyhedralComplex::new(n);
        for &(u, v, w) in edges {
            c.add_edge(VertexId(u), VertexId(v), w)?;
        }
        Ok(c)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_weights.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_weights.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn edge_ids_iter(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    pub fn face_ids_iter(&self) -> impl Iterator<Item = FaceId> {
        (0..self.face_count() as u32).map(FaceId)
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() >= self.vertex_count() {
            return Err(Error::InvalidId { kind: "vertex", id: v.0 });
        }
        Ok(())
    }

    fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.index() >= self.edge_count() {
            return Err(Error::InvalidId { kind: "edge", id: e.0 });
        }
        Ok(())
    }

    fn check_face(&self, f: FaceId) -> Result<()> {
        if f.index() >= self.face_count() {
            return Err(Error::InvalidId { kind: "face", id: f.0 });
        }
        Ok(())
    }

    /// Replace the vertex labels. Length must match the vertex count.
    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.vertex_count() {
            return Err(Error::Structural(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.vertex_count()
            )));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label-to-id lookup table, built on demand.
    pub fn label_index(&self) -> HashMap<&str, VertexId> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), VertexId(i as u32)))
            .collect()
    }

    pub fn vertex_weight(&self, v: VertexId) -> f64 {
        self.vertex_weights[v.index()]
    }

    pub fn set_vertex_weight(&mut self, v: VertexId, w: f64) -> Result<()> {
        self.check_vertex(v)?;
        check_weight(w, "vertex")?;
        self.vertex_weights[v.index()] = w;
        Ok(())
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    /// Like [`PolyhedralComplex::edge`] but with id validation.
    pub fn edge_checked(&self, e: EdgeId) -> Result<&Edge> {
        self.check_edge(e)?;
        Ok(&self.edges[e.index()])
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().enumerate().map(|(i, e)| (EdgeId(i as u32), e))
    }

    pub fn face(&self, f: FaceId) -> &FaceRecord {
        &self.faces[f.index()]
    }

    pub fn faces(&self) -> impl Iterator<Item = (FaceId, &FaceRecord)> {
        self.faces.iter().enumerate().map(|(i, f)| (FaceId(i as u32), f))
    }

    pub fn simplices(&self) -> &[SimplexRecord] {
        &self.simplices
    }

    /// Insert an edge. Endpoints are normalized to `u < v`; loops and
    /// duplicates are rejected.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, weight: f64) -> Result<EdgeId> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        check_weight(weight, "edge")?;
        if u == v {
            return Err(Error::Structural(format!("loop at vertex {u}")));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if self.edge_ids.contains_key(&(a.0, b.0)) {
            return Err(Error::Structural(format!("duplicate edge ({a}, {b})")));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push(Edge { u: a, v: b, weight });
        self.edge_ids.insert((a.0, b.0), id);
        self.vertex_edges[a.index()].push(id);
        self.vertex_edges[b.index()].push(id);
        self.edge_faces.push(Vec::new());
        Ok(id)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edge_ids.get(&(a.0, b.0)).copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// Edges incident to `v`, ascending by id.
    pub fn incident_edges(&self, v: VertexId) -> Result<&[EdgeId]> {
        self.check_vertex(v)?;
        Ok(&self.vertex_edges[v.index()])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.vertex_edges[v.index()].len()
    }

    /// Neighbors of `v` in incident-edge order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.vertex_edges[v.index()].iter().map(move |&e| self.edges[e.index()].other(v))
    }

    pub fn set_edge_weight(&mut self, e: EdgeId, w: f64) -> Result<()> {
        self.check_edge(e)?;
        check_weight(w, "edge")?;
        self.edges[e.index()].weight = w;
        Ok(())
    }

    /// Replace all edge weights at once; `weights[i]` goes to edge `i`.
    pub fn set_edge_weights(&mut self, weights: &[f64]) -> Result<()> {
        if weights.len() != self.edge_count() {
            return Err(Error::Structural(format!(
                "{} weights for {} edges",
                weights.len(),
                self.edge_count()
            )));
        }
        for &w in weights {
            check_weight(w, "edge")?;
        }
        for (e, &w) in self.edges.iter_mut().zip(weights) {
            e.weight = w;
        }
        Ok(())
    }

    pub fn set_simplex_weight(&mut self, i: usize, w: f64) -> Result<()> {
        if i >= self.simplices.len() {
            return Err(Error::InvalidId { kind: "simplex", id: i as u32 });
        }
        check_weight(w, "simplex")?;
        self.simplices[i].weight = w;
        Ok(())
    }

    pub fn set_face_weight(&mut self, f: FaceId, w: f64) -> Result<()> {
        self.check_face(f)?;
        check_weight(w, "face")?;
        self.faces[f.index()].weight = w;
        Ok(())
    }

    /// Glue a polygonal face along the given boundary cycle. The boundary is
    /// canonicalized before storage; adding the same cycle twice (in any
    /// rotation or orientation) is an error.
    pub fn add_face(&mut self, boundary: &[VertexId], weight: f64) -> Result<FaceId> {
        if boundary.len() < 3 {
            return Err(Error::Structural(format!(
                "face boundary needs at least 3 vertices, got {}",
                boundary.len()
            )));
        }
        check_weight(weight, "face")?;
        for &v in boundary {
            self.check_vertex(v)?;
        }
        let mut seen: HashSet<VertexId> = HashSet::with_capacity(boundary.len());
        if !boundary.iter().all(|v| seen.insert(*v)) {
            return Err(Error::Structural(format!("face boundary repeats a vertex: {boundary:?}")));
        }
        let canon = canonical_cycle(boundary);
        let key: Vec<u32> = canon.iter().map(|v| v.0).collect();
        if self.face_keys.contains(&key) {
            return Err(Error::DuplicateFace(format!("{canon:?}")));
        }
        let d = canon.len();
        let mut boundary_edges = Vec::with_capacity(d);
        for i in 0..d {
            let (a, b) = (canon[i], canon[(i + 1) % d]);
            let e = self.edge_between(a, b).ok_or_else(|| {
                Error::Structural(format!("face boundary pair ({a}, {b}) is not an edge"))
            })?;
            boundary_edges.push(e);
        }
        let id = FaceId(self.faces.len() as u32);
        for &e in &boundary_edges {
            self.edge_faces[e.index()].push(id);
        }
        self.face_keys.insert(key);
        self.faces.push(FaceRecord { boundary: canon, boundary_edges, weight });
        Ok(id)
    }

    /// Record an n-simplex (n >= 2) spanning a complete subgraph.
    pub fn add_simplex(&mut self, vertices: &[VertexId], weight: f64) -> Result<usize> {
        if vertices.len() < 3 {
            return Err(Error::Structural(format!(
                "simplex needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        check_weight(weight, "simplex")?;
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut sorted: Vec<VertexId> = vertices.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Structural(format!("simplex repeats a vertex: {vertices:?}")));
        }
        for i in 0..sorted.len() {
            for j in (i + 1)..sorted.len() {
                if !self.has_edge(sorted[i], sorted[j]) {
                    return Err(Error::Structural(format!(
                        "simplex pair ({}, {}) is not an edge",
                        sorted[i], sorted[j]
                    )));
                }
            }
        }
        let key: Vec<u32> = sorted.iter().map(|v| v.0).collect();
        if self.simplex_keys.contains(&key) {
            return Err(Error::Structural(format!("duplicate simplex {sorted:?}")));
        }
        self.simplex_keys.insert(key);
        self.simplices.push(SimplexRecord { vertices: sorted, weight });
        Ok(self.simplices.len() - 1)
    }

    /// Faces containing edge `e`, ascending by face id.
    pub fn parents_of_edge(&self, e: EdgeId) -> Result<&[FaceId]> {
        self.check_edge(e)?;
        Ok(&self.edge_faces[e.index()])
    }

    /// Edges parallel to `e`: sharing a face or a vertex with `e` but not
    /// both. The symmetric difference of the two co-incidence sets, with `e`
    /// itself excluded; ascending by edge id.
    pub fn parallel_edges(&self, e: EdgeId) -> Result<Vec<EdgeId>> {
        self.check_edge(e)?;
        let mut by_face: HashSet<EdgeId> = HashSet::new();
        for &f in &self.edge_faces[e.index()] {
            for &be in self.faces[f.index()].boundary_edges() {
                if be != e {
                    by_face.insert(be);
                }
            }
        }
        let Edge { u, v, .. } = self.edges[e.index()];
        let mut by_vertex: HashSet<EdgeId> = HashSet::new();
        for &end in &[u, v] {
            for &ie in &self.vertex_edges[end.index()] {
                if ie != e {
                    by_vertex.insert(ie);
                }
            }
        }
        let mut out: Vec<EdgeId> = by_face.symmetric_difference(&by_vertex).copied().collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Rebuild the complex without the given edges. Faces and simplices that
    /// lose a boundary edge disappear; vertices left without any edge are
    /// dropped and the rest are renumbered densely, preserving order.
    pub fn remove_edges(&self, removed: &HashSet<EdgeId>) -> PolyhedralComplex {
        let mut keep_vertex = vec![false; self.vertex_count()];
        for (i, e) in self.edges.iter().enumerate() {
            if !removed.contains(&EdgeId(i as u32)) {
                keep_vertex[e.u.index()] = true;
                keep_vertex[e.v.index()] = true;
            }
        }
        let mut vmap: HashMap<VertexId, VertexId> = HashMap::new();
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for v in self.vertices() {
            if keep_vertex[v.index()] {
                vmap.insert(v, VertexId(labels.len() as u32));
                labels.push(self.labels[v.index()].clone());
                weights.push(self.vertex_weights[v.index()]);
            }
        }
        let mut next = PolyhedralComplex::new(labels.len());
        next.labels = labels;
        next.vertex_weights = weights;
        for (i, e) in self.edges.iter().enumerate() {
            if !removed.contains(&EdgeId(i as u32)) {
                next.add_edge(vmap[&e.u], vmap[&e.v], e.weight)
                    .expect("surviving edge stays valid");
            }
        }
        for f in &self.faces {
            if f.boundary_edges().iter().any(|e| removed.contains(e)) {
                continue;
            }
            let boundary: Vec<VertexId> = f.boundary.iter().map(|v| vmap[v]).collect();
            next.add_face(&boundary, f.weight).expect("surviving face stays valid");
        }
        for s in &self.simplices {
            let mut alive = true;
            'pairs: for i in 0..s.vertices.len() {
                for j in (i + 1)..s.vertices.len() {
                    match self.edge_between(s.vertices[i], s.vertices[j]) {
                        Some(e) if !removed.contains(&e) => {}
                        _ => {
                            alive = false;
                            break 'pairs;
                        }
                    }
                }
            }
            if alive {
                let vs: Vec<VertexId> = s.vertices.iter().map(|v| vmap[v]).collect();
                next.add_simplex(&vs, s.weight).expect("surviving simplex stays valid");
            }
        }
        next
    }

    /// Sub-complex induced by the vertices with `keep[v] == true`: all edges,
    /// faces, and simplices lying entirely inside the kept set survive, and
    /// kept vertices are renumbered densely in order.
    pub fn induced_subcomplex(&self, keep: &[bool]) -> PolyhedralComplex {
        assert_eq!(keep.len(), self.vertex_count(), "keep mask length mismatch");
        let mut vmap: HashMap<VertexId, VertexId> = HashMap::new();
        let mut labels = Vec::new();
        let mut weights = Vec::new();
        for v in self.vertices() {
            if keep[v.index()] {
                vmap.insert(v, VertexId(labels.len() as u32));
                labels.push(self.labels[v.index()].clone());
                weights.push(self.vertex_weights[v.index()]);
            }
        }
        let mut next = PolyhedralComplex::new(labels.len());
        next.labels = labels;
        next.vertex_weights = weights;
        for e in &self.edges {
            if keep[e.u.index()] && keep[e.v.index()] {
                next.add_edge(vmap[&e.u], vmap[&e.v], e.weight).expect("kept edge stays valid");
            }
        }
        for f in &self.faces {
            if f.boundary.iter().all(|v| keep[v.index()]) {
                let boundary: Vec<VertexId> = f.boundary.iter().map(|v| vmap[v]).collect();
                next.add_face(&boundary, f.weight).expect("kept face stays valid");
            }
        }
        for s in &self.simplices {
            if s.vertices.iter().all(|v| keep[v.index()]) {
                let vs: Vec<VertexId> = s.vertices.iter().map(|v| vmap[v]).collect();
                next.add_simplex(&vs, s.weight).expect("kept simplex stays valid");
            }
        }
        next
    }

    /// Iteratively strip degree-1 vertices (with their pendant edges), then
    /// drop isolated vertices. Idempotent; faces are never affected because a
    /// face boundary vertex has two boundary edges.
    pub fn prune_leaves(&self) -> PolyhedralComplex {
        let mut deg: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        let mut dead_edge = vec![false; self.edge_count()];
        let mut stack: Vec<VertexId> = self.vertices().filter(|v| deg[v.index()] == 1).collect();
        while let Some(v) = stack.pop() {
            if deg[v.index()] != 1 {
                continue;
            }
            let &e = self.vertex_edges[v.index()]
                .iter()
                .find(|e| !dead_edge[e.index()])
                .expect("degree-1 vertex has a live edge");
            dead_edge[e.index()] = true;
            let w = self.edges[e.index()].other(v);
            deg[v.index()] = 0;
            deg[w.index()] -= 1;
            if deg[w.index()] == 1 {
                stack.push(w);
            }
        }
        let removed: HashSet<EdgeId> = dead_edge
            .iter()
            .enumerate()
            .filter(|(_, d)| **d)
            .map(|(i, _)| EdgeId(i as u32))
            .collect();
        self.remove_edges(&removed)
    }

    /// Total edge weight (used by flow normalization and reporting).
    pub fn total_edge_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}
