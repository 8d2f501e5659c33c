//! Lifting a graph to a two-dimensional complex: triangle and chordless
//! cycle enumeration (the faces), clique enumeration (the simplex
//! inventory), and the census of what was found.
//!
//! All enumerations are deterministic: results come out in lexicographic
//! order of their canonical vertex sequences.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{PolyhedralComplex, VertexId};
use crate::error::{Error, Result};

/// Default bound on the boundary length of filled faces.
pub const DEFAULT_MAX_CYCLE_LEN: usize = 6;
/// Default bound on the dimension of inventoried simplices.
pub const DEFAULT_MAX_SIMPLEX_DIM: usize = 4;

fn sorted_adjacency(c: &PolyhedralComplex) -> Vec<Vec<VertexId>> {
    c.vertices()
        .map(|v| {
            let mut a: Vec<VertexId> = c.neighbors(v).collect();
            a.sort_unstable();
            a
        })
        .collect()
}

/// All triangles as ascending vertex triples, lexicographically sorted.
pub fn triangles(c: &PolyhedralComplex) -> Vec<[VertexId; 3]> {
    let adj = sorted_adjacency(c);
    let mut out = Vec::new();
    for (_, e) in c.edges() {
        let (u, v) = (e.u, e.v);
        // Common neighbors above v keep each triangle unique to its
        // lexicographically smallest edge.
        let (a, b) = (&adj[u.index()], &adj[v.index()]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i] > v {
                        out.push([u, v, a[i]]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Chordless cycles of length 4 up to `max_len`, each in canonical form
/// (anchored at its smallest vertex, toward its smaller neighbor), sorted
/// lexicographically. A cycle is chordless when the only edges among its
/// vertices are the cycle edges themselves.
pub fn chordless_cycles(c: &PolyhedralComplex, max_len: usize) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    if max_len < 4 {
        return out;
    }
    let adj = sorted_adjacency(c);
    let mut in_path = vec![false; c.vertex_count()];
    let mut path: Vec<VertexId> = Vec::with_capacity(max_len);

    fn extend(
        c: &PolyhedralComplex,
        adj: &[Vec<VertexId>],
        path: &mut Vec<VertexId>,
        in_path: &mut [bool],
        max_len: usize,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        let s = path[0];
        let j = path.len();
        let last = path[j - 1];
        for &w in &adj[last.index()] {
            if w <= s || in_path[w.index()] {
                continue;
            }
            if j == 1 {
                // First step out of the anchor: w is adjacent to s by
                // construction, nothing to check yet.
                path.push(w);
                in_path[w.index()] = true;
                extend(c, adj, path, in_path, max_len, out);
                in_path[w.index()] = false;
                path.pop();
                continue;
            }
            // Any edge back into the path interior would be a chord.
            if path[1..j - 1].iter().any(|&p| c.has_edge(w, p)) {
                continue;
            }
            if c.has_edge(w, s) {
                // Closing edge. The cycle is emitted from the direction
                // whose second vertex is the smaller one.
                if j + 1 >= 4 && path[1] < w {
                    let mut cyc = path.clone();
                    cyc.push(w);
                    out.push(cyc);
                }
                // w cannot also serve as an interior vertex: the edge
                // (w, s) would become a chord.
                continue;
            }
            if j + 1 < max_len {
                path.push(w);
                in_path[w.index()] = true;
                extend(c, adj, path, in_path, max_len, out);
                in_path[w.index()] = false;
                path.pop();
            }
        }
    }

    for s in c.vertices() {
        path.clear();
        path.push(s);
        in_path[s.index()] = true;
        extend(c, &adj, &mut path, &mut in_path, max_len, &mut out);
        in_path[s.index()] = false;
    }
    out.sort_unstable();
    out
}

/// Maximal cliques via Bron-Kerbosch with pivoting, sorted lexicographically.
pub fn maximal_cliques(c: &PolyhedralComplex) -> Vec<Vec<VertexId>> {
    let n = c.vertex_count();
    let adj: Vec<BTreeSet<VertexId>> =
        (0..n).map(|v| c.neighbors(VertexId(v as u32)).collect()).collect();

    fn bk(
        adj: &[BTreeSet<VertexId>],
        r: &mut Vec<VertexId>,
        p: BTreeSet<VertexId>,
        x: BTreeSet<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        // Pivot: the candidate covering the most of p, smallest id on ties.
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&v| (p.intersection(&adj[v.index()]).count(), std::cmp::Reverse(v)))
            .expect("p or x is non-empty");
        let branch: Vec<VertexId> =
            p.difference(&adj[pivot.index()]).copied().collect();
        let mut p = p;
        let mut x = x;
        for v in branch {
            let nv = &adj[v.index()];
            r.push(v);
            bk(
                adj,
                r,
                p.intersection(nv).copied().collect(),
                x.intersection(nv).copied().collect(),
                out,
            );
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }

    let mut out = Vec::new();
    let mut r = Vec::new();
    bk(&adj, &mut r, c.vertices().collect(), BTreeSet::new(), &mut out);
    for q in &mut out {
        q.sort_unstable();
    }
    out.sort_unstable();
    out
}

/// All cliques with between 3 and `max_size` vertices, as ascending vertex
/// lists in lexicographic order. Enumerated by expanding every maximal
/// clique downward into its subsets, deduplicated across overlaps.
pub fn cliques(c: &PolyhedralComplex, max_size: usize) -> Vec<Vec<VertexId>> {
    let mut set: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    if max_size < 3 {
        return Vec::new();
    }
    for m in maximal_cliques(c) {
        for k in 3..=max_size.min(m.len()) {
            let mut pick = Vec::with_capacity(k);
            subsets(&m, k, 0, &mut pick, &mut set);
        }
    }
    set.into_iter().collect()
}

fn subsets(
    m: &[VertexId],
    k: usize,
    from: usize,
    pick: &mut Vec<VertexId>,
    out: &mut BTreeSet<Vec<VertexId>>,
) {
    if pick.len() == k {
        out.insert(pick.clone());
        return;
    }
    let need = k - pick.len();
    for i in from..=m.len().saturating_sub(need) {
        pick.push(m[i]);
        subsets(m, k, i + 1, pick, out);
        pick.pop();
    }
}

/// Fill a bare graph's two-dimensional structure in place: triangles and
/// chordless cycles up to `max_cycle_len` vertices become unit-weight faces,
/// and cliques on 4 to `max_simplex_dim + 1` vertices are inventoried as
/// unit-weight simplices. `max_cycle_len` of 2 fills no faces;
/// `max_simplex_dim` below 3 inventories nothing.
pub fn fill_faces(
    c: &mut PolyhedralComplex,
    max_cycle_len: usize,
    max_simplex_dim: usize,
) -> Result<()> {
    if max_cycle_len < 2 {
        return Err(Error::Domain(format!(
            "maximum face degree must be at least 2, got {max_cycle_len}"
        )));
    }
    if max_simplex_dim < 1 {
        return Err(Error::Domain(format!(
            "maximum simplex dimension must be at least 1, got {max_simplex_dim}"
        )));
    }
    if c.face_count() > 0 || c.simplex_count() > 0 {
        return Err(Error::Structural(
            "complex already has faces or simplices".into(),
        ));
    }
    let mut boundaries: Vec<Vec<VertexId>> = Vec::new();
    if max_cycle_len >= 3 {
        boundaries.extend(triangles(c).into_iter().map(|t| t.to_vec()));
    }
    boundaries.extend(chordless_cycles(c, max_cycle_len));
    boundaries.sort_unstable();
    for b in &boundaries {
        c.add_face(b, 1.0)?;
    }
    if max_simplex_dim >= 3 {
        for q in cliques(c, max_simplex_dim + 1) {
            if q.len() >= 4 {
                c.add_simplex(&q, 1.0)?;
            }
        }
    }
    Ok(())
}

/// Counts of faces by boundary degree and simplices by dimension.
/// Degrees `3..=max_cycle_len` and dimensions `2..=max_simplex_dim` are
/// always present (zero-filled); anything larger found in the complex is
/// appended. Dimension 2 counts the triangular faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub faces_by_degree: Vec<(usize, usize)>,
    pub simplices_by_dim: Vec<(usize, usize)>,
}

pub fn census(c: &PolyhedralComplex, max_cycle_len: usize, max_simplex_dim: usize) -> Census {
    let mut fd: BTreeMap<usize, usize> = (3..=max_cycle_len).map(|d| (d, 0)).collect();
    for (_, f) in c.faces() {
        *fd.entry(f.degree()).or_insert(0) += 1;
    }
    let mut sd: BTreeMap<usize, usize> = (2..=max_simplex_dim).map(|d| (d, 0)).collect();
    let triangle_faces = c.faces().filter(|(_, f)| f.degree() == 3).count();
    if max_simplex_dim >= 2 {
        sd.insert(2, triangle_faces);
    }
    for s in c.simplices() {
        *sd.entry(s.dimension()).or_insert(0) += 1;
    }
    Census {
        faces_by_degree: fd.into_iter().collect(),
        simplices_by_dim: sd.into_iter().collect(),
    }
}
