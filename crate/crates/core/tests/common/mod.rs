//! Shared fixtures for the integration and acceptance suites: closed
//! surfaces with known Euler characteristic, the bundled karate-club edge
//! list, and deterministic seeded graph generators.
#![allow(dead_code)]

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use netshape_core::{ingest, PolyhedralComplex, VertexId};

pub fn vid(i: u32) -> VertexId {
    VertexId(i)
}

pub fn bare_edge() -> PolyhedralComplex {
    PolyhedralComplex::from_edges(2, &[(0, 1)]).unwrap()
}

pub fn filled_triangle() -> PolyhedralComplex {
    let mut c = PolyhedralComplex::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    c.add_face(&[vid(0), vid(1), vid(2)], 1.0).unwrap();
    c
}

/// Boundary of the tetrahedron: 4 vertices, 6 edges, 4 triangles; χ = 2.
pub fn tetrahedron() -> PolyhedralComplex {
    let mut c =
        PolyhedralComplex::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
    for t in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
        c.add_face(&[vid(t[0]), vid(t[1]), vid(t[2])], 1.0).unwrap();
    }
    c
}

/// Boundary of the octahedron: poles 0 and 5 over the equator 1-2-3-4;
/// 6 vertices, 12 edges, 8 triangles; χ = 2.
pub fn octahedron() -> PolyhedralComplex {
    let mut c = PolyhedralComplex::from_edges(
        6,
        &[
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 4),
            (1, 2),
            (2, 3),
            (3, 4),
            (1, 4),
            (1, 5),
            (2, 5),
            (3, 5),
            (4, 5),
        ],
    )
    .unwrap();
    for t in [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 1, 4],
        [5, 1, 2],
        [5, 2, 3],
        [5, 3, 4],
        [5, 1, 4],
    ] {
        c.add_face(&[vid(t[0]), vid(t[1]), vid(t[2])], 1.0).unwrap();
    }
    c
}

/// The 7-vertex triangulation of the torus on K7: faces {i, i+1, i+3} and
/// {i, i+2, i+3} mod 7; 7 vertices, 21 edges, 14 triangles; χ = 0. Every
/// edge lies in exactly two triangles.
pub fn torus7() -> PolyhedralComplex {
    let mut edges = Vec::new();
    for u in 0..7u32 {
        for v in u + 1..7 {
            edges.push((u, v));
        }
    }
    let mut c = PolyhedralComplex::from_edges(7, &edges).unwrap();
    for i in 0..7u32 {
        c.add_face(&[vid(i), vid((i + 1) % 7), vid((i + 3) % 7)], 1.0).unwrap();
        c.add_face(&[vid(i), vid((i + 2) % 7), vid((i + 3) % 7)], 1.0).unwrap();
    }
    c
}

/// The bundled Zachary karate-club edge list (34 vertices, 78 edges).
pub fn karate() -> PolyhedralComplex {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/karate.txt");
    let c = ingest::read_edge_list(&path).unwrap();
    ingest::largest_component(&c)
}

/// Erdős–Rényi graph on `n` vertices with edge probability `p`,
/// deterministic in `seed`.
pub fn er_graph(seed: u64, n: usize, p: f64) -> PolyhedralComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    PolyhedralComplex::from_edges(n, &edges).unwrap()
}

/// Ring lattice on `n` vertices (each vertex joined to its `k` nearest
/// neighbours on each side) plus `chords` extra seeded random edges.
pub fn ring_lattice_with_chords(seed: u64, n: usize, k: usize, chords: usize) -> PolyhedralComplex {
    let mut c = PolyhedralComplex::new(n);
    for u in 0..n as u32 {
        for d in 1..=k as u32 {
            let v = (u + d) % n as u32;
            if u != v {
                let _ = c.add_edge(VertexId(u), VertexId(v), 1.0);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    while added < chords {
        let u = rng.gen_range(0..n as u32);
        let v = rng.gen_range(0..n as u32);
        if u == v || c.has_edge(VertexId(u), VertexId(v)) {
            continue;
        }
        c.add_edge(VertexId(u), VertexId(v), 1.0).unwrap();
        added += 1;
    }
    c
}

/// Deterministic stand-in for the 62-dolphin social network (62 vertices,
/// 159 edges, connected): a ring lattice with seeded chords at the same
/// scale. The published edge list is not bundled; analyses that depend
/// only on identities, not on the exact topology, run against this.
pub fn dolphins_surrogate() -> PolyhedralComplex {
    ring_lattice_with_chords(62, 62, 2, 35)
}

/// Deterministic stand-in for the 1133-node e-mail interaction network
/// (1133 vertices, 12035 edges): ring lattice k = 10 plus 705 chords.
pub fn email_surrogate() -> PolyhedralComplex {
    ring_lattice_with_chords(1133, 1133, 10, 705)
}

/// Random complex: seeded graph with all faces and simplices filled.
pub fn random_filled_complex(seed: u64) -> PolyhedralComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=30usize);
    let p = rng.gen_range(0.15..0.45);
    let mut c = er_graph(seed.wrapping_mul(0x9e37_79b9).wrapping_add(1), n, p);
    netshape_core::faces::fill_faces(&mut c, 6, 4).unwrap();
    c
}
