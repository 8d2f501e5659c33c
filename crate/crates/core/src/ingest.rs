//! Reading and writing graphs and complexes.
//!
//! Edge lists are plain text: one edge per line, whitespace or comma
//! separated, with an optional third weight column (all lines must agree),
//! `#` or `%` comments, and arbitrary string labels. Complexes round-trip
//! through a JSON document listing vertices, edges, faces, and simplices.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::{PolyhedralComplex, VertexId};
use crate::error::{Error, Result};

fn strip_comment(line: &str) -> &str {
    match line.find(['#', '%']) {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn split_fields(line: &str) -> Vec<&str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect()
}

/// Parse an edge-list document into a unit-vertex-weight complex. Vertex ids
/// are assigned by first appearance; labels keep the original tokens.
/// Self-loops are rejected; repeated edges must agree on their weight.
pub fn parse_edge_list(text: &str) -> Result<PolyhedralComplex> {
    let mut labels: Vec<String> = Vec::new();
    let mut ids: HashMap<String, u32> = HashMap::new();
    // (u, v) with u < v -> (weight, first line seen)
    let mut edges: HashMap<(u32, u32), (f64, usize)> = HashMap::new();
    let mut order: Vec<(u32, u32)> = Vec::new();
    let mut weighted: Option<bool> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let fields = split_fields(line);
        let has_weight = match fields.len() {
            2 => false,
            3 => true,
            n => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("expected 2 or 3 fields, got {n}"),
                })
            }
        };
        match weighted {
            None => weighted = Some(has_weight),
            Some(w) if w != has_weight => {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!(
                        "inconsistent column count: expected {} fields",
                        if w { 3 } else { 2 }
                    ),
                })
            }
            _ => {}
        }
        let mut id_of = |tok: &str| -> u32 {
            if let Some(&id) = ids.get(tok) {
                return id;
            }
            let id = labels.len() as u32;
            labels.push(tok.to_string());
            ids.insert(tok.to_string(), id);
            id
        };
        let u = id_of(fields[0]);
        let v = id_of(fields[1]);
        if u == v {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("self-loop at '{}'", fields[0]),
            });
        }
        let w = if has_weight {
            let w: f64 = fields[2].parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad weight '{}'", fields[2]),
            })?;
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("weight must be positive and finite, got {w}"),
                });
            }
            w
        } else {
            1.0
        };
        let key = if u < v { (u, v) } else { (v, u) };
        match edges.get(&key) {
            None => {
                edges.insert(key, (w, line_no));
                order.push(key);
            }
            Some(&(prev, prev_line)) => {
                if prev != w {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!(
                            "edge ('{}', '{}') repeats line {prev_line} with a different weight \
                             ({prev} vs {w})",
                            fields[0], fields[1]
                        ),
                    });
                }
            }
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput("edge list has no edges".into()));
    }
    let mut c = PolyhedralComplex::new(labels.len());
    c.set_labels(labels)?;
    for key in order {
        let (w, _) = edges[&key];
        c.add_edge(VertexId(key.0), VertexId(key.1), w)?;
    }
    Ok(c)
}

pub fn read_edge_list(path: &Path) -> Result<PolyhedralComplex> {
    parse_edge_list(&read_file(path)?)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::IoAt {
        path: path.display().to_string(),
        source,
    })
}

/// Ordering key that sorts numeric labels numerically, before the rest.
fn label_key(s: &str) -> (u8, f64, &str) {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => (0, x, s),
        _ => (1, 0.0, s),
    }
}

fn key_lt(a: (u8, f64, &str), b: (u8, f64, &str)) -> bool {
    if a.0 != b.0 {
        return a.0 < b.0;
    }
    if a.0 == 0 && a.1 != b.1 {
        return a.1 < b.1;
    }
    a.2 < b.2
}

/// Restrict to the largest connected component. Ties on vertex count break
/// toward the component whose smallest label is smallest, comparing numeric
/// labels numerically.
pub fn largest_component(c: &PolyhedralComplex) -> PolyhedralComplex {
    let n = c.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0usize;
    for start in c.vertices() {
        if comp[start.index()] != usize::MAX {
            continue;
        }
        let id = count;
        count += 1;
        let mut queue = vec![start];
        comp[start.index()] = id;
        while let Some(v) = queue.pop() {
            for w in c.neighbors(v) {
                if comp[w.index()] == usize::MAX {
                    comp[w.index()] = id;
                    queue.push(w);
                }
            }
        }
    }
    if count <= 1 {
        return c.clone();
    }
    let mut sizes = vec![0usize; count];
    for &k in &comp {
        sizes[k] += 1;
    }
    // Smallest label per component, under the numeric-aware ordering.
    let mut min_label: Vec<Option<&str>> = vec![None; count];
    for v in c.vertices() {
        let k = comp[v.index()];
        let l = c.label(v);
        min_label[k] = Some(match min_label[k] {
            None => l,
            Some(m) => {
                if key_lt(label_key(l), label_key(m)) {
                    l
                } else {
                    m
                }
            }
        });
    }
    let mut best = 0usize;
    for k in 1..count {
        if sizes[k] > sizes[best]
            || (sizes[k] == sizes[best]
                && key_lt(
                    label_key(min_label[k].unwrap_or("")),
                    label_key(min_label[best].unwrap_or("")),
                ))
        {
            best = k;
        }
    }
    let keep: Vec<bool> = comp.iter().map(|&k| k == best).collect();
    c.induced_subcomplex(&keep)
}

#[derive(Serialize, Deserialize)]
struct VertexDto {
    id: u32,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct EdgeDto {
    id: u32,
    u: u32,
    v: u32,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct FaceDto {
    id: u32,
    cycle: Vec<u32>,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct SimplexDto {
    dim: usize,
    vertices: Vec<u32>,
    weight: f64,
}

#[derive(Serialize, Deserialize)]
struct ComplexDto {
    vertices: Vec<VertexDto>,
    edges: Vec<EdgeDto>,
    faces: Vec<FaceDto>,
    simplices: Vec<SimplexDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn to_dto(c: &PolyhedralComplex) -> ComplexDto {
    ComplexDto {
        vertices: c
            .vertices()
            .map(|v| VertexDto { id: v.0, weight: c.vertex_weight(v) })
            .collect(),
        edges: c
            .edges()
            .map(|(id, e)| EdgeDto { id: id.0, u: e.u.0, v: e.v.0, weight: e.weight })
            .collect(),
        faces: c
            .faces()
            .map(|(id, f)| FaceDto {
                id: id.0,
                cycle: f.boundary().iter().map(|v| v.0).collect(),
                weight: f.weight,
            })
            .collect(),
        simplices: c
            .simplices()
            .iter()
            .map(|s| SimplexDto {
                dim: s.dimension(),
                vertices: s.vertices().iter().map(|v| v.0).collect(),
                weight: s.weight,
            })
            .collect(),
        labels: Some(c.labels().to_vec()),
    }
}

fn from_dto(dto: ComplexDto) -> Result<PolyhedralComplex> {
    let n = dto.vertices.len();
    for (i, v) in dto.vertices.iter().enumerate() {
        if v.id as usize != i {
            return Err(Error::Structural(format!(
                "vertex ids must be 0..{} in order, found {} at position {i}",
                n.saturating_sub(1),
                v.id
            )));
        }
    }
    let mut c = PolyhedralComplex::new(n);
    if let Some(labels) = dto.labels {
        c.set_labels(labels)?;
    }
    for (i, v) in dto.vertices.iter().enumerate() {
        c.set_vertex_weight(VertexId(i as u32), v.weight)?;
    }
    for (i, e) in dto.edges.iter().enumerate() {
        if e.id as usize != i {
            return Err(Error::Structural(format!(
                "edge ids must be 0..{} in order, found {} at position {i}",
                dto.edges.len().saturating_sub(1),
                e.id
            )));
        }
        c.add_edge(VertexId(e.u), VertexId(e.v), e.weight)?;
    }
    for (i, f) in dto.faces.iter().enumerate() {
        if f.id as usize != i {
            return Err(Error::Structural(format!(
                "face ids must be 0..{} in order, found {} at position {i}",
                dto.faces.len().saturating_sub(1),
                f.id
            )));
        }
        let boundary: Vec<VertexId> = f.cycle.iter().map(|&v| VertexId(v)).collect();
        c.add_face(&boundary, f.weight)?;
    }
    for s in &dto.simplices {
        if s.vertices.len() != s.dim + 1 {
            return Err(Error::Structural(format!(
                "simplex of dim {} must have {} vertices, got {}",
                s.dim,
                s.dim + 1,
                s.vertices.len()
            )));
        }
        let vs: Vec<VertexId> = s.vertices.iter().map(|&v| VertexId(v)).collect();
        c.add_simplex(&vs, s.weight)?;
    }
    Ok(c)
}

/// Serialize a complex to its JSON document.
pub fn to_json(c: &PolyhedralComplex) -> String {
    serde_json::to_string_pretty(&to_dto(c)).expect("complex serializes")
}

/// Parse a complex from its JSON document.
pub fn from_json(text: &str) -> Result<PolyhedralComplex> {
    from_dto(serde_json::from_str(text)?)
}

pub fn read_complex_json(path: &Path) -> Result<PolyhedralComplex> {
    from_json(&read_file(path)?)
}

/// Parse a coordinates document: one `label x y` line per vertex, with the
/// same comment and separator rules as edge lists.
pub fn parse_coordinates(text: &str) -> Result<Vec<(String, f64, f64)>> {
    let mut out = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let fields = split_fields(line);
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 'label x y', got {} fields", fields.len()),
            });
        }
        let parse = |tok: &str| -> Result<f64> {
            let x: f64 = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad coordinate '{tok}'"),
            })?;
            if !x.is_finite() {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("coordinate must be finite, got {x}"),
                });
            }
            Ok(x)
        };
        let label = fields[0].to_string();
        if let Some(prev) = seen.insert(label.clone(), line_no) {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("label '{label}' already has coordinates (line {prev})"),
            });
        }
        out.push((label, parse(fields[1])?, parse(fields[2])?));
    }
    Ok(out)
}

/// Match parsed coordinates to the vertices of `c` by label. Coordinates for
/// unknown labels are ignored; vertices may be left without coordinates, and
/// weight rules that need them will report which vertex is missing.
pub fn coordinates_for(
    c: &PolyhedralComplex,
    coords: &[(String, f64, f64)],
) -> HashMap<VertexId, (f64, f64)> {
    let index = c.label_index();
    let mut out = HashMap::new();
    for (label, x, y) in coords {
        if let Some(&v) = index.get(label.as_str()) {
            out.insert(v, (*x, *y));
        }
    }
    out
}
