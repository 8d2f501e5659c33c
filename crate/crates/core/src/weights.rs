//! Weight rules for faces and simplices.
//!
//! Faces can be weighted as unit, by Heron's formula from their boundary
//! edge weights (with a fan triangulation for polygons), by the shoelace
//! formula from vertex coordinates, or by regular/product simplex volume
//! rules. Simplex inventory entries get the matching volume rule.

use std::collections::HashMap;

use crate::complex::{FaceId, PolyhedralComplex, VertexId};
use crate::error::{Error, Result};

/// Smallest weight substituted for a degenerate value in lenient mode.
pub const WEIGHT_FLOOR: f64 = 1e-9;

/// How to react when a rule produces a degenerate (non-positive) value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strictness {
    /// Degenerate values are errors.
    Strict,
    /// Degenerate values are clamped to [`WEIGHT_FLOOR`].
    Lenient,
}

/// Face/simplex weighting scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightScheme {
    /// Every face and simplex weighs 1.
    Unit,
    /// Triangles by Heron's formula on edge weights; polygons by a fan
    /// triangulation; simplices by the product volume rule.
    Heron,
    /// Alias of [`WeightScheme::Heron`]: the fan triangulation is the
    /// defining rule and Heron is its triangle case.
    Triangulated,
    /// Faces by polygon area from vertex coordinates; simplices by the
    /// product volume rule.
    Shoelace,
    /// Triangles by regular-simplex volume; larger polygons weigh 1;
    /// simplices by regular-simplex volume.
    SimplexUnit,
    /// Triangles by the product volume rule; larger polygons weigh 1;
    /// simplices by the product volume rule.
    SimplexProduct,
}

impl WeightScheme {
    pub fn parse(s: &str) -> Option<WeightScheme> {
        match s {
            "unit" => Some(WeightScheme::Unit),
            "heron" => Some(WeightScheme::Heron),
            "triangulated" => Some(WeightScheme::Triangulated),
            "shoelace" => Some(WeightScheme::Shoelace),
            "simplex-unit" | "simplex_unit" => Some(WeightScheme::SimplexUnit),
            "simplex-product" | "simplex_product" => Some(WeightScheme::SimplexProduct),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WeightScheme::Unit => "unit",
            WeightScheme::Heron => "heron",
            WeightScheme::Triangulated => "triangulated",
            WeightScheme::Shoelace => "shoelace",
            WeightScheme::SimplexUnit => "simplex-unit",
            WeightScheme::SimplexProduct => "simplex-product",
        }
    }

    /// Whether the scheme needs vertex coordinates.
    pub fn needs_coordinates(self) -> bool {
        matches!(self, WeightScheme::Shoelace)
    }
}

/// Triangle area from side lengths. The sides must satisfy the strict
/// triangle inequality; degenerate or impossible triangles are an error.
pub fn heron(a: f64, b: f64, c: f64) -> Result<f64> {
    for s in [a, b, c] {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::DegenerateWeight(format!("triangle side {s} is not positive")));
        }
    }
    if a + b <= c || a + c <= b || b + c <= a {
        return Err(Error::DegenerateWeight(format!(
            "sides ({a}, {b}, {c}) violate the strict triangle inequality"
        )));
    }
    let s = 0.5 * (a + b + c);
    Ok((s * (s - a) * (s - b) * (s - c)).sqrt())
}

/// Polygon area from cyclic boundary edge weights via a fan triangulation
/// rooted at the first boundary vertex. The fan diagonal to an interior
/// boundary vertex is the mean of that vertex's two boundary edges; each fan
/// triangle contributes its Heron area.
pub fn triangulated_area(boundary_weights: &[f64]) -> Result<f64> {
    let d = boundary_weights.len();
    if d < 3 {
        return Err(Error::Domain(format!("polygon needs at least 3 sides, got {d}")));
    }
    let w = boundary_weights;
    if d == 3 {
        return heron(w[0], w[1], w[2]);
    }
    // Side from the root to interior boundary vertex i.
    let spoke = |i: usize| -> f64 {
        if i == 1 {
            w[0]
        } else if i == d - 1 {
            w[d - 1]
        } else {
            0.5 * (w[i - 1] + w[i])
        }
    };
    let mut total = 0.0;
    for i in 1..d - 1 {
        total += heron(spoke(i), w[i], spoke(i + 1))?;
    }
    Ok(total)
}

/// Absolute polygon area of the closed path `pts` by the shoelace formula.
/// Orientation-independent; self-intersecting input gives the net area.
pub fn shoelace_area(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len();
    let mut acc = 0.0;
    for i in 0..n {
        let (x0, y0) = pts[i];
        let (x1, y1) = pts[(i + 1) % n];
        acc += x0 * y1 - x1 * y0;
    }
    0.5 * acc.abs()
}

/// Volume of the regular unit-edge n-simplex: sqrt(n + 1) / (n! * sqrt(2^n)).
pub fn regular_simplex_volume(n: usize) -> f64 {
    ((n + 1) as f64).sqrt() / (factorial(n) * (2f64).powi(n as i32).sqrt())
}

/// Product volume rule for an n-simplex: the product of the weights of the
/// n edges meeting at the smallest vertex, divided by n!.
pub fn product_simplex_volume(base_edge_weights: &[f64]) -> f64 {
    let n = base_edge_weights.len();
    base_edge_weights.iter().product::<f64>() / factorial(n)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn settle(value: Result<f64>, strictness: Strictness, what: impl Fn() -> String) -> Result<f64> {
    match value {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(v) => match strictness {
            Strictness::Strict => {
                Err(Error::DegenerateWeight(format!("{} produced {v}", what())))
            }
            Strictness::Lenient => Ok(WEIGHT_FLOOR),
        },
        Err(e) => match strictness {
            Strictness::Strict => Err(e),
            Strictness::Lenient => Ok(WEIGHT_FLOOR),
        },
    }
}

/// Weights of the edges meeting the smallest vertex of `vertices` (sorted).
fn base_edge_weights(c: &PolyhedralComplex, vertices: &[VertexId]) -> Vec<f64> {
    let base = vertices[0];
    vertices[1..]
        .iter()
        .map(|&v| {
            let e = c.edge_between(base, v).expect("simplex pair is an edge");
            c.edge(e).weight
        })
        .collect()
}

fn face_weight(
    c: &PolyhedralComplex,
    f: FaceId,
    scheme: WeightScheme,
    coords: Option<&HashMap<VertexId, (f64, f64)>>,
    strictness: Strictness,
) -> Result<f64> {
    let rec = c.face(f);
    let d = rec.degree();
    match scheme {
        WeightScheme::Unit => Ok(1.0),
        WeightScheme::Heron | WeightScheme::Triangulated => {
            let ws: Vec<f64> = rec.boundary_edges().iter().map(|&e| c.edge(e).weight).collect();
            settle(triangulated_area(&ws), strictness, || format!("face {f} area"))
        }
        WeightScheme::Shoelace => {
            let coords = coords.ok_or_else(|| {
                Error::MissingCoordinate("coordinates required for shoelace weights".into())
            })?;
            let mut pts = Vec::with_capacity(d);
            for &v in rec.boundary() {
                let &(x, y) = coords
                    .get(&v)
                    .ok_or_else(|| Error::MissingCoordinate(c.label(v).to_string()))?;
                pts.push((x, y));
            }
            settle(Ok(shoelace_area(&pts)), strictness, || format!("face {f} area"))
        }
        WeightScheme::SimplexUnit => {
            Ok(if d == 3 { regular_simplex_volume(2) } else { 1.0 })
        }
        WeightScheme::SimplexProduct => {
            if d == 3 {
                let vs = rec.boundary();
                let mut sorted = vs.to_vec();
                sorted.sort_unstable();
                let base = base_edge_weights(c, &sorted);
                settle(Ok(product_simplex_volume(&base)), strictness, || {
                    format!("face {f} volume")
                })
            } else {
                Ok(1.0)
            }
        }
    }
}

/// Assign weights to every face and simplex of `c` under `scheme`.
/// Coordinates are required only by coordinate-based schemes. In lenient
/// mode degenerate values are clamped to [`WEIGHT_FLOOR`] instead of failing.
pub fn assign_weights(
    c: &mut PolyhedralComplex,
    scheme: WeightScheme,
    coords: Option<&HashMap<VertexId, (f64, f64)>>,
    strictness: Strictness,
) -> Result<()> {
    if scheme.needs_coordinates() && coords.is_none() {
        return Err(Error::MissingCoordinate(
            "coordinates required for shoelace weights".into(),
        ));
    }
    for f in c.face_ids_iter().collect::<Vec<_>>() {
        let w = face_weight(c, f, scheme, coords, strictness)?;
        c.set_face_weight(f, w)?;
    }
    for i in 0..c.simplex_count() {
        let (vertices, n) = {
            let s = &c.simplices()[i];
            (s.vertices().to_vec(), s.dimension())
        };
        let w = match scheme {
            WeightScheme::Unit => 1.0,
            WeightScheme::SimplexUnit => regular_simplex_volume(n),
            WeightScheme::Heron
            | WeightScheme::Triangulated
            | WeightScheme::Shoelace
            | WeightScheme::SimplexProduct => {
                let base = base_edge_weights(c, &vertices);
                settle(Ok(product_simplex_volume(&base)), strictness, || {
                    format!("simplex {vertices:?} volume")
                })?
            }
        };
        c.set_simplex_weight(i, w)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn heron_known_triangles() {
        assert_relative_eq!(heron(1.0, 1.0, 1.0).unwrap(), 3f64.sqrt() / 4.0, epsilon = 1e-15);
        assert_relative_eq!(heron(3.0, 4.0, 5.0).unwrap(), 6.0, epsilon = 1e-12);
    }

    #[test]
    fn heron_rejects_degenerate_and_impossible_sides() {
        assert!(heron(1.0, 1.0, 2.0).is_err());
        assert!(heron(1.0, 1.0, 3.0).is_err());
        assert!(heron(0.0, 1.0, 1.0).is_err());
        assert!(heron(-1.0, 1.0, 1.0).is_err());
        assert!(heron(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn fan_triangulation_of_unit_square_boundary() {
        let a = triangulated_area(&[1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_relative_eq!(a, 3f64.sqrt() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn fan_triangulation_degenerate_side_errors() {
        assert!(triangulated_area(&[1.0, 1.0, 1.0, 3.0]).is_err());
    }

    #[test]
    fn fan_triangulation_triangle_case_is_heron() {
        assert_relative_eq!(
            triangulated_area(&[3.0, 4.0, 5.0]).unwrap(),
            6.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn shoelace_known_polygons() {
        let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        assert_relative_eq!(shoelace_area(&square), 1.0, epsilon = 1e-15);
        let triangle = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];
        assert_relative_eq!(shoelace_area(&triangle), 0.5, epsilon = 1e-15);
        let reversed = [(0.0, 1.0), (1.0, 0.0), (0.0, 0.0)];
        assert_relative_eq!(shoelace_area(&reversed), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn regular_simplex_volumes() {
        assert_relative_eq!(regular_simplex_volume(1), 1.0, epsilon = 1e-15);
        assert_relative_eq!(regular_simplex_volume(2), 3f64.sqrt() / 4.0, epsilon = 1e-15);
        assert_relative_eq!(regular_simplex_volume(3), 2f64.sqrt() / 12.0, epsilon = 1e-15);
    }

    #[test]
    fn product_simplex_volumes() {
        assert_relative_eq!(product_simplex_volume(&[1.0, 1.0]), 0.5, epsilon = 1e-15);
        assert_relative_eq!(product_simplex_volume(&[1.0, 2.0, 3.0]), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            product_simplex_volume(&[1.0; 4]),
            1.0 / 24.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn lenient_mode_clamps_degenerate_faces() {
        use crate::complex::{PolyhedralComplex, VertexId};
        let mut c = PolyhedralComplex::from_weighted_edges(
            3,
            &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.0)],
        )
        .unwrap();
        c.add_face(&[VertexId(0), VertexId(1), VertexId(2)], 1.0).unwrap();
        let strict = assign_weights(&mut c.clone(), WeightScheme::Heron, None, Strictness::Strict);
        assert!(strict.is_err());
        assign_weights(&mut c, WeightScheme::Heron, None, Strictness::Lenient).unwrap();
        assert_eq!(c.face(crate::complex::FaceId(0)).weight, WEIGHT_FLOOR);
    }

    #[test]
    fn scheme_parsing_round_trips() {
        for s in ["unit", "heron", "triangulated", "shoelace", "simplex-unit", "simplex-product"] {
            assert_eq!(WeightScheme::parse(s).unwrap().name(), s);
        }
        assert!(WeightScheme::parse("nope").is_none());
    }
}
