//! Flow triangulations of cubic graphs.
//!
//! At a cubic vertex the three flow values, all oriented towards the vertex,
//! sum to zero and therefore close up into a triangle. Collecting one such
//! triangle per vertex gives a triangulation in which the two sides belonging
//! to an edge are *attachable*: parallel, equally long, and with their
//! triangles on opposite sides. The conversion works in both directions.
//!
//! Triangles are stored as three corners; side `s` runs from corner `s` to
//! corner `s + 1 (mod 3)`. Triangles built here are counterclockwise, so each
//! side has its own triangle on the left.

mod geometry;
mod svg;

pub use geometry::{overlapping_pairs, signed_area, triangles_overlap};
pub use svg::{render_svg, RenderMode};

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{verify_flow, VectorFlow, DEFAULT_TOLERANCE};
use crate::graph::Multigraph;

pub type Point = [f64; 2];

/// Tolerance for the interior-overlap test between placed triangles.
pub const OVERLAP_TOLERANCE: f64 = 1e-9;
/// Signed areas at or below this magnitude count as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowTriangulation {
    /// One triangle per graph vertex.
    pub triangles: Vec<[Point; 3]>,
    /// `side_map[v][s]` is the edge id carried by side `s` of triangle `v`.
    pub side_map: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Layout {
    /// Triangles translated along a spanning tree so shared sides coincide.
    Attached,
    /// Triangles spread on a grid, because the attached attempt overlapped.
    Exploded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Triangulated {
    pub triangulation: FlowTriangulation,
    pub layout: Layout,
    /// Overlapping pairs found in the attached attempt.
    pub overlaps: Vec<(usize, usize)>,
    /// Vertices whose three flow values are collinear.
    pub degenerate: Vec<usize>,
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn length(a: Point) -> f64 {
    a[0].hypot(a[1])
}

impl FlowTriangulation {
    pub fn vertex_count(&self) -> usize {
        self.triangles.len()
    }

    /// Vector of side `s` of triangle `v`, traversed from corner `s`.
    pub fn side(&self, v: usize, s: usize) -> Point {
        let t = &self.triangles[v];
        sub(t[(s + 1) % 3], t[s])
    }

    pub fn side_lengths(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.vertex_count()).flat_map(move |v| (0..3).map(move |s| length(self.side(v, s))))
    }

    /// For each edge id, the `(vertex, side)` entries that carry it.
    pub fn edge_sides(&self) -> Vec<Vec<(usize, usize)>> {
        let m = self.side_map.iter().flatten().max().map_or(0, |&e| e + 1);
        let mut out = vec![Vec::new(); m];
        for (v, sides) in self.side_map.iter().enumerate() {
            for (s, &e) in sides.iter().enumerate() {
                out[e].push((v, s));
            }
        }
        out
    }

    pub fn translate(&mut self, v: usize, by: Point) {
        for corner in &mut self.triangles[v] {
            *corner = add(*corner, by);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&TriangulationJson::from(self)).expect("serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: TriangulationJson = serde_json::from_str(text)?;
        doc.try_into()
    }
}

/// `{"triangles": [[[x, y], [x, y], [x, y]], ...], "side_map": [[v, s, e], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub triangles: Vec<[Point; 3]>,
    pub side_map: Vec<[usize; 3]>,
}

impl From<&FlowTriangulation> for TriangulationJson {
    fn from(t: &FlowTriangulation) -> Self {
        let side_map = t
            .side_map
            .iter()
            .enumerate()
            .flat_map(|(v, sides)| sides.iter().enumerate().map(move |(s, &e)| [v, s, e]))
            .collect();
        TriangulationJson {
            triangles: t.triangles.clone(),
            side_map,
        }
    }
}

impl TryFrom<TriangulationJson> for FlowTriangulation {
    type Error = Error;

    fn try_from(doc: TriangulationJson) -> Result<Self> {
        let n = doc.triangles.len();
        let mut side_map = vec![[usize::MAX; 3]; n];
        for &[v, s, e] in &doc.side_map {
            if v >= n || s >= 3 {
                return Err(Error::Schema(format!(
                    "side entry [{v}, {s}, {e}] out of range"
                )));
            }
            if side_map[v][s] != usize::MAX {
                return Err(Error::Schema(format!("side ({v}, {s}) listed twice")));
            }
            side_map[v][s] = e;
        }
        if let Some(v) = side_map.iter().position(|s| s.contains(&usize::MAX)) {
            return Err(Error::Schema(format!("triangle {v} has unmapped sides")));
        }
        if doc
            .triangles
            .iter()
            .flatten()
            .flatten()
            .any(|x| !x.is_finite())
        {
            return Err(Error::Data("non-finite triangle coordinate".into()));
        }
        Ok(FlowTriangulation {
            triangles: doc.triangles,
            side_map,
        })
    }
}

/// Builds the per-vertex triangles of a two-dimensional flow on a cubic,
/// loopless graph and lays them out.
///
/// Triangle 0 is anchored with its first corner at the origin. The others
/// are placed breadth-first, each translated so the side it shares with its
/// BFS parent coincides with the parent's side. If any two placed triangles
/// overlap in their interiors the grid ("exploded") layout is used instead.
pub fn triangulate(g: &Multigraph, f: &VectorFlow) -> Result<Triangulated> {
    if !g.is_cubic() {
        return Err(Error::Domain("triangulations need a cubic graph".into()));
    }
    if let Some(e) = (0..g.edge_count()).find(|&e| g.is_loop(e)) {
        return Err(Error::Domain(format!("edge {e} is a loop")));
    }
    if f.dimension() != 2 {
        return Err(Error::Shape(format!(
            "triangulations need a 2-dimensional flow, got d = {}",
            f.dimension()
        )));
    }
    let report = verify_flow(g, f, DEFAULT_TOLERANCE)?;
    if !report.is_valid() {
        return Err(Error::InvalidFlow(format!(
            "{:?}",
            report.violations.first()
        )));
    }

    let n = g.vertex_count();
    let incoming = |e: usize, v: usize| -> Point {
        let x = f.value(e);
        if g.head(e) == v {
            [x[0], x[1]]
        } else {
            [-x[0], -x[1]]
        }
    };
    let mut triangles = Vec::with_capacity(n);
    let mut side_map = Vec::with_capacity(n);
    let mut degenerate = Vec::new();
    for v in 0..n {
        let inc = g.incident(v);
        let mut edges = [inc[0], inc[1], inc[2]];
        let (a1, a2) = (incoming(edges[0], v), incoming(edges[1], v));
        let area = cross(a1, a2) / 2.0;
        let scale = length(a1) * length(a2);
        if area.abs() <= DEGENERATE_AREA * scale.max(1.0) {
            degenerate.push(v);
        } else if area < 0.0 {
            edges.swap(1, 2);
        }
        let a1 = incoming(edges[0], v);
        let a2 = incoming(edges[1], v);
        triangles.push([[0.0, 0.0], a1, add(a1, a2)]);
        side_map.push(edges);
    }
    let mut t = FlowTriangulation {
        triangles,
        side_map,
    };

    let position = |t: &FlowTriangulation, v: usize, e: usize| -> usize {
        t.side_map[v]
            .iter()
            .position(|&x| x == e)
            .expect("edge on its endpoint")
    };
    let mut placed = vec![false; n];
    for root in 0..n {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                let w = g.opposite(e, v);
                if placed[w] {
                    continue;
                }
                let s = position(&t, v, e);
                let q = t.triangles[v][(s + 1) % 3];
                let sw = position(&t, w, e);
                let start_w = t.triangles[w][sw];
                t.translate(w, sub(q, start_w));
                placed[w] = true;
                queue.push_back(w);
            }
        }
    }

    let overlaps = overlapping_pairs(&t, OVERLAP_TOLERANCE);
    let layout = if overlaps.is_empty() {
        Layout::Attached
    } else {
        t = exploded(&t);
        Layout::Exploded
    };
    Ok(Triangulated {
        triangulation: t,
        layout,
        overlaps,
        degenerate,
    })
}

/// Copies of the triangles spread on a square grid, centroids at cell centres.
pub fn exploded(t: &FlowTriangulation) -> FlowTriangulation {
    let n = t.vertex_count();
    let cols = (n as f64).sqrt().ceil().max(1.0) as usize;
    let longest = t.side_lengths().fold(0.0f64, f64::max);
    let cell = 1.5 * longest.max(1.0);
    let mut out = t.clone();
    for v in 0..n {
        let c = centroid(&t.triangles[v]);
        let target = [(v % cols) as f64 * cell, -((v / cols) as f64) * cell];
        out.translate(v, sub(target, c));
    }
    out
}

pub fn centroid(tri: &[Point; 3]) -> Point {
    [
        (tri[0][0] + tri[1][0] + tri[2][0]) / 3.0,
        (tri[0][1] + tri[1][1] + tri[2][1]) / 3.0,
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TriangulationViolation {
    /// A triangle does not carry three distinct edges.
    RepeatedEdge {
        vertex: usize,
        edge: usize,
    },
    /// An edge is not carried by exactly two sides.
    Multiplicity {
        edge: usize,
        count: usize,
    },
    NotParallel {
        edge: usize,
        cross: f64,
    },
    LengthMismatch {
        edge: usize,
        difference: f64,
    },
    SameSide {
        edge: usize,
    },
    LengthWindow {
        vertex: usize,
        side: usize,
        length: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangulationReport {
    pub valid: bool,
    pub violations: Vec<TriangulationViolation>,
    pub degenerate: Vec<usize>,
}

/// Checks the three triangulation axioms and the side-length window `[1, r - 1]`.
pub fn validate(t: &FlowTriangulation, r: f64, tolerance: f64) -> TriangulationReport {
    let mut violations = structural_violations(t, tolerance);
    for v in 0..t.vertex_count() {
        for s in 0..3 {
            let len = length(t.side(v, s));
            if len < 1.0 - tolerance || len > r - 1.0 + tolerance {
                violations.push(TriangulationViolation::LengthWindow {
                    vertex: v,
                    side: s,
                    length: len,
                });
            }
        }
    }
    let degenerate = (0..t.vertex_count())
        .filter(|&v| signed_area(&t.triangles[v]).abs() <= DEGENERATE_AREA)
        .collect();
    TriangulationReport {
        valid: violations.is_empty(),
        violations,
        degenerate,
    }
}

fn structural_violations(t: &FlowTriangulation, tolerance: f64) -> Vec<TriangulationViolation> {
    let mut violations = Vec::new();
    for (v, sides) in t.side_map.iter().enumerate() {
        for s in 0..3 {
            if sides[..s].contains(&sides[s]) {
                violations.push(TriangulationViolation::RepeatedEdge {
                    vertex: v,
                    edge: sides[s],
                });
            }
        }
    }
    for (e, carriers) in t.edge_sides().iter().enumerate() {
        if carriers.len() != 2 {
            violations.push(TriangulationViolation::Multiplicity {
                edge: e,
                count: carriers.len(),
            });
            continue;
        }
        let [(u, su), (v, sv)] = [carriers[0], carriers[1]];
        let (wu, wv) = (t.side(u, su), t.side(v, sv));
        let (lu, lv) = (length(wu), length(wv));
        let sin = if lu > 0.0 && lv > 0.0 {
            cross(wu, wv) / (lu * lv)
        } else {
            0.0
        };
        if sin.abs() > tolerance {
            violations.push(TriangulationViolation::NotParallel {
                edge: e,
                cross: sin,
            });
            continue;
        }
        if (lu - lv).abs() > tolerance {
            violations.push(TriangulationViolation::LengthMismatch {
                edge: e,
                difference: lu - lv,
            });
            continue;
        }
        // Both third corners measured against the common line direction.
        let third_u = sub(t.triangles[u][(su + 2) % 3], t.triangles[u][su]);
        let third_v = sub(t.triangles[v][(sv + 2) % 3], t.triangles[v][sv]);
        let side_u = cross(wv, third_u);
        let side_v = cross(wv, third_v);
        let flat = DEGENERATE_AREA.max(tolerance * lv * lv);
        if side_u.abs() > flat && side_v.abs() > flat && side_u.signum() == side_v.signum() {
            violations.push(TriangulationViolation::SameSide { edge: e });
        }
    }
    violations
}

/// Reads the flow back off a triangulation.
///
/// For an edge `u -> v` the value is the shared side directed so that `T_u`
/// lies on its right and `T_v` on its left.
pub fn detriangulate(g: &Multigraph, t: &FlowTriangulation) -> Result<VectorFlow> {
    if t.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidTriangulation(format!(
            "{} triangles for {} vertices",
            t.vertex_count(),
            g.vertex_count()
        )));
    }
    if let Some(v) = structural_violations(t, DEFAULT_TOLERANCE).first() {
        return Err(Error::InvalidTriangulation(format!("{v:?}")));
    }
    for v in 0..g.vertex_count() {
        let mut expected = g.incident(v).to_vec();
        let mut got = t.side_map[v].to_vec();
        expected.sort_unstable();
        got.sort_unstable();
        if expected != got {
            return Err(Error::InvalidTriangulation(format!(
                "triangle {v} carries edges {got:?}, vertex has {expected:?}"
            )));
        }
    }
    let mut values = vec![0.0; 2 * g.edge_count()];
    for (e, carriers) in t.edge_sides().iter().enumerate().take(g.edge_count()) {
        let head = g.head(e);
        let &(v, s) = carriers
            .iter()
            .find(|(v, _)| *v == head)
            .expect("validated");
        let w = t.side(v, s);
        // A clockwise triangle lies to the right of its own sides.
        let flip = signed_area(&t.triangles[v]) < -DEGENERATE_AREA;
        let w = if flip { [-w[0], -w[1]] } else { w };
        values[2 * e] = w[0];
        values[2 * e + 1] = w[1];
    }
    VectorFlow::new(2, values)
}
