//! Vector-valued flows and their verification.
//!
//! A [`VectorFlow`] assigns a `d`-dimensional real vector to every edge,
//! measured along the edge's reference orientation. A flow is a nowhere-zero
//! `r`-flow in dimension `d` when every vertex balances and every edge norm,
//! after scaling the smallest to 1, is at most `r - 1`. The smallest such `r`
//! for a given assignment is its *strength*, `1 + max_norm / min_norm`.

mod bounds;
mod json;

pub use bounds::{lower_bound, wheel_flow_number};
pub use json::{FlowDocument, GraphRef};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Absolute per-vertex conservation tolerance used when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct VectorFlow {
    d: usize,
    // edge-major, `d` components per edge
    values: Vec<f64>,
}

impl VectorFlow {
    pub fn new(d: usize, values: Vec<f64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Shape("flow dimension must be positive".into()));
        }
        if !values.len().is_multiple_of(d) {
            return Err(Error::Shape(format!(
                "{} components do not split into vectors of length {d}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|x| !x.is_finite()) {
            return Err(Error::Data(format!(
                "component {} of edge {} is not finite",
                i % d,
                i / d
            )));
        }
        Ok(Self { d, values })
    }

    pub fn from_vectors(d: usize, vectors: &[Vec<f64>]) -> Result<Self> {
        if let Some((e, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != d) {
            return Err(Error::Shape(format!(
                "edge {e} has {} components, expected {d}",
                v.len()
            )));
        }
        Self::new(d, vectors.concat())
    }

    pub fn zeros(d: usize, edge_count: usize) -> Self {
        assert!(d > 0);
        Self {
            d,
            values: vec![0.0; d * edge_count],
        }
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn edge_count(&self) -> usize {
        self.values.len() / self.d
    }

    pub fn value(&self, edge: usize) -> &[f64] {
        &self.values[edge * self.d..(edge + 1) * self.d]
    }

    pub fn value_mut(&mut self, edge: usize) -> &mut [f64] {
        &mut self.values[edge * self.d..(edge + 1) * self.d]
    }

    pub fn components(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.d)
    }

    pub fn norm(&self, edge: usize) -> f64 {
        norm(self.value(edge))
    }

    pub fn norms(&self) -> Vec<f64> {
        self.vectors().map(norm).collect()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            d: self.d,
            values: self.values.iter().map(|x| x * factor).collect(),
        }
    }

    /// Pads (or truncates) every vector to `d` components.
    pub fn with_dimension(&self, d: usize) -> Self {
        assert!(d > 0);
        let mut values = Vec::with_capacity(d * self.edge_count());
        for v in self.vectors() {
            values.extend((0..d).map(|i| v.get(i).copied().unwrap_or(0.0)));
        }
        Self { d, values }
    }

    /// `(min_norm, max_norm)` over all edges; `(0, 0)` with no edges.
    pub fn norm_range(&self) -> (f64, f64) {
        let mut it = self.vectors().map(norm);
        match it.next() {
            None => (0.0, 0.0),
            Some(first) => it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))),
        }
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "id")]
pub enum Site {
    Vertex(usize),
    Edge(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub site: Site,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowReport {
    pub max_conservation_residual: f64,
    pub min_norm: f64,
    pub max_norm: f64,
    /// `1 + max_norm / min_norm` when the flow conserves and is nowhere zero.
    pub strength: Option<f64>,
    pub violations: Vec<Violation>,
}

impl FlowReport {
    pub fn is_valid(&self) -> bool {
        self.strength.is_some()
    }
}

fn check_shape(g: &Multigraph, f: &VectorFlow) -> Result<()> {
    if f.edge_count() != g.edge_count() {
        return Err(Error::Shape(format!(
            "flow has values for {} edges, graph has {}",
            f.edge_count(),
            g.edge_count()
        )));
    }
    Ok(())
}

/// Per-vertex `sum(outgoing) - sum(incoming)`, `d` components per vertex.
/// Loops cancel.
pub fn vertex_excess(g: &Multigraph, f: &VectorFlow) -> Vec<f64> {
    let d = f.dimension();
    let mut excess = vec![0.0; d * g.vertex_count()];
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        if t == h {
            continue;
        }
        for (k, x) in f.value(e).iter().enumerate() {
            excess[t * d + k] += x;
            excess[h * d + k] -= x;
        }
    }
    excess
}

/// Checks conservation at every vertex and the nowhere-zero condition.
pub fn verify_flow(g: &Multigraph, f: &VectorFlow, tolerance: f64) -> Result<FlowReport> {
    check_shape(g, f)?;
    let d = f.dimension();
    let mut violations = Vec::new();

    let excess = vertex_excess(g, f);
    let mut residual: f64 = 0.0;
    for (v, ex) in excess.chunks_exact(d).enumerate() {
        let r = norm(ex);
        residual = residual.max(r);
        if r > tolerance {
            violations.push(Violation {
                site: Site::Vertex(v),
                description: format!("conservation residual {r:.3e} exceeds {tolerance:.1e}"),
            });
        }
    }

    for (e, v) in f.vectors().enumerate() {
        if norm(v) == 0.0 {
            violations.push(Violation {
                site: Site::Edge(e),
                description: "zero flow value".into(),
            });
        }
    }

    let (min_norm, max_norm) = f.norm_range();
    let strength = (min_norm > 0.0 && residual <= tolerance).then(|| 1.0 + max_norm / min_norm);
    Ok(FlowReport {
        max_conservation_residual: residual,
        min_norm,
        max_norm,
        strength,
        violations,
    })
}

/// Strength of a valid flow at the default tolerance.
pub fn strength(f: &VectorFlow, g: &Multigraph) -> Result<f64> {
    let report = verify_flow(g, f, DEFAULT_TOLERANCE)?;
    report.strength.ok_or_else(|| {
        let why = report
            .violations
            .first()
            .map(|v| format!("{:?}: {}", v.site, v.description))
            .unwrap_or_else(|| "graph has no edges".into());
        Error::InvalidFlow(why)
    })
}

/// Rescales so the smallest edge norm is 1.
pub fn normalize(f: &VectorFlow) -> Result<VectorFlow> {
    let (min_norm, _) = f.norm_range();
    if min_norm <= 0.0 {
        return Err(Error::InvalidFlow("zero minimum norm".into()));
    }
    // Already normalized up to rounding in the norm itself.
    if (min_norm - 1.0).abs() <= 4.0 * f64::EPSILON {
        return Ok(f.clone());
    }
    Ok(f.scaled(1.0 / min_norm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn cyclic_triangle_has_strength_two() {
        let f = VectorFlow::from_vectors(2, &vec![vec![1.0, 0.0]; 3]).unwrap();
        let r = verify_flow(&triangle(), &f, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.max_conservation_residual, 0.0);
        assert_eq!(r.strength, Some(2.0));
        assert!(r.violations.is_empty());
    }

    #[test]
    fn zero_edge_is_flagged() {
        let mut f = VectorFlow::from_vectors(2, &vec![vec![1.0, 0.0]; 3]).unwrap();
        f.value_mut(1).fill(0.0);
        let r = verify_flow(&triangle(), &f, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.min_norm, 0.0);
        assert_eq!(r.strength, None);
        assert!(r.violations.iter().any(|v| v.site == Site::Edge(1)));
        assert!(matches!(
            strength(&f, &triangle()),
            Err(Error::InvalidFlow(_))
        ));
    }

    #[test]
    fn unbalanced_vertex_is_reported() {
        let f = VectorFlow::from_vectors(1, &[vec![1.0], vec![1.0], vec![2.0]]).unwrap();
        let r = verify_flow(&triangle(), &f, DEFAULT_TOLERANCE).unwrap();
        assert!((r.max_conservation_residual - 1.0).abs() < 1e-15);
        assert_eq!(r.strength, None);
        let sites: Vec<_> = r.violations.iter().map(|v| v.site).collect();
        assert_eq!(sites, vec![Site::Vertex(0), Site::Vertex(2)]);
    }

    #[test]
    fn loops_do_not_affect_conservation() {
        let g = Multigraph::new(1, vec![(0, 0)]).unwrap();
        let f = VectorFlow::from_vectors(2, &[vec![3.0, 4.0]]).unwrap();
        let r = verify_flow(&g, &f, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(r.max_norm, 5.0);
        assert_eq!(r.strength, Some(2.0));
    }

    #[test]
    fn shape_and_data_errors() {
        let f = VectorFlow::from_vectors(2, &vec![vec![1.0, 0.0]; 2]).unwrap();
        assert!(matches!(
            verify_flow(&triangle(), &f, 1e-9),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            VectorFlow::new(2, vec![1.0, f64::NAN]),
            Err(Error::Data(_))
        ));
        assert!(matches!(
            VectorFlow::from_vectors(2, &[vec![1.0]]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn strengths_from_norm_sets() {
        // Three parallel edges: e0 + e1 leave vertex 0, e2 returns.
        let g = Multigraph::new(2, vec![(0, 1), (0, 1), (1, 0)]).unwrap();
        let with = |a: [f64; 2], b: [f64; 2]| {
            VectorFlow::from_vectors(2, &[a.to_vec(), b.to_vec(), vec![a[0] + b[0], a[1] + b[1]]])
                .unwrap()
        };
        let equal = with([1.0, 0.0], [-0.5, 3f64.sqrt() / 2.0]);
        assert!((strength(&equal, &g).unwrap() - 2.0).abs() < 1e-15);
        let square = with([1.0, 0.0], [0.0, 1.0]);
        assert!((strength(&square, &g).unwrap() - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-15);
        let turn = 72f64.to_radians();
        let pentagon = with([1.0, 0.0], [turn.cos(), turn.sin()]);
        let tau = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((strength(&pentagon, &g).unwrap() - tau * tau).abs() < 1e-12);
    }

    #[test]
    fn normalize_scales_min_to_one() {
        let s2 = std::f64::consts::SQRT_2;
        let f = VectorFlow::from_vectors(2, &[vec![2.0, 0.0], vec![2.0, 2.0]]).unwrap();
        let n = normalize(&f).unwrap();
        assert_eq!(n.norm(0), 1.0);
        assert!((n.norm(1) - s2).abs() < 1e-15);
        assert_eq!(normalize(&n).unwrap(), n);
        assert!(normalize(&VectorFlow::zeros(2, 1)).is_err());
    }
}
