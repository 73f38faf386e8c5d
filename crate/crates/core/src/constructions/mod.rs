//! Closed-form and combinatorial flow constructions.

mod bipartite;
mod intflow;
mod petersen;

pub use bipartite::{bipartite_cubic_flow, three_edge_colouring_bipartite};
pub use intflow::{find_int_flow_pair, seymour_flow, seymour_flow_with_budget, IntFlowPair};
pub use petersen::{petersen_flow, petersen_triangulation};

use std::f64::consts::PI;

use crate::cdc::{verify_ocdc, OrientedCycleDoubleCover};
use crate::error::{Error, Result};
use crate::flow::{verify_flow, VectorFlow, DEFAULT_TOLERANCE};
use crate::graph::{prism, wheel, Multigraph};

/// Vertices of a regular polygon with unit side length.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub points: Vec<[f64; 2]>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest and largest distance between distinct points.
    pub fn distance_range(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                let d = (a[0] - b[0]).hypot(a[1] - b[1]);
                lo = lo.min(d);
                hi = hi.max(d);
            }
        }
        (lo, hi)
    }
}

/// Regular `k`-gon of side 1 centred at the origin, first vertex on the
/// positive x-axis. `k = 2` gives two points at distance 1.
pub fn kgon_points(k: usize) -> Result<PointSet> {
    if k < 2 {
        return Err(Error::Domain(format!("polygon needs k >= 2, got {k}")));
    }
    let radius = 0.5 / (PI / k as f64).sin();
    let points = (0..k)
        .map(|i| {
            let angle = 2.0 * PI * i as f64 / k as f64;
            [radius * angle.cos(), radius * angle.sin()]
        })
        .collect();
    Ok(PointSet { points })
}

/// Two-dimensional flow from an oriented cycle double cover: the edge carrying
/// pair `(i, j)` gets `p_i - p_j`.
///
/// The graph's own reference orientation plays the role of the arbitrary
/// base orientation; reversing an edge would only negate its value.
pub fn flow_from_ocdc(
    g: &Multigraph,
    cover: &OrientedCycleDoubleCover,
    points: &PointSet,
) -> Result<VectorFlow> {
    if points.len() != cover.k {
        return Err(Error::Shape(format!(
            "cover has {} cycles but {} points were given",
            cover.k,
            points.len()
        )));
    }
    let check = verify_ocdc(g, cover)?;
    if !check.valid {
        return Err(Error::Domain(format!(
            "not an oriented cycle double cover: {:?}",
            check.violations.first()
        )));
    }
    let mut values = Vec::with_capacity(2 * g.edge_count());
    for &(i, j) in &cover.pairs {
        let (a, b) = (points.points[i - 1], points.points[j - 1]);
        values.extend([a[0] - b[0], a[1] - b[1]]);
    }
    VectorFlow::new(2, values)
}

/// Extends a flow on the wheel `W_n` to the prism `P_n` with the same values.
///
/// Rim edge `i` and spoke `i` keep their values. In each square
/// `u u' v' v` (`u = i`, `v = i+1` on the outer cycle) the inner edge
/// `v' -> u'` carries the same vector as `u -> v`, so inner edge
/// `n+i -> n+i+1` gets the negated rim value.
pub fn prism_flow(n: usize, wheel_flow: &VectorFlow) -> Result<VectorFlow> {
    if n.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "prism extension needs odd n, got {n}"
        )));
    }
    let w = wheel(n)?;
    let report = verify_flow(&w, wheel_flow, DEFAULT_TOLERANCE)?;
    if !report.is_valid() {
        return Err(Error::InvalidFlow(format!(
            "not a nowhere-zero flow on W_{n}: {:?}",
            report.violations.first()
        )));
    }
    let d = wheel_flow.dimension();
    let target = prism(n)?;
    let mut out = VectorFlow::zeros(d, target.edge_count());
    for i in 0..n {
        out.value_mut(i).copy_from_slice(wheel_flow.value(i));
        for (dst, src) in out.value_mut(n + i).iter_mut().zip(wheel_flow.value(i)) {
            *dst = -src;
        }
        out.value_mut(2 * n + i)
            .copy_from_slice(wheel_flow.value(n + i));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::{find_ocdc, DEFAULT_BUDGET};
    use crate::flow::strength;
    use crate::graph::{complete, k33, petersen};

    const TAU: f64 = 1.618_033_988_749_895;

    #[test]
    fn polygon_distances() {
        let (lo, hi) = kgon_points(2).unwrap().distance_range();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
        let (lo, hi) = kgon_points(3).unwrap().distance_range();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);
        let (lo, hi) = kgon_points(4).unwrap().distance_range();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - std::f64::consts::SQRT_2).abs() < 1e-15);
        let (lo, hi) = kgon_points(5).unwrap().distance_range();
        assert!((lo - 1.0).abs() < 1e-15 && (hi - TAU).abs() < 1e-15);
        let p = kgon_points(5).unwrap();
        assert!(p.points[0][1] == 0.0 && p.points[0][0] > 0.0);
        assert!(kgon_points(1).is_err());
    }

    #[test]
    fn cover_flows_meet_polygon_bounds() {
        let cases = [
            (k33(), 3, 2.0),
            (complete(4).unwrap(), 4, 1.0 + std::f64::consts::SQRT_2),
            (petersen(), 5, TAU * TAU),
        ];
        for (g, k, bound) in cases {
            let cover = find_ocdc(&g, k, DEFAULT_BUDGET).unwrap().found().unwrap();
            let points = kgon_points(k).unwrap();
            let f = flow_from_ocdc(&g, &cover, &points).unwrap();
            for (e, &(i, j)) in cover.pairs.iter().enumerate() {
                let (a, b) = (points.points[i - 1], points.points[j - 1]);
                assert_eq!(f.value(e), &[a[0] - b[0], a[1] - b[1]]);
            }
            let report = verify_flow(&g, &f, DEFAULT_TOLERANCE).unwrap();
            assert!(report.max_conservation_residual <= 1e-12);
            assert!(strength(&f, &g).unwrap() <= bound + 1e-12, "k = {k}");
        }
    }

    #[test]
    fn cover_flow_shape_mismatch() {
        let g = k33();
        let cover = find_ocdc(&g, 3, DEFAULT_BUDGET).unwrap().found().unwrap();
        assert!(matches!(
            flow_from_ocdc(&g, &cover, &kgon_points(4).unwrap()),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn prism_copies_wheel_values() {
        // A strength-2 flow on W_3 = K_4 does not exist, but any valid flow will do here.
        let w = wheel(3).unwrap();
        let cover = find_ocdc(&w, 4, DEFAULT_BUDGET).unwrap().found().unwrap();
        let wf = flow_from_ocdc(&w, &cover, &kgon_points(4).unwrap()).unwrap();
        let pf = prism_flow(3, &wf).unwrap();
        let p = prism(3).unwrap();
        let report = verify_flow(&p, &pf, DEFAULT_TOLERANCE).unwrap();
        assert!(report.max_conservation_residual <= 1e-12);
        assert_eq!(strength(&pf, &p).unwrap(), strength(&wf, &w).unwrap());
        assert!(matches!(prism_flow(4, &wf), Err(Error::Domain(_))));
        let broken = wf.scaled(0.0);
        assert!(matches!(prism_flow(3, &broken), Err(Error::InvalidFlow(_))));
    }
}
