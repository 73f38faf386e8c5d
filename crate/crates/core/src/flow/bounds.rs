//! Closed-form wheel values and the odd-girth lower bound.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::graph::{bipartition, odd_girth, Multigraph};

/// Two-dimensional flow number of the wheel `W_n` (hub plus `n`-cycle).
pub fn wheel_flow_number(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "wheel flow number needs n >= 3, got {n}"
        )));
    }
    let nf = n as f64;
    Ok(match n % 6 {
        0 | 2 | 4 => 2.0,
        1 | 3 => 1.0 + 2.0 * (PI / 6.0 * nf / (nf - 1.0)).sin(),
        _ => 1.0 + 2.0 * (PI / 6.0 * (nf + 1.0) / nf).sin(),
    })
}

/// Certified lower bound on the `d`-dimensional flow number.
///
/// For cubic graphs in dimension 2 a chordless odd cycle of length `g`
/// contracts to `W_g`, so the wheel value at the odd girth is a lower bound.
/// Bipartite graphs, non-cubic graphs and other dimensions get the trivial 2.
pub fn lower_bound(g: &Multigraph, d: usize) -> Result<f64> {
    g.require_bridgeless_connected()?;
    if d != 2 || !g.is_cubic() || bipartition(g).is_some() {
        return Ok(2.0);
    }
    match odd_girth(g) {
        Some(girth) if girth >= 3 => wheel_flow_number(girth),
        _ => Ok(2.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, k33, petersen, prism, wheel};

    // Frozen from an independent evaluation of the three closed-form branches.
    const WHEEL_VALUES: [(usize, f64); 7] = [
        (3, 2.414213562373095),
        (4, 2.0),
        (5, 2.1755705045849463),
        (6, 2.0),
        (7, 2.147152872702092),
        (8, 2.0),
        (9, 2.1111404660392044),
    ];

    #[test]
    fn wheel_values() {
        for (n, expected) in WHEEL_VALUES {
            assert!(
                (wheel_flow_number(n).unwrap() - expected).abs() < 1e-15,
                "n = {n}"
            );
        }
        assert!((wheel_flow_number(3).unwrap() - (1.0 + std::f64::consts::SQRT_2)).abs() < 1e-15);
        assert!(matches!(wheel_flow_number(2), Err(Error::Domain(_))));
    }

    #[test]
    fn odd_branches_decrease_towards_two() {
        for start in [3, 7, 5] {
            let values: Vec<f64> = (0..20)
                .map(|i| wheel_flow_number(start + 6 * i).unwrap())
                .collect();
            for w in values.windows(2) {
                assert!(w[1] < w[0]);
            }
            let top = 1.0 + std::f64::consts::SQRT_2;
            assert!(values.iter().all(|&v| v > 2.0 && v <= top + 1e-15));
            assert!(values.last().unwrap() - 2.0 < 0.01);
        }
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(&k33(), 2).unwrap(), 2.0);
        assert_eq!(
            lower_bound(&complete(4).unwrap(), 2).unwrap(),
            wheel_flow_number(3).unwrap()
        );
        let p = lower_bound(&petersen(), 2).unwrap();
        assert!((p - 2.1755705045849463).abs() < 1e-15);
        assert_eq!(lower_bound(&petersen(), 3).unwrap(), 2.0);
        // non-cubic: trivial bound
        assert_eq!(lower_bound(&wheel(5).unwrap(), 2).unwrap(), 2.0);
        assert!((lower_bound(&prism(7).unwrap(), 2).unwrap() - 2.147152872702092).abs() < 1e-15);
    }

    #[test]
    fn lower_bound_rejects_bridges() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        assert!(matches!(lower_bound(&g, 2), Err(Error::Bridge(_))));
        let two_triangles =
            Multigraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(matches!(
            lower_bound(&two_triangles, 2),
            Err(Error::Disconnected)
        ));
    }
}
