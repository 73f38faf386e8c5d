use crate::error::{Error, Result};
use crate::flow::VectorFlow;
use crate::graph::{fundamental_cycles, Multigraph};

/// Coordinates on the cycle space: one `d`-vector per fundamental cycle.
/// Every coordinate vector induces a conserving edge assignment.
#[derive(Debug, Clone)]
pub struct CycleSpace {
    d: usize,
    cycles: usize,
    // per edge: (cycle, sign)
    memberships: Vec<Vec<(usize, f64)>>,
    defining: Vec<usize>,
}

impl CycleSpace {
    pub fn new(g: &Multigraph, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Config("dimension must be positive".into()));
        }
        g.require_bridgeless_connected()?;
        let basis = fundamental_cycles(g);
        let memberships = basis
            .edge_memberships(g.edge_count())
            .into_iter()
            .map(|ms| ms.into_iter().map(|(c, s)| (c, f64::from(s))).collect())
            .collect();
        Ok(Self {
            d,
            cycles: basis.dimension(),
            memberships,
            defining: basis.cycles.iter().map(|c| c.defining_edge).collect(),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Number of fundamental cycles.
    pub fn cycles(&self) -> usize {
        self.cycles
    }

    pub fn variables(&self) -> usize {
        self.cycles * self.d
    }

    pub fn edge_count(&self) -> usize {
        self.memberships.len()
    }

    /// Edge values, edge-major with `d` components each.
    pub fn edge_values_into(&self, x: &[f64], out: &mut [f64]) {
        let d = self.d;
        out.fill(0.0);
        for (e, ms) in self.memberships.iter().enumerate() {
            let y = &mut out[e * d..(e + 1) * d];
            for &(c, s) in ms {
                for (yk, xk) in y.iter_mut().zip(&x[c * d..(c + 1) * d]) {
                    *yk += s * xk;
                }
            }
        }
    }

    pub fn edge_values(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.edge_count() * self.d];
        self.edge_values_into(x, &mut out);
        out
    }

    /// Adjoint of [`edge_values_into`](Self::edge_values_into).
    pub fn pull_back_into(&self, edge_grad: &[f64], out: &mut [f64]) {
        let d = self.d;
        out.fill(0.0);
        for (e, ms) in self.memberships.iter().enumerate() {
            let g = &edge_grad[e * d..(e + 1) * d];
            for &(c, s) in ms {
                for (ok, gk) in out[c * d..(c + 1) * d].iter_mut().zip(g) {
                    *ok += s * gk;
                }
            }
        }
    }

    /// Gradient with respect to `x` of a function of a single edge value.
    pub fn edge_gradient(&self, e: usize, value_grad: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        let d = self.d;
        for &(c, s) in &self.memberships[e] {
            for (ok, gk) in out[c * d..(c + 1) * d].iter_mut().zip(value_grad) {
                *ok += s * gk;
            }
        }
    }

    pub fn flow(&self, x: &[f64]) -> VectorFlow {
        VectorFlow::new(self.d, self.edge_values(x)).expect("finite coordinates")
    }

    /// Coordinates of a conserving flow: the value on each cycle's defining
    /// edge, which lies in no other fundamental cycle.
    pub fn coordinates(&self, f: &VectorFlow) -> Result<Vec<f64>> {
        if f.edge_count() != self.edge_count() || f.dimension() != self.d {
            return Err(Error::Shape(format!(
                "flow is {} x {}, expected {} x {}",
                f.edge_count(),
                f.dimension(),
                self.edge_count(),
                self.d
            )));
        }
        Ok(self
            .defining
            .iter()
            .flat_map(|&e| f.value(e).iter().copied())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::vertex_excess;
    use crate::graph::{complete, petersen};

    #[test]
    fn coordinates_invert_flow() {
        let g = petersen();
        let space = CycleSpace::new(&g, 2).unwrap();
        assert_eq!(space.cycles(), 6);
        let x: Vec<f64> = (0..space.variables())
            .map(|i| (i as f64 * 0.7).sin())
            .collect();
        let f = space.flow(&x);
        assert!(vertex_excess(&g, &f).iter().all(|r| r.abs() < 1e-12));
        assert_eq!(space.coordinates(&f).unwrap(), x);
    }

    #[test]
    fn pull_back_is_adjoint() {
        let g = complete(4).unwrap();
        let space = CycleSpace::new(&g, 3).unwrap();
        let x: Vec<f64> = (0..space.variables()).map(|i| i as f64 - 4.0).collect();
        let w: Vec<f64> = (0..3 * g.edge_count()).map(|i| (i as f64).cos()).collect();
        let y = space.edge_values(&x);
        let mut back = vec![0.0; space.variables()];
        space.pull_back_into(&w, &mut back);
        let lhs: f64 = y.iter().zip(&w).map(|(a, b)| a * b).sum();
        let rhs: f64 = x.iter().zip(&back).map(|(a, b)| a * b).sum();
        assert!((lhs - rhs).abs() < 1e-9);
    }
}
