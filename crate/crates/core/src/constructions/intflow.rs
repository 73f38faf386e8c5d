use crate::error::{Error, Result};
use crate::flow::VectorFlow;
use crate::graph::Multigraph;

/// An integer 2-flow `f2` (values in -1..=1) and an integer 3-flow `f3`
/// (values in -2..=2) whose supports together cover every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFlowPair {
    pub f2: Vec<i8>,
    pub f3: Vec<i8>,
}

// Tried in this order; small norms first.
const CANDIDATES: [(i8, i8); 14] = [
    (0, 1),
    (0, -1),
    (1, 0),
    (-1, 0),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
    (0, 2),
    (0, -2),
    (1, 2),
    (1, -2),
    (-1, 2),
    (-1, -2),
];

/// Joint backtracking over edges in depth-first order for an [`IntFlowPair`].
///
/// Such a pair exists on every bridgeless graph, so running out of search
/// space is reported as an internal error; running out of `budget`
/// (assignments tried) is a timeout.
pub fn find_int_flow_pair(g: &Multigraph, budget: u64) -> Result<IntFlowPair> {
    g.require_bridgeless_connected()?;
    let mut remaining = vec![0i32; g.vertex_count()];
    for &(t, h) in g.edges() {
        if t != h {
            remaining[t] += 1;
            remaining[h] += 1;
        }
    }
    let mut search = PairSearch {
        g,
        order: g.dfs_edge_order(),
        excess2: vec![0; g.vertex_count()],
        excess3: vec![0; g.vertex_count()],
        remaining,
        f2: vec![0; g.edge_count()],
        f3: vec![0; g.edge_count()],
        expansions: 0,
        budget,
    };
    match search.run(0) {
        Some(true) => Ok(IntFlowPair {
            f2: search.f2,
            f3: search.f3,
        }),
        Some(false) => Err(Error::Internal(
            "no integer 2-flow/3-flow pair found on a bridgeless graph".into(),
        )),
        None => Err(Error::Timeout { budget }),
    }
}

/// Two-dimensional flow `(f2(e), f3(e))`; every norm lies in `{1, √2, 2, √5}`.
pub fn seymour_flow(g: &Multigraph) -> Result<VectorFlow> {
    seymour_flow_with_budget(g, crate::cdc::DEFAULT_BUDGET)
}

pub fn seymour_flow_with_budget(g: &Multigraph, budget: u64) -> Result<VectorFlow> {
    let pair = find_int_flow_pair(g, budget)?;
    let values = pair
        .f2
        .iter()
        .zip(&pair.f3)
        .flat_map(|(&a, &b)| [a as f64, b as f64])
        .collect();
    VectorFlow::new(2, values)
}

struct PairSearch<'a> {
    g: &'a Multigraph,
    order: Vec<usize>,
    excess2: Vec<i32>,
    excess3: Vec<i32>,
    remaining: Vec<i32>,
    f2: Vec<i8>,
    f3: Vec<i8>,
    expansions: u64,
    budget: u64,
}

impl PairSearch<'_> {
    fn feasible(&self, v: usize) -> bool {
        let rem = self.remaining[v];
        self.excess2[v].abs() <= rem && self.excess3[v].abs() <= 2 * rem
    }

    fn shift(&mut self, t: usize, h: usize, a: i8, b: i8, sign: i32) {
        let (a, b) = (a as i32 * sign, b as i32 * sign);
        self.excess2[t] += a;
        self.excess2[h] -= a;
        self.excess3[t] += b;
        self.excess3[h] -= b;
    }

    /// `Some(true)` solved, `Some(false)` dead end, `None` out of budget.
    fn run(&mut self, pos: usize) -> Option<bool> {
        let Some(&e) = self.order.get(pos) else {
            return Some(true);
        };
        let (t, h) = self.g.endpoints(e);
        if t == h {
            self.f2[e] = CANDIDATES[0].0;
            self.f3[e] = CANDIDATES[0].1;
            return self.run(pos + 1);
        }
        self.remaining[t] -= 1;
        self.remaining[h] -= 1;
        let mut result = Some(false);
        for &(a, b) in &CANDIDATES {
            self.expansions += 1;
            if self.expansions > self.budget {
                result = None;
                break;
            }
            self.shift(t, h, a, b, 1);
            if self.feasible(t) && self.feasible(h) {
                self.f2[e] = a;
                self.f3[e] = b;
                let inner = self.run(pos + 1);
                if inner != Some(false) {
                    self.shift(t, h, a, b, -1);
                    result = inner;
                    break;
                }
            }
            self.shift(t, h, a, b, -1);
        }
        self.remaining[t] += 1;
        self.remaining[h] += 1;
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{strength, verify_flow, DEFAULT_TOLERANCE};
    use crate::graph::{complete, petersen};

    fn conserves(g: &Multigraph, values: &[i8]) -> bool {
        let mut net = vec![0i32; g.vertex_count()];
        for (e, &x) in values.iter().enumerate() {
            let (t, h) = g.endpoints(e);
            net[t] += x as i32;
            net[h] -= x as i32;
        }
        net.iter().all(|&x| x == 0)
    }

    fn check_pair(g: &Multigraph, pair: &IntFlowPair) {
        assert!(conserves(g, &pair.f2));
        assert!(conserves(g, &pair.f3));
        assert!(pair.f2.iter().all(|x| (-1..=1).contains(x)));
        assert!(pair.f3.iter().all(|x| (-2..=2).contains(x)));
        assert!(pair
            .f2
            .iter()
            .zip(&pair.f3)
            .all(|(&a, &b)| a != 0 || b != 0));
    }

    #[test]
    fn five_cycle_uses_a_unit_circulation() {
        let g = Multigraph::new(5, (0..5).map(|i| (i, (i + 1) % 5)).collect()).unwrap();
        let pair = find_int_flow_pair(&g, 1000).unwrap();
        check_pair(&g, &pair);
        assert!(pair.f2.iter().all(|&x| x == 0));
        assert!(pair.f3.iter().all(|&x| x.abs() == 1));
    }

    #[test]
    fn k4_and_petersen_pairs() {
        for g in [complete(4).unwrap(), petersen()] {
            let pair = find_int_flow_pair(&g, crate::cdc::DEFAULT_BUDGET).unwrap();
            check_pair(&g, &pair);
            let f = seymour_flow(&g).unwrap();
            let r = verify_flow(&g, &f, DEFAULT_TOLERANCE).unwrap();
            assert_eq!(r.max_conservation_residual, 0.0);
            assert!(strength(&f, &g).unwrap() <= 1.0 + 5f64.sqrt() + 1e-12);
        }
    }

    #[test]
    fn bridges_are_domain_errors() {
        let g = Multigraph::new(2, vec![(0, 1)]).unwrap();
        assert!(matches!(find_int_flow_pair(&g, 10), Err(Error::Bridge(_))));
    }
}
