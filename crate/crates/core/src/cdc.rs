//! Oriented cycle double covers: verification and exhaustive search.
//!
//! A cover with `k` directed cycles is stored edge-wise: edge `e` carries the
//! pair `(i, j)` when cycle `i` traverses it along its reference orientation
//! and cycle `j` against it. Reading the pair as the vector `e_i - e_j` in
//! `Z^k`, the cover is exactly a nowhere-zero flow with values in that set,
//! which is what [`find_ocdc`] searches for.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Cover JSON: `{"k": <int>, "pairs": [[i, j], ...]}` with 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedCycleDoubleCover {
    pub k: usize,
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole space was searched without a solution.
    Exhausted,
    Timeout,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CoverViolation {
    /// Cycle `cycle` is unbalanced at `vertex` by `imbalance` (out minus in).
    Unbalanced {
        vertex: usize,
        cycle: usize,
        imbalance: i64,
    },
    /// Both traversals of `edge` belong to the same cycle.
    SameCycle { edge: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverCheck {
    pub valid: bool,
    pub violations: Vec<CoverViolation>,
}

pub fn verify_ocdc(g: &Multigraph, cover: &OrientedCycleDoubleCover) -> Result<CoverCheck> {
    if cover.pairs.len() != g.edge_count() {
        return Err(Error::Shape(format!(
            "cover assigns {} edges, graph has {}",
            cover.pairs.len(),
            g.edge_count()
        )));
    }
    let k = cover.k;
    let mut violations = Vec::new();
    let mut balance = vec![0i64; g.vertex_count() * k];
    for (e, &(i, j)) in cover.pairs.iter().enumerate() {
        if !(1..=k).contains(&i) || !(1..=k).contains(&j) {
            return Err(Error::Shape(format!(
                "edge {e} uses cycle label outside 1..={k}: ({i}, {j})"
            )));
        }
        if i == j {
            violations.push(CoverViolation::SameCycle { edge: e });
            continue;
        }
        let (t, h) = g.endpoints(e);
        balance[t * k + i - 1] += 1;
        balance[h * k + i - 1] -= 1;
        balance[h * k + j - 1] += 1;
        balance[t * k + j - 1] -= 1;
    }
    for v in 0..g.vertex_count() {
        for c in 0..k {
            let imbalance = balance[v * k + c];
            if imbalance != 0 {
                violations.push(CoverViolation::Unbalanced {
                    vertex: v,
                    cycle: c + 1,
                    imbalance,
                });
            }
        }
    }
    Ok(CoverCheck {
        valid: violations.is_empty(),
        violations,
    })
}

/// Depth-first search for an oriented `k`-cycle double cover.
///
/// Edges are assigned in [`Multigraph::dfs_edge_order`]. Cycle labels are
/// canonicalised by order of first use, so the first edge is always `(1, 2)`
/// and each later pair introduces at most the next unused labels. A vertex is
/// pruned once some label's imbalance can no longer be cancelled by its
/// remaining unassigned edges. `budget` bounds the number of pair
/// assignments tried.
pub fn find_ocdc(
    g: &Multigraph,
    k: usize,
    budget: u64,
) -> Result<SearchOutcome<OrientedCycleDoubleCover>> {
    if k < 2 {
        return Err(Error::Domain(format!("cover needs k >= 2, got {k}")));
    }
    g.require_bridgeless_connected()?;
    let order = g.dfs_edge_order();
    let mut remaining = vec![0usize; g.vertex_count()];
    for &(t, h) in g.edges() {
        if t != h {
            remaining[t] += 1;
            remaining[h] += 1;
        }
    }
    let mut search = CoverSearch {
        g,
        k,
        order,
        balance: vec![0; g.vertex_count() * k],
        remaining,
        pairs: vec![(0, 0); g.edge_count()],
        expansions: 0,
        budget,
    };
    Ok(match search.run(0, 0) {
        Step::Solved => SearchOutcome::Found(OrientedCycleDoubleCover {
            k,
            pairs: search.pairs,
        }),
        Step::Dead => SearchOutcome::Exhausted,
        Step::OutOfBudget => SearchOutcome::Timeout,
    })
}

enum Step {
    Solved,
    Dead,
    OutOfBudget,
}

struct CoverSearch<'a> {
    g: &'a Multigraph,
    k: usize,
    order: Vec<usize>,
    balance: Vec<i32>,
    remaining: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    expansions: u64,
    budget: u64,
}

impl CoverSearch<'_> {
    fn feasible(&self, v: usize) -> bool {
        let rem = self.remaining[v] as i32;
        let row = &self.balance[v * self.k..(v + 1) * self.k];
        let mut total = 0;
        for &b in row {
            if b.abs() > rem {
                return false;
            }
            total += b.abs();
        }
        total <= 2 * rem
    }

    fn apply(&mut self, t: usize, h: usize, i: usize, j: usize, sign: i32) {
        let k = self.k;
        self.balance[t * k + i] += sign;
        self.balance[h * k + i] -= sign;
        self.balance[h * k + j] += sign;
        self.balance[t * k + j] -= sign;
    }

    /// `used` is the number of labels introduced so far.
    fn run(&mut self, pos: usize, used: usize) -> Step {
        let Some(&e) = self.order.get(pos) else {
            return Step::Solved;
        };
        let (t, h) = self.g.endpoints(e);
        let is_loop = t == h;
        if !is_loop {
            self.remaining[t] -= 1;
            self.remaining[h] -= 1;
        }
        let mut result = Step::Dead;
        'pairs: for i in 0..self.k.min(used + 1) {
            let after_i = used.max(i + 1);
            for j in 0..self.k.min(after_i + 1) {
                if j == i {
                    continue;
                }
                self.expansions += 1;
                if self.expansions > self.budget {
                    result = Step::OutOfBudget;
                    break 'pairs;
                }
                self.pairs[e] = (i + 1, j + 1);
                if !is_loop {
                    self.apply(t, h, i, j, 1);
                }
                let ok = is_loop || (self.feasible(t) && self.feasible(h));
                if ok {
                    match self.run(pos + 1, after_i.max(j + 1)) {
                        Step::Dead => {}
                        other => {
                            result = other;
                            if !is_loop {
                                self.apply(t, h, i, j, -1);
                            }
                            break 'pairs;
                        }
                    }
                }
                if !is_loop {
                    self.apply(t, h, i, j, -1);
                }
            }
        }
        if !is_loop {
            self.remaining[t] += 1;
            self.remaining[h] += 1;
        }
        result
    }
}
