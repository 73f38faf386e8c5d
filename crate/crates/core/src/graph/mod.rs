//! Undirected multigraphs with a fixed reference orientation per edge.
//!
//! Every edge is stored as `(tail, head)` and identified by its position in
//! the edge list. Flow values elsewhere in the crate are always expressed
//! along this reference orientation.

mod generators;
mod io;
mod structure;

pub use generators::{
    complete, cube, flower_snark, generate, k33, petersen, prism, triangle_replaced, wheel, Family,
};
pub use io::{parse_graph, to_edge_list_json, to_graph6, EdgeListJson, GraphFormat};
pub use structure::{bipartition, bridges, components, fundamental_cycles, odd_girth, CycleBasis};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    name: Option<String>,
    // Edge ids incident to each vertex, in increasing id order. Loops appear twice.
    incidence: Vec<Vec<usize>>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut incidence = vec![Vec::new(); vertex_count];
        for (id, &(t, h)) in edges.iter().enumerate() {
            if t >= vertex_count || h >= vertex_count {
                return Err(Error::Schema(format!(
                    "edge {id} = ({t}, {h}) references a vertex outside 0..{vertex_count}"
                )));
            }
            incidence[t].push(id);
            incidence[h].push(id);
        }
        Ok(Self {
            vertex_count,
            edges,
            name: None,
            incidence,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, edge: usize) -> (usize, usize) {
        self.edges[edge]
    }

    pub fn tail(&self, edge: usize) -> usize {
        self.edges[edge].0
    }

    pub fn head(&self, edge: usize) -> usize {
        self.edges[edge].1
    }

    pub fn is_loop(&self, edge: usize) -> bool {
        let (t, h) = self.edges[edge];
        t == h
    }

    /// Incident edge ids of `v`; a loop is listed twice.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    /// The endpoint of `edge` opposite to `v`.
    pub fn opposite(&self, edge: usize, v: usize) -> usize {
        let (t, h) = self.edges[edge];
        if t == v {
            h
        } else {
            t
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn is_cubic(&self) -> bool {
        self.vertex_count > 0 && (0..self.vertex_count).all(|v| self.degree(v) == 3)
    }

    pub fn is_connected(&self) -> bool {
        components(self).1 <= 1
    }

    /// Fails with [`Error::Disconnected`] or [`Error::Bridge`] unless the
    /// graph is connected and bridgeless.
    pub fn require_bridgeless_connected(&self) -> Result<()> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let b = bridges(self);
        if !b.is_empty() {
            return Err(Error::Bridge(b));
        }
        Ok(())
    }

    /// Depth-first ordering of edges from vertex 0: vertices are taken in
    /// discovery order and each contributes its incident edges not yet listed.
    /// Vertices therefore become fully assigned as early as possible, which is
    /// what the backtracking searches prune on.
    pub fn dfs_edge_order(&self) -> Vec<usize> {
        let n = self.vertex_count;
        let mut seen = vec![false; n];
        let mut order_v = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                order_v.push(v);
                for &e in self.incident(v).iter().rev() {
                    let w = self.opposite(e, v);
                    if !seen[w] {
                        stack.push(w);
                    }
                }
            }
        }
        let mut listed = vec![false; self.edge_count()];
        let mut order = Vec::with_capacity(self.edge_count());
        for v in order_v {
            for &e in self.incident(v) {
                if !listed[e] {
                    listed[e] = true;
                    order.push(e);
                }
            }
        }
        order
    }
}
