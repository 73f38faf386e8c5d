use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::flow::VectorFlow;
use crate::graph::{bipartition, Multigraph};

/// Proper edge colouring of a bipartite graph with maximum degree 3, colours
/// `0..3`, by alternating-path recolouring. Edges are coloured in id order.
pub fn three_edge_colouring_bipartite(g: &Multigraph) -> Result<Vec<u8>> {
    if bipartition(g).is_none() {
        return Err(Error::Domain("graph is not bipartite".into()));
    }
    if (0..g.vertex_count()).any(|v| g.degree(v) > 3) {
        return Err(Error::Domain("maximum degree exceeds 3".into()));
    }
    const NONE: usize = usize::MAX;
    let mut at = vec![[NONE; 3]; g.vertex_count()];
    let mut colour = vec![u8::MAX; g.edge_count()];
    let free = |at: &Vec<[usize; 3]>, v: usize| (0..3).find(|&c| at[v][c] == NONE).unwrap();
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        let a = free(&at, u);
        if at[v][a] != NONE {
            // Swap colours a and b along the a/b path leaving v. In a bipartite
            // graph this path cannot reach u, so a becomes free at both ends.
            let b = free(&at, v);
            let mut path = Vec::new();
            let (mut cur, mut c) = (v, a);
            while at[cur][c] != NONE {
                let edge = at[cur][c];
                path.push(edge);
                cur = g.opposite(edge, cur);
                c = if c == a { b } else { a };
            }
            for &edge in &path {
                let (x, y) = g.endpoints(edge);
                let c = colour[edge] as usize;
                at[x][c] = NONE;
                at[y][c] = NONE;
            }
            for &edge in &path {
                let (x, y) = g.endpoints(edge);
                let c = if colour[edge] as usize == a { b } else { a };
                colour[edge] = c as u8;
                at[x][c] = edge;
                at[y][c] = edge;
            }
        }
        colour[e] = a as u8;
        at[u][a] = e;
        at[v][a] = e;
    }
    Ok(colour)
}

/// Unit flow on a connected bipartite cubic graph using the cube roots of
/// unity: colour `c` maps to angle `2πc/3`, directed from the first colour
/// class to the second. Every vertex sees all three roots, which sum to zero.
pub fn bipartite_cubic_flow(g: &Multigraph) -> Result<VectorFlow> {
    if !g.is_cubic() {
        return Err(Error::Domain("graph is not cubic".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let side = bipartition(g).ok_or_else(|| Error::Domain("graph is not bipartite".into()))?;
    let colour = three_edge_colouring_bipartite(g)?;
    let roots = [
        [1.0, 0.0],
        [-0.5, 3f64.sqrt() / 2.0],
        [-0.5, -(3f64.sqrt()) / 2.0],
    ];
    debug_assert!((roots[1][0] - (2.0 * PI / 3.0).cos()).abs() < 1e-15);
    let mut values = Vec::with_capacity(2 * g.edge_count());
    for (e, &c) in colour.iter().enumerate() {
        let r = roots[c as usize];
        let sign = if side[g.tail(e)] { -1.0 } else { 1.0 };
        values.extend([sign * r[0], sign * r[1]]);
    }
    VectorFlow::new(2, values)
}
