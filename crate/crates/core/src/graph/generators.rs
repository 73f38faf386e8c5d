//! Named graph families.

use super::Multigraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Wheel(usize),
    Prism(usize),
    Complete(usize),
    K33,
    Petersen,
    /// Isaacs flower snark `J_k`.
    FlowerSnark(usize),
    Cube,
    TriangleReplaced(Multigraph),
}

pub fn generate(family: &Family) -> Result<Multigraph> {
    match family {
        Family::Wheel(n) => wheel(*n),
        Family::Prism(n) => prism(*n),
        Family::Complete(n) => complete(*n),
        Family::K33 => Ok(k33()),
        Family::Petersen => Ok(petersen()),
        Family::FlowerSnark(k) => flower_snark(*k),
        Family::Cube => Ok(cube()),
        Family::TriangleReplaced(base) => triangle_replaced(base),
    }
}

/// Wheel `W_n`: rim vertices `0..n`, hub `n`.
///
/// Edge `i < n` is the rim edge `i -> i+1 (mod n)`; edge `n + i` is the spoke
/// `i -> hub`.
pub fn wheel(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(Error::Domain(format!("wheel needs n >= 3, got {n}")));
    }
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|i| (i, n)));
    Ok(Multigraph::new(n + 1, edges)?.with_name(format!("wheel:{n}")))
}

/// Prism `P_n`: outer cycle `0..n`, inner cycle `n..2n`.
///
/// Edges `0..n` run `i -> i+1` on the outer cycle, edges `n..2n` run
/// `n+i -> n+i+1` on the inner cycle, edges `2n..3n` are spokes `i -> n+i`.
pub fn prism(n: usize) -> Result<Multigraph> {
    if n < 3 {
        return Err(Error::Domain(format!("prism needs n >= 3, got {n}")));
    }
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|i| (n + i, n + (i + 1) % n)));
    edges.extend((0..n).map(|i| (i, n + i)));
    Ok(Multigraph::new(2 * n, edges)?.with_name(format!("prism:{n}")))
}

pub fn complete(n: usize) -> Result<Multigraph> {
    if n == 0 {
        return Err(Error::Domain(
            "complete graph needs at least one vertex".into(),
        ));
    }
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Ok(Multigraph::new(n, edges)?.with_name(format!("complete:{n}")))
}

/// `K_{3,3}` with parts `{0,1,2}` and `{3,4,5}`.
pub fn k33() -> Multigraph {
    let edges = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
    Multigraph::new(6, edges).unwrap().with_name("k33")
}

/// Petersen graph: outer 5-cycle `0..5`, spokes `i -> i+5`, inner pentagram
/// `5+i -> 5+(i+2 mod 5)`. Edge ids follow that order.
pub fn petersen() -> Multigraph {
    let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.extend((0..5).map(|i| (i, i + 5)));
    edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
    Multigraph::new(10, edges).unwrap().with_name("petersen")
}

/// The 3-dimensional cube `Q_3`; vertices are bit strings, edges flip one bit.
pub fn cube() -> Multigraph {
    let edges = (0..8usize)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, w)| u < w)
        .collect();
    Multigraph::new(8, edges).unwrap().with_name("cube")
}

/// Isaacs flower snark `J_k` for odd `k >= 3`.
///
/// For each `i` there is a claw centred at `a_i = 4i` with leaves
/// `b_i = 4i+1`, `c_i = 4i+2`, `d_i = 4i+3`. The `b_i` form a `k`-cycle and
/// the `c_i`, `d_i` together form the `2k`-cycle `c_0 .. c_{k-1} d_0 .. d_{k-1}`.
pub fn flower_snark(k: usize) -> Result<Multigraph> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "flower snark needs odd k >= 3, got {k}"
        )));
    }
    let (a, b, c, d) = (|i| 4 * i, |i| 4 * i + 1, |i| 4 * i + 2, |i| 4 * i + 3);
    let mut edges = Vec::with_capacity(6 * k);
    for i in 0..k {
        edges.extend([(a(i), b(i)), (a(i), c(i)), (a(i), d(i))]);
    }
    edges.extend((0..k).map(|i| (b(i), b((i + 1) % k))));
    for i in 0..k - 1 {
        edges.push((c(i), c(i + 1)));
    }
    edges.push((c(k - 1), d(0)));
    for i in 0..k - 1 {
        edges.push((d(i), d(i + 1)));
    }
    edges.push((d(k - 1), c(0)));
    Ok(Multigraph::new(4 * k, edges)?.with_name(format!("flower:{k}")))
}

/// Replaces every vertex `v` of a cubic graph by a triangle on `3v, 3v+1, 3v+2`.
///
/// Base edge `e` keeps its id and joins the triangle corners assigned to it at
/// each endpoint (corners are handed out in incidence order). Triangle edges
/// follow, three per base vertex.
pub fn triangle_replaced(base: &Multigraph) -> Result<Multigraph> {
    if !base.is_cubic() {
        return Err(Error::Domain(
            "triangle replacement needs a cubic graph".into(),
        ));
    }
    let n = base.vertex_count();
    let mut next_slot = vec![0usize; n];
    let mut corner = |v: usize| {
        let c = 3 * v + next_slot[v];
        next_slot[v] += 1;
        c
    };
    let mut edges: Vec<_> = base
        .edges()
        .iter()
        .map(|&(t, h)| (corner(t), corner(h)))
        .collect();
    for v in 0..n {
        edges.extend([
            (3 * v, 3 * v + 1),
            (3 * v + 1, 3 * v + 2),
            (3 * v + 2, 3 * v),
        ]);
    }
    let name = match base.name() {
        Some(b) => format!("{b}+triangles"),
        None => "triangle-replaced".to_owned(),
    };
    Ok(Multigraph::new(3 * n, edges)?.with_name(name))
}
