//! Structural queries: connectivity, bridges, odd girth, cycle bases.

use std::collections::VecDeque;

use super::Multigraph;

/// Component id per vertex and the number of components.
pub fn components(g: &Multigraph) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        comp[root] = count;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                let w = g.opposite(e, v);
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Cut-edges of `g`, sorted by id. Parallel edges are never bridges.
pub fn bridges(g: &Multigraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, edge used to enter it, next incidence position)
        let mut stack: Vec<(usize, Option<usize>, usize)> = vec![(root, None, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent_edge, pos) = *top;
            if let Some(&e) = g.incident(v).get(pos) {
                top.2 += 1;
                if Some(e) == parent_edge {
                    continue;
                }
                let w = g.opposite(e, v);
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(pe) = parent_edge {
                    let p = g.opposite(pe, v);
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        out.push(pe);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Two-colouring of the vertices, or `None` if `g` has an odd cycle.
pub fn bipartition(g: &Multigraph) -> Option<Vec<bool>> {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let sv = side[v].unwrap();
            for &e in g.incident(v) {
                let w = g.opposite(e, v);
                match side[w] {
                    None => {
                        side[w] = Some(!sv);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == sv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

/// Length of a shortest odd cycle, `None` when `g` is bipartite.
///
/// A loop counts as an odd cycle of length 1.
pub fn odd_girth(g: &Multigraph) -> Option<usize> {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[v] + 1 >= b) {
                break;
            }
            for &e in g.incident(v) {
                let w = g.opposite(e, v);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                } else if dist[w] == dist[v] {
                    let len = 2 * dist[v] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalCycle {
    /// The non-tree edge that closes this cycle; it appears with sign +1.
    pub defining_edge: usize,
    /// `(edge id, sign)` in traversal order, sign relative to the edge's
    /// reference orientation.
    pub members: Vec<(usize, i8)>,
}

/// Spanning forest plus one fundamental cycle per non-tree edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    pub spanning_tree_edges: Vec<usize>,
    pub cycles: Vec<FundamentalCycle>,
}

impl CycleBasis {
    pub fn dimension(&self) -> usize {
        self.cycles.len()
    }

    /// For each edge, the `(cycle index, sign)` pairs of the cycles through it.
    pub fn edge_memberships(&self, edge_count: usize) -> Vec<Vec<(usize, i8)>> {
        let mut out = vec![Vec::new(); edge_count];
        for (c, cycle) in self.cycles.iter().enumerate() {
            for &(e, s) in &cycle.members {
                out[e].push((c, s));
            }
        }
        out
    }
}

/// Fundamental cycles of the BFS forest grown from vertex 0 (then from the
/// smallest unvisited vertex), scanning incident edges in id order.
pub fn fundamental_cycles(g: &Multigraph) -> CycleBasis {
    let n = g.vertex_count();
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut is_tree = vec![false; g.edge_count()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in g.incident(v) {
                let w = g.opposite(e, v);
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent_edge[w] = Some(e);
                    is_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }

    let step_up = |x: usize| -> (usize, usize) {
        let pe = parent_edge[x].expect("non-root vertex has a parent edge");
        (pe, g.opposite(pe, x))
    };

    let mut cycles = Vec::new();
    for (e, &tree) in is_tree.iter().enumerate() {
        if tree {
            continue;
        }
        let (t, h) = g.endpoints(e);
        let mut members = vec![(e, 1i8)];
        if t != h {
            // Walk h and t up to their common ancestor.
            let (mut a, mut b) = (h, t);
            let mut from_head = Vec::new();
            let mut from_tail = Vec::new();
            while a != b {
                if depth[a] >= depth[b] {
                    let (pe, p) = step_up(a);
                    from_head.push((pe, if g.tail(pe) == a { 1 } else { -1 }));
                    a = p;
                } else {
                    let (pe, p) = step_up(b);
                    from_tail.push((pe, if g.tail(pe) == p { 1 } else { -1 }));
                    b = p;
                }
            }
            members.extend(from_head);
            members.extend(from_tail.into_iter().rev());
        }
        cycles.push(FundamentalCycle {
            defining_edge: e,
            members,
        });
    }

    CycleBasis {
        spanning_tree_edges: (0..g.edge_count()).filter(|&e| is_tree[e]).collect(),
        cycles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cube, k33, petersen, prism, wheel};

    fn cycle(n: usize) -> Multigraph {
        Multigraph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).unwrap()
    }

    fn balanced(g: &Multigraph, c: &FundamentalCycle) -> bool {
        let mut net = vec![0i32; g.vertex_count()];
        for &(e, s) in &c.members {
            let (t, h) = g.endpoints(e);
            net[t] += s as i32;
            net[h] -= s as i32;
        }
        net.iter().all(|&x| x == 0)
    }

    #[test]
    fn bridges_of_small_graphs() {
        assert!(bridges(&complete(4).unwrap()).is_empty());
        assert!(bridges(&petersen()).is_empty());
        let path = Multigraph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(bridges(&path), vec![0]);
        let parallel = Multigraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(bridges(&parallel).is_empty());
        // two triangles joined by an edge
        let barbell = Multigraph::new(
            6,
            vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap();
        assert_eq!(bridges(&barbell), vec![3]);
    }

    #[test]
    fn odd_girth_values() {
        assert_eq!(odd_girth(&complete(4).unwrap()), Some(3));
        assert_eq!(odd_girth(&k33()), None);
        assert_eq!(odd_girth(&petersen()), Some(5));
        assert_eq!(odd_girth(&cube()), None);
        assert_eq!(odd_girth(&prism(5).unwrap()), Some(5));
        assert_eq!(odd_girth(&prism(4).unwrap()), None);
        assert_eq!(odd_girth(&cycle(7)), Some(7));
        assert_eq!(
            odd_girth(&Multigraph::new(1, vec![(0, 0)]).unwrap()),
            Some(1)
        );
    }

    #[test]
    fn bipartition_agrees_with_odd_girth() {
        for g in [
            complete(4).unwrap(),
            k33(),
            petersen(),
            cube(),
            wheel(6).unwrap(),
        ] {
            assert_eq!(bipartition(&g).is_some(), odd_girth(&g).is_none());
        }
    }

    #[test]
    fn tree_has_no_cycles() {
        let star = Multigraph::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(fundamental_cycles(&star).dimension(), 0);
    }

    #[test]
    fn five_cycle_basis() {
        let b = fundamental_cycles(&cycle(5));
        assert_eq!(b.dimension(), 1);
        let mut edges: Vec<_> = b.cycles[0].members.iter().map(|m| m.0).collect();
        edges.sort_unstable();
        assert_eq!(edges, vec![0, 1, 2, 3, 4]);
        assert!(balanced(&cycle(5), &b.cycles[0]));
    }

    #[test]
    fn petersen_basis() {
        let g = petersen();
        let b = fundamental_cycles(&g);
        assert_eq!(b.dimension(), 6);
        assert_eq!(b.spanning_tree_edges.len(), 9);
        for c in &b.cycles {
            assert_eq!(c.members[0], (c.defining_edge, 1));
            assert!(balanced(&g, c));
        }
    }

    #[test]
    fn loops_are_their_own_cycles() {
        let g = Multigraph::new(2, vec![(0, 1), (1, 1), (1, 0)]).unwrap();
        let b = fundamental_cycles(&g);
        assert_eq!(b.dimension(), 2);
        assert_eq!(b.cycles[0].members, vec![(1, 1)]);
        assert!(balanced(&g, &b.cycles[1]));
    }
}
