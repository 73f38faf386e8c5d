use super::{cross, sub, FlowTriangulation, Point, DEGENERATE_AREA};

pub fn signed_area(tri: &[Point; 3]) -> f64 {
    cross(sub(tri[1], tri[0]), sub(tri[2], tri[0])) / 2.0
}

fn projection(tri: &[Point; 3], axis: Point) -> (f64, f64) {
    tri.iter()
        .map(|p| p[0] * axis[0] + p[1] * axis[1])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
            (lo.min(x), hi.max(x))
        })
}

/// Whether the interiors of two triangles intersect by more than `tolerance`
/// along every separating axis candidate.
pub fn triangles_overlap(a: &[Point; 3], b: &[Point; 3], tolerance: f64) -> bool {
    for tri in [a, b] {
        for s in 0..3 {
            let d = sub(tri[(s + 1) % 3], tri[s]);
            let len = d[0].hypot(d[1]);
            if len == 0.0 {
                continue;
            }
            let axis = [-d[1] / len, d[0] / len];
            let (alo, ahi) = projection(a, axis);
            let (blo, bhi) = projection(b, axis);
            if ahi.min(bhi) - alo.max(blo) <= tolerance {
                return false;
            }
        }
    }
    true
}

/// All pairs `(u, v)`, `u < v`, of non-degenerate triangles whose interiors overlap.
pub fn overlapping_pairs(t: &FlowTriangulation, tolerance: f64) -> Vec<(usize, usize)> {
    let solid: Vec<usize> = (0..t.vertex_count())
        .filter(|&v| signed_area(&t.triangles[v]).abs() > DEGENERATE_AREA)
        .collect();
    let mut out = Vec::new();
    for (i, &u) in solid.iter().enumerate() {
        for &v in &solid[i + 1..] {
            if triangles_overlap(&t.triangles[u], &t.triangles[v], tolerance) {
                out.push((u, v));
            }
        }
    }
    out
}
