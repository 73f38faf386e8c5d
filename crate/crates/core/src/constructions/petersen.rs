use crate::error::Result;
use crate::flow::VectorFlow;
use crate::graph::petersen;
use crate::triangulation::{detriangulate, FlowTriangulation, Point};

/// Corner names used by the layout: the unit triangle `p`, its reflections
/// `q` through each corner, and the apexes `r` of the outer ring.
fn corners() -> [Point; 9] {
    let s3 = 3f64.sqrt();
    [
        [0.0, 0.0],             // p1
        [1.0, 0.0],             // p2
        [0.5, s3 / 2.0],        // p3
        [-0.5, -s3 / 2.0],      // q1
        [2.0, 0.0],             // q2
        [0.0, s3],              // q3
        [1.5, 5.0 * s3 / 6.0],  // r1
        [-1.0, s3 / 3.0],       // r2
        [1.0, -2.0 * s3 / 3.0], // r3
    ]
}

const P1: usize = 0;
const P2: usize = 1;
const P3: usize = 2;
const Q1: usize = 3;
const Q2: usize = 4;
const Q3: usize = 5;
const R1: usize = 6;
const R2: usize = 7;
const R3: usize = 8;

/// Per Petersen vertex: counterclockwise corners, then the edge on each side.
const LAYOUT: [([usize; 3], [usize; 3]); 10] = [
    ([P1, P2, P3], [5, 0, 4]),
    ([R1, P3, P2], [6, 0, 1]),
    ([R1, P2, Q2], [1, 7, 2]),
    ([R2, Q1, P1], [2, 8, 3]),
    ([R2, P1, P3], [3, 4, 9]),
    ([R3, P2, P1], [10, 5, 13]),
    ([R1, Q3, P3], [11, 14, 6]),
    ([R3, Q2, P2], [12, 7, 10]),
    ([R3, P1, Q1], [13, 8, 11]),
    ([R2, P3, Q3], [9, 14, 12]),
];

/// Triangulation of the Petersen graph with side lengths `1`, `sqrt(4/3)`
/// and `sqrt(7/3)`: a central unit triangle, three unit triangles around it,
/// and six outer triangles. Three of the outer sides pair up only after
/// translation across the figure.
pub fn petersen_triangulation() -> FlowTriangulation {
    let pts = corners();
    FlowTriangulation {
        triangles: LAYOUT.iter().map(|(c, _)| c.map(|i| pts[i])).collect(),
        side_map: LAYOUT.iter().map(|&(_, s)| s).collect(),
    }
}

/// The `(1 + sqrt(7/3), 2)`-flow on [`petersen`] read off its triangulation.
pub fn petersen_flow() -> Result<VectorFlow> {
    detriangulate(&petersen(), &petersen_triangulation())
}
