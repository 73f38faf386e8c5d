//! Shared inputs for the benchmarks.

use nzflow_core::graph::{complete, flower_snark, k33, petersen, prism, wheel, Multigraph};

/// Small named graphs covering every generator family the benches touch.
pub fn corpus() -> Vec<(&'static str, Multigraph)> {
    vec![
        ("K4", complete(4).expect("K4")),
        ("K33", k33()),
        ("Petersen", petersen()),
        ("J5", flower_snark(5).expect("J5")),
        ("W7", wheel(7).expect("W7")),
        ("P7", prism(7).expect("P7")),
    ]
}

pub fn named(name: &str) -> Multigraph {
    corpus()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, g)| g)
        .unwrap_or_else(|| panic!("no bench graph named {name}"))
}
