//! Nowhere-zero vector flows on graphs.
//!
//! Graph ingestion and generators, flow verification and bounds, oriented
//! cycle double cover search, explicit constructions, a multi-start optimizer
//! for the flow strength, and flow triangulations of cubic graphs.

pub mod cdc;
pub mod constructions;
pub mod error;
pub mod flow;
pub mod graph;
pub mod optimizer;
pub mod triangulation;

pub use cdc::{find_ocdc, verify_ocdc, OrientedCycleDoubleCover, SearchOutcome};
pub use error::{Error, Result};
pub use flow::{lower_bound, strength, verify_flow, FlowDocument, FlowReport, VectorFlow};
pub use graph::{parse_graph, GraphFormat, Multigraph};
pub use optimizer::{minimize, polish, OptimizeConfig, OptimizeReport};
pub use triangulation::{detriangulate, render_svg, triangulate, validate, FlowTriangulation};

/// Crate version, echoed in machine-readable outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
