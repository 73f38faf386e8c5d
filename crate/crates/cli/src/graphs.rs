use nzflow_core::graph::{
    complete, cube, flower_snark, k33, parse_graph, petersen, prism, triangle_replaced, wheel,
    GraphFormat, Multigraph,
};

use crate::args::FormatArg;
use crate::{read_file, Failure, Outcome};

/// Graph for a built-in name, `None` if the name is not recognised.
pub fn resolve_builtin(name: &str) -> Option<nzflow_core::Result<Multigraph>> {
    let (family, size) = match name.split_once(':') {
        Some((f, n)) => (f, Some(n)),
        None => (name, None),
    };
    let sized = |build: fn(usize) -> nzflow_core::Result<Multigraph>| {
        let n = size?.parse::<usize>().ok()?;
        Some(build(n))
    };
    let g = match (family, size) {
        ("petersen", None) => Ok(petersen()),
        ("k4", None) => complete(4),
        ("k33", None) => Ok(k33()),
        ("j5", None) => flower_snark(5),
        ("pdelta", None) => triangle_replaced(&petersen()),
        ("cube", None) => Ok(cube()),
        ("wheel", Some(_)) => sized(wheel)?,
        ("prism", Some(_)) => sized(prism)?,
        ("complete", Some(_)) => sized(complete)?,
        ("flower", Some(_)) => sized(flower_snark)?,
        _ => return None,
    };
    Some(g.map(|g| g.with_name(name)))
}

/// Resolves a built-in name or reads a graph file.
pub fn load_graph(spec: &str, format: Option<FormatArg>) -> Outcome<Multigraph> {
    if let Some(g) = resolve_builtin(spec) {
        return g.map_err(Failure::from);
    }
    let path = std::path::Path::new(spec);
    if !path.exists() {
        return Err(Failure::usage(format!(
            "'{spec}' is neither a built-in graph name nor an existing file"
        )));
    }
    let text = read_file(path)?;
    let format = match format {
        Some(FormatArg::Graph6) => GraphFormat::Graph6,
        Some(FormatArg::Json) => GraphFormat::EdgeListJson,
        None if text.trim_start().starts_with('{') => GraphFormat::EdgeListJson,
        None => GraphFormat::Graph6,
    };
    Ok(parse_graph(&text, format)?)
}
