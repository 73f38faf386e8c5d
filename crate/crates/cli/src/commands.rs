use std::path::Path;

use serde::Serialize;

use nzflow_core::cdc::{find_ocdc, OrientedCycleDoubleCover, SearchOutcome};
use nzflow_core::constructions::{
    bipartite_cubic_flow, flow_from_ocdc, kgon_points, petersen_flow, prism_flow,
    seymour_flow_with_budget,
};
use nzflow_core::flow::{lower_bound, strength, verify_flow, FlowDocument, FlowReport, VectorFlow};
use nzflow_core::graph::{bipartition, odd_girth, to_edge_list_json, to_graph6, Multigraph};
use nzflow_core::optimizer::{minimize, OptimizeConfig};
use nzflow_core::triangulation::{render_svg, triangulate, validate, Layout, RenderMode};
use nzflow_core::Error;

use crate::args::{
    BoundArgs, Command, ConstructArgs, ConstructionKind, EmitArg, FormatArg, GenArgs, MinimizeArgs,
    ModeArg, SearchCdcArgs, TriangulateArgs, VerifyArgs,
};
use crate::graphs::{load_graph, resolve_builtin};
use crate::{emit, read_file, repro, stamped, Failure, Outcome, EXIT_DOMAIN, EXIT_TIMEOUT};

pub fn execute(command: Command) -> Outcome<i32> {
    match command {
        Command::Verify(a) => verify(&a),
        Command::Bound(a) => bound(&a).map(|_| 0),
        Command::Construct(a) => construct(&a).map(|_| 0),
        Command::SearchCdc(a) => search_cdc(&a),
        Command::Minimize(a) => run_minimize(&a).map(|_| 0),
        Command::Triangulate(a) => run_triangulate(&a).map(|_| 0),
        Command::Gen(a) => gen(&a).map(|_| 0),
        Command::Repro(a) => repro::run(&a),
    }
}

fn load_flow(path: &Path) -> Outcome<(Multigraph, VectorFlow)> {
    Ok(FlowDocument::parse(&read_file(path)?)?.into_parts()?)
}

fn same_graph(a: &Multigraph, b: &Multigraph) -> Outcome {
    if a.vertex_count() != b.vertex_count() || a.edges() != b.edges() {
        return Err(Error::Shape("the flow file was written for a different graph".into()).into());
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOut<'a> {
    graph: Option<&'a str>,
    valid: bool,
    within_r: Option<bool>,
    #[serde(flatten)]
    report: &'a FlowReport,
}

fn verify(a: &VerifyArgs) -> Outcome<i32> {
    let given = a
        .graph
        .as_deref()
        .map(|spec| load_graph(spec, a.format))
        .transpose()?;
    if let Some(g) = &given {
        g.require_bridgeless_connected()?;
    }
    let (stored, f) = load_flow(&a.flow)?;
    let g = match given {
        Some(g) => {
            same_graph(&g, &stored)?;
            g
        }
        None => {
            stored.require_bridgeless_connected()?;
            stored
        }
    };
    let report = verify_flow(&g, &f, a.tolerance)?;
    let within_r =
        a.r.map(|r| report.strength.is_some_and(|s| s <= r + a.tolerance));
    let valid = report.is_valid() && within_r != Some(false);
    emit(
        a.out.as_deref(),
        &stamped(
            a,
            VerifyOut {
                graph: g.name(),
                valid,
                within_r,
                report: &report,
            },
        ),
    )?;
    if !report.is_valid() {
        let why = report.violations.first().map_or_else(
            || "graph has no edges".to_owned(),
            |v| v.description.clone(),
        );
        return Err(Failure::new(EXIT_DOMAIN, "invalid-flow", why));
    }
    if within_r == Some(false) {
        return Err(Failure::new(
            EXIT_DOMAIN,
            "strength",
            format!(
                "strength {:.9} exceeds r = {}",
                report.strength.unwrap_or(f64::INFINITY),
                a.r.unwrap_or_default()
            ),
        ));
    }
    Ok(0)
}

#[derive(Serialize)]
struct BoundOut<'a> {
    graph: Option<&'a str>,
    n: usize,
    m: usize,
    d: usize,
    cubic: bool,
    bipartite: bool,
    odd_girth: Option<usize>,
    lower_bound: f64,
}

fn bound(a: &BoundArgs) -> Outcome {
    let g = load_graph(&a.graph.graph, a.graph.format)?;
    let lb = lower_bound(&g, a.d)?;
    emit(
        a.out.as_deref(),
        &stamped(
            a,
            BoundOut {
                graph: g.name(),
                n: g.vertex_count(),
                m: g.edge_count(),
                d: a.d,
                cubic: g.is_cubic(),
                bipartite: bipartition(&g).is_some(),
                odd_girth: odd_girth(&g),
                lower_bound: lb,
            },
        ),
    )
}

#[derive(Serialize)]
struct FlowOut {
    strength: f64,
    #[serde(flatten)]
    flow: FlowDocument,
}

fn construct(a: &ConstructArgs) -> Outcome {
    let graph = || -> Outcome<Multigraph> {
        let spec = a
            .graph
            .as_deref()
            .ok_or_else(|| Failure::usage(format!("--graph is required for {:?}", a.kind)))?;
        load_graph(spec, a.format)
    };
    let (g, f) = match a.kind {
        ConstructionKind::Seymour => {
            let g = graph()?;
            let f = seymour_flow_with_budget(&g, a.budget)?;
            (g, f)
        }
        ConstructionKind::Bipartite => {
            let g = graph()?;
            let f = bipartite_cubic_flow(&g)?;
            (g, f)
        }
        ConstructionKind::Cdc => {
            let g = graph()?;
            let cover = match find_ocdc(&g, a.k, a.budget)? {
                SearchOutcome::Found(c) => c,
                SearchOutcome::Exhausted => {
                    return Err(
                        Error::Domain(format!("no oriented {}-cycle double cover", a.k)).into(),
                    )
                }
                SearchOutcome::Timeout => return Err(Error::Timeout { budget: a.budget }.into()),
            };
            let f = flow_from_ocdc(&g, &cover, &kgon_points(a.k)?)?;
            (g, f)
        }
        ConstructionKind::Petersen => {
            let g = resolve_builtin("petersen").expect("built-in")?;
            if let Some(spec) = a.graph.as_deref() {
                same_graph(&load_graph(spec, a.format)?, &g)?;
            }
            (g, petersen_flow()?)
        }
        ConstructionKind::Prism => {
            let path = a
                .flow
                .as_deref()
                .ok_or_else(|| Failure::usage("--flow with a wheel flow is required for prism"))?;
            let (w, f) = load_flow(path)?;
            let n = w.vertex_count().saturating_sub(1);
            same_graph(&w, &nzflow_core::graph::wheel(n)?)?;
            let g = resolve_builtin(&format!("prism:{n}")).expect("built-in")?;
            (g, prism_flow(n, &f)?)
        }
    };
    let s = strength(&f, &g)?;
    emit(
        a.out.as_deref(),
        &stamped(
            a,
            FlowOut {
                strength: s,
                flow: FlowDocument::new(&g, &f),
            },
        ),
    )
}

#[derive(Serialize)]
struct SearchOut<'a> {
    graph: Option<&'a str>,
    k: usize,
    budget: u64,
    outcome: &'static str,
    cover: Option<OrientedCycleDoubleCover>,
}

fn search_cdc(a: &SearchCdcArgs) -> Outcome<i32> {
    let g = load_graph(&a.graph.graph, a.graph.format)?;
    let result = find_ocdc(&g, a.k, a.budget)?;
    let (outcome, cover) = match result {
        SearchOutcome::Found(c) => ("found", Some(c)),
        SearchOutcome::Exhausted => ("none", None),
        SearchOutcome::Timeout => ("timeout", None),
    };
    emit(
        a.out.as_deref(),
        &stamped(
            a,
            SearchOut {
                graph: g.name(),
                k: a.k,
                budget: a.budget,
                outcome,
                cover,
            },
        ),
    )?;
    if outcome == "timeout" {
        eprintln!(
            "{}",
            Failure::new(
                EXIT_TIMEOUT,
                "timeout",
                format!("budget of {} pair assignments exhausted", a.budget)
            )
        );
        return Ok(EXIT_TIMEOUT);
    }
    Ok(0)
}

fn run_minimize(a: &MinimizeArgs) -> Outcome {
    let g = load_graph(&a.graph.graph, a.graph.format)?;
    let mut warm_starts = Vec::new();
    for path in &a.warm_start {
        let (h, f) = load_flow(path)?;
        same_graph(&g, &h)?;
        warm_starts.push(f);
    }
    let config = OptimizeConfig {
        d: a.d,
        starts: a.starts,
        seed: a.seed,
        tolerance: a.tolerance,
        warm_starts,
        ..OptimizeConfig::default()
    };
    let report = minimize(&g, &config)?;
    emit(a.out.as_deref(), &stamped(a, report.json(&g)))
}

fn default_flow(g: &Multigraph, a: &TriangulateArgs) -> Outcome<VectorFlow> {
    if g.name() == Some("petersen") {
        return Ok(petersen_flow()?);
    }
    if g.is_cubic() && bipartition(g).is_some() {
        return Ok(bipartite_cubic_flow(g)?);
    }
    let config = OptimizeConfig {
        starts: a.starts,
        seed: a.seed,
        ..OptimizeConfig::default()
    };
    Ok(minimize(g, &config)?.best_flow)
}

#[derive(Serialize)]
struct TriangulationOut<'a> {
    layout: Layout,
    strength: f64,
    overlaps: &'a [(usize, usize)],
    degenerate: &'a [usize],
    #[serde(flatten)]
    triangulation: nzflow_core::triangulation::TriangulationJson,
}

fn run_triangulate(a: &TriangulateArgs) -> Outcome {
    let g = load_graph(&a.graph.graph, a.graph.format)?;
    if !g.is_cubic() {
        return Err(Error::Domain("triangulations need a cubic graph".into()).into());
    }
    g.require_bridgeless_connected()?;
    let f = match &a.flow {
        Some(path) => {
            let (h, f) = load_flow(path)?;
            same_graph(&g, &h)?;
            f
        }
        None => default_flow(&g, a)?,
    };
    let s = strength(&f, &g)?;
    let built = triangulate(&g, &f)?;
    let report = validate(&built.triangulation, a.r.unwrap_or(s), a.tolerance);
    if !report.valid {
        return Err(Failure::new(
            EXIT_DOMAIN,
            "invalid-triangulation",
            format!("{:?}", report.violations.first()),
        ));
    }
    let mode = match (a.mode, built.layout) {
        (ModeArg::Exploded, _) => RenderMode::Exploded,
        (ModeArg::Attached, Layout::Attached) => RenderMode::Attached,
        (ModeArg::Attached, Layout::Exploded) => {
            eprintln!(
                "note: attached layout overlaps in {} pairs; drawing exploded",
                built.overlaps.len()
            );
            RenderMode::Exploded
        }
    };
    let text = match a.emit {
        EmitArg::Svg => render_svg(&built.triangulation, mode),
        EmitArg::Json => stamped(
            a,
            TriangulationOut {
                layout: built.layout,
                strength: s,
                overlaps: &built.overlaps,
                degenerate: &built.degenerate,
                triangulation: (&built.triangulation).into(),
            },
        ),
    };
    emit(a.out.as_deref(), &text)
}

fn gen(a: &GenArgs) -> Outcome {
    let name = match a.size {
        Some(n) => format!("{}:{n}", a.family),
        None => a.family.clone(),
    };
    let g = resolve_builtin(&name)
        .ok_or_else(|| Failure::usage(format!("unknown graph family '{name}'")))??;
    let text = match a.format {
        FormatArg::Json => to_edge_list_json(&g),
        FormatArg::Graph6 => to_graph6(&g)?,
    };
    emit(a.out.as_deref(), &text)
}
