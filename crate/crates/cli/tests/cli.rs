use std::path::Path;
use std::process::{Command, Output};

use nzflow_core::flow::FlowDocument;
use nzflow_core::graph::{parse_graph, GraphFormat};
use nzflow_core::triangulation::FlowTriangulation;
use serde_json::Value;

fn nzflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nzflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_writes_wheel_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w5.json");
    let run = nzflow(&["gen", "wheel", "5", "--out", p(&out)]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let text = std::fs::read_to_string(&out).unwrap();
    let g = parse_graph(&text, GraphFormat::EdgeListJson).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (6, 10));
}

#[test]
fn gen_graph6_round_trips() {
    let run = nzflow(&["gen", "petersen", "--format", "graph6"]);
    assert_eq!(code(&run), 0);
    let text = String::from_utf8(run.stdout).unwrap();
    assert_eq!(text.trim(), "IheA@GUAo");
}

#[test]
fn minimize_petersen_with_pinned_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rep.json");
    let run = nzflow(&[
        "minimize",
        "--graph",
        "petersen",
        "--starts",
        "64",
        "--seed",
        "7",
        "--out",
        p(&out),
    ]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let report = json(&out);
    assert!(report["best_strength"].as_f64().unwrap() <= 2.5276);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(report["config"]["starts"], 64);
    let flow = FlowDocument::parse(&report["flow"].to_string()).unwrap();
    let (g, f) = flow.into_parts().unwrap();
    let s = nzflow_core::strength(&f, &g).unwrap();
    assert!((s - report["best_strength"].as_f64().unwrap()).abs() < 1e-9);
}

#[test]
fn verify_reports_bridges() {
    let dir = tempfile::tempdir().unwrap();
    let bridge = dir.path().join("bridge.json");
    std::fs::write(
        &bridge,
        r#"{"n": 4, "edges": [[0, 1], [1, 0], [1, 2], [2, 3], [3, 2]]}"#,
    )
    .unwrap();
    let flow = dir.path().join("f.json");
    assert_eq!(
        code(&nzflow(&[
            "construct",
            "--kind",
            "seymour",
            "--graph",
            "k4",
            "--out",
            p(&flow)
        ])),
        0
    );
    let run = nzflow(&["verify", "--graph", p(&bridge), "--flow", p(&flow)]);
    assert_eq!(code(&run), 1);
    let err = stderr(&run);
    assert!(err.starts_with("error[bridge]"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn constructed_flows_verify_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let flow = dir.path().join("petersen.json");
    let run = nzflow(&["construct", "--kind", "petersen", "--out", p(&flow)]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let ok = nzflow(&["verify", "--flow", p(&flow), "--r", "2.527526"]);
    assert_eq!(code(&ok), 0, "{}", stderr(&ok));
    let tight = nzflow(&["verify", "--flow", p(&flow), "--r", "2.5"]);
    assert_eq!(code(&tight), 1);

    let text = std::fs::read_to_string(&flow).unwrap();
    let (g, f) = FlowDocument::parse(&text).unwrap().into_parts().unwrap();
    let again = FlowDocument::new(&g, &f).to_json();
    assert_eq!(
        FlowDocument::parse(&again).unwrap().into_parts().unwrap().1,
        f
    );
    assert_eq!(f, nzflow_core::constructions::petersen_flow().unwrap());
}

#[test]
fn prism_flow_from_wheel_flow() {
    let dir = tempfile::tempdir().unwrap();
    let rep = dir.path().join("w5.json");
    let run = nzflow(&[
        "minimize",
        "--graph",
        "wheel:5",
        "--starts",
        "8",
        "--seed",
        "1",
        "--out",
        p(&rep),
    ]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let report = json(&rep);
    let wheel = dir.path().join("wheel-flow.json");
    std::fs::write(&wheel, report["flow"].to_string()).unwrap();
    let prism = dir.path().join("p5.json");
    let run = nzflow(&[
        "construct",
        "--kind",
        "prism",
        "--flow",
        p(&wheel),
        "--out",
        p(&prism),
    ]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let s = json(&prism)["strength"].as_f64().unwrap();
    assert!((s - report["best_strength"].as_f64().unwrap()).abs() < 1e-9);

    // The report itself is accepted wherever a flow file is.
    let direct = nzflow(&["construct", "--kind", "prism", "--flow", p(&rep)]);
    assert_eq!(code(&direct), 0, "{}", stderr(&direct));
    let out: Value = serde_json::from_slice(&direct.stdout).unwrap();
    assert_eq!(out["strength"].as_f64().unwrap(), s);
}

#[test]
fn search_cdc_outcomes() {
    let none = nzflow(&["search-cdc", "--graph", "k4", "--k", "3"]);
    assert_eq!(code(&none), 0);
    let v: Value = serde_json::from_slice(&none.stdout).unwrap();
    assert_eq!(v["outcome"], "none");
    let found = nzflow(&["search-cdc", "--graph", "k4", "--k", "4"]);
    let v: Value = serde_json::from_slice(&found.stdout).unwrap();
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["cover"]["pairs"].as_array().unwrap().len(), 6);
    let slow = nzflow(&[
        "search-cdc",
        "--graph",
        "petersen",
        "--k",
        "5",
        "--budget",
        "5",
    ]);
    assert_eq!(code(&slow), 3);
    assert!(stderr(&slow).starts_with("error[timeout]"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["minimize", "--graph", "k4", "--bogus"],
        vec!["bound", "--graph", "no-such-graph"],
        vec!["gen", "dodecahedron"],
        vec!["frobnicate"],
    ] {
        let run = nzflow(&args);
        assert_eq!(code(&run), 2, "{args:?}");
        assert!(stderr(&run).starts_with("error["), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one() {
    let run = nzflow(&["construct", "--kind", "bipartite", "--graph", "petersen"]);
    assert_eq!(code(&run), 1);
    let run = nzflow(&["triangulate", "--graph", "wheel:5"]);
    assert_eq!(code(&run), 1);
    assert!(stderr(&run).starts_with("error[domain]"));
}

#[test]
fn triangulate_petersen_figure() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("petersen.svg");
    let run = nzflow(&["triangulate", "--graph", "petersen", "--out", p(&svg)]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<path ").count(), 10);
    assert!(text.contains("stroke-dasharray"));

    let tj = dir.path().join("petersen-tri.json");
    let run = nzflow(&[
        "triangulate",
        "--graph",
        "petersen",
        "--emit",
        "json",
        "--out",
        p(&tj),
    ]);
    assert_eq!(code(&run), 0);
    let v = json(&tj);
    assert_eq!(v["layout"], "attached");
    let t = FlowTriangulation::parse(&std::fs::read_to_string(&tj).unwrap()).unwrap();
    assert_eq!(t.vertex_count(), 10);
}

#[test]
fn repro_k4_passes_and_timeouts_are_partial() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k4.json");
    let run = nzflow(&["repro", "k4", "--out", p(&out)]);
    assert_eq!(code(&run), 0, "{}", stderr(&run));
    let bundle = json(&out);
    assert_eq!(bundle["passed"], true);
    assert_eq!(bundle["seed"], 1);

    let partial = dir.path().join("wheels.json");
    let run = nzflow(&["repro", "wheels", "--timeout", "0", "--out", p(&partial)]);
    assert_eq!(code(&run), 3);
    assert_eq!(json(&partial)["complete"], false);
}
