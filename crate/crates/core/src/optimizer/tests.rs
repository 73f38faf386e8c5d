use super::*;
use crate::cdc::find_ocdc;
use crate::constructions::{flow_from_ocdc, kgon_points, seymour_flow};
use crate::flow::{strength, wheel_flow_number};
use crate::graph::{complete, k33, petersen, wheel};

fn quick(starts: usize, seed: u64) -> OptimizeConfig {
    OptimizeConfig {
        starts,
        seed,
        refine_starts: 2,
        refine_trials: 4,
        ..OptimizeConfig::default()
    }
}

#[test]
fn k4_reaches_its_flow_number() {
    let g = complete(4).unwrap();
    let report = minimize(&g, &quick(8, 1)).unwrap();
    assert!((report.best_strength - (1.0 + 2f64.sqrt())).abs() < 1e-3);
    assert!(report.gap < 1e-3);
    let check = strength(&report.best_flow, &g).unwrap();
    assert!((check - report.best_strength).abs() < 1e-9);
    assert!((report.best_flow.norm_range().0 - 1.0).abs() < 1e-12);
}

#[test]
fn single_cycle_is_short_circuited() {
    let g = Multigraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let report = minimize(&g, &quick(3, 0)).unwrap();
    assert_eq!(report.best_strength, 2.0);
    assert_eq!(strength(&report.best_flow, &g).unwrap(), 2.0);
}

#[test]
fn runs_are_deterministic() {
    let g = wheel(5).unwrap();
    let a = minimize(&g, &quick(6, 42)).unwrap();
    let b = minimize(&g, &quick(6, 42)).unwrap();
    assert_eq!(a, b);
}

#[test]
fn bridges_and_bad_configs_are_rejected() {
    let g = Multigraph::new(4, vec![(0, 1), (1, 0), (1, 2), (2, 3), (3, 2)]).unwrap();
    assert!(matches!(minimize(&g, &quick(2, 0)), Err(Error::Bridge(_))));
    let k4 = complete(4).unwrap();
    for bad in [
        OptimizeConfig {
            starts: 0,
            ..quick(1, 0)
        },
        OptimizeConfig {
            beta_schedule: vec![4.0, 4.0],
            ..quick(1, 0)
        },
        OptimizeConfig {
            d: 0,
            ..quick(1, 0)
        },
    ] {
        assert!(matches!(minimize(&k4, &bad), Err(Error::Config(_))));
    }
}

#[test]
fn smoothed_gradient_matches_differences() {
    let g = petersen();
    let space = CycleSpace::new(&g, 2).unwrap();
    let x: Vec<f64> = (0..space.variables())
        .map(|i| 1.0 + (i as f64 * 1.3).sin())
        .collect();
    let mut objective = smooth::Smoothed::new(&space, 16.0);
    let mut grad = vec![0.0; x.len()];
    let mut scratch = vec![0.0; x.len()];
    objective.eval(&x, &mut grad);
    for i in 0..x.len() {
        let h = 1e-6;
        let mut up = x.clone();
        let mut down = x.clone();
        up[i] += h;
        down[i] -= h;
        let fd =
            (objective.eval(&up, &mut scratch) - objective.eval(&down, &mut scratch)) / (2.0 * h);
        assert!(
            (fd - grad[i]).abs() < 1e-6,
            "coordinate {i}: {fd} vs {}",
            grad[i]
        );
    }
}

#[test]
fn polish_keeps_optimal_wheel_flow() {
    let g = wheel(5).unwrap();
    let best = minimize(&g, &quick(16, 3)).unwrap();
    let before = strength(&best.best_flow, &g).unwrap();
    let after = polish(&g, &best.best_flow, &quick(1, 0)).unwrap();
    let after = strength(&after, &g).unwrap();
    assert!(after <= before + 1e-12);
    assert!((after - before).abs() < 1e-9);
    assert!((before - wheel_flow_number(5).unwrap()).abs() < 1e-3);
}

#[test]
fn polish_improves_integer_pair_flow_on_k4() {
    let g = complete(4).unwrap();
    let f = seymour_flow(&g).unwrap();
    let mut trace = Vec::new();
    let out = polish_traced(&g, &f, &quick(1, 0), |r| trace.push(r)).unwrap();
    assert!(strength(&out, &g).unwrap() <= 1.0 + 2f64.sqrt() + 1e-3);
    assert!(trace.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn polish_of_pentagon_cover_flow_stays_in_its_basin() {
    // The pentagon flow on the Petersen graph is a local minimum of the ratio,
    // so polishing returns it essentially unchanged at the golden ratio squared.
    let g = petersen();
    let cover = find_ocdc(&g, 5, 1_000_000).unwrap().found().unwrap();
    let f = flow_from_ocdc(&g, &cover, &kgon_points(5).unwrap()).unwrap();
    let before = strength(&f, &g).unwrap();
    let after = strength(&polish(&g, &f, &quick(1, 0)).unwrap(), &g).unwrap();
    let tau2 = (3.0 + 5f64.sqrt()) / 2.0;
    assert!((before - tau2).abs() < 1e-12);
    assert!(after <= before + 1e-12);
    assert!((after - tau2).abs() < 1e-6);
}

#[test]
fn polish_rejects_invalid_flows() {
    let g = k33();
    let f = VectorFlow::zeros(2, g.edge_count());
    assert!(matches!(
        polish(&g, &f, &quick(1, 0)),
        Err(Error::InvalidFlow(_))
    ));
}

#[test]
fn higher_dimension_with_warm_start_is_no_worse() {
    let g = petersen();
    let planar = minimize(&g, &quick(8, 5)).unwrap();
    let spatial = minimize(
        &g,
        &OptimizeConfig {
            d: 3,
            warm_starts: vec![planar.best_flow.clone()],
            ..quick(4, 5)
        },
    )
    .unwrap();
    assert!(spatial.best_strength <= planar.best_strength + 1e-6);
    assert_eq!(spatial.best_flow.dimension(), 3);
}

#[test]
fn report_json_has_expected_fields() {
    let g = complete(4).unwrap();
    let report = minimize(&g, &quick(2, 9)).unwrap();
    let text = report.to_json(&g);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    for key in [
        "graph",
        "d",
        "best_strength",
        "lower_bound",
        "gap",
        "flow",
        "starts",
        "seed",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(
        v["starts"].as_array().unwrap().len(),
        report.per_start.len()
    );
    let flow = FlowDocument::parse(&v["flow"].to_string()).unwrap();
    let (_, f) = flow.into_parts().unwrap();
    assert_eq!(f, report.best_flow);
}
