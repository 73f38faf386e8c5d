//! Numerical minimisation of flow strength over the cycle space.
//!
//! Each start draws random cycle coordinates, descends on a smoothed
//! max-minus-min of the log edge norms with increasing sharpness, and then
//! polishes against the exact ratio. Starts run in parallel and are merged by
//! strength, then start index. The result is always an upper bound on the
//! flow number, never a certificate of optimality.

mod exact;
mod smooth;
mod space;

pub use exact::{log_ratio, min_norm_point};
pub use space::CycleSpace;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cdc::find_ocdc;
use crate::constructions::{flow_from_ocdc, kgon_points, seymour_flow_with_budget};
use crate::error::{Error, Result};
use crate::flow::{
    lower_bound, normalize, verify_flow, FlowDocument, GraphRef, VectorFlow, DEFAULT_TOLERANCE,
};
use crate::graph::Multigraph;

/// Node budget for each cover search used to build warm starts.
const WARM_START_BUDGET: u64 = 200_000;

#[derive(Debug, Clone)]
pub struct OptimizeConfig {
    pub d: usize,
    /// Random starts; warm starts come on top of these.
    pub starts: usize,
    pub seed: u64,
    /// Iteration cap per start for each phase.
    pub max_iterations: usize,
    /// Strictly increasing smoothing sharpness values.
    pub beta_schedule: Vec<f64>,
    /// Relative step length at which descent stops.
    pub tolerance: f64,
    pub warm_starts: Vec<VectorFlow>,
    /// Also start from integer-pair and cycle-cover flows when available.
    pub builtin_warm_starts: bool,
    /// How many of the best starts are refined by perturbation.
    pub refine_starts: usize,
    /// Perturbed restarts tried for each refined start.
    pub refine_trials: usize,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            d: 2,
            starts: 64,
            seed: 0,
            max_iterations: 10_000,
            beta_schedule: vec![4.0, 16.0, 64.0, 256.0],
            tolerance: 1e-8,
            warm_starts: Vec::new(),
            builtin_warm_starts: true,
            refine_starts: 8,
            refine_trials: 32,
        }
    }
}

impl OptimizeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::Config("d must be at least 1".into()));
        }
        if self.starts == 0 {
            return Err(Error::Config("starts must be at least 1".into()));
        }
        if self
            .beta_schedule
            .iter()
            .any(|b| !(b.is_finite() && *b > 0.0))
            || self.beta_schedule.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Config(
                "beta schedule must be positive and strictly increasing".into(),
            ));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StartRecord {
    pub strength: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `false` for random starts, `true` for supplied or built-in flows.
    pub warm: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeReport {
    pub best_flow: VectorFlow,
    /// Upper bound on the flow number in dimension `d`.
    pub best_strength: f64,
    pub lower_bound: f64,
    pub per_start: Vec<StartRecord>,
    pub gap: f64,
    pub best_start: usize,
    pub d: usize,
    pub seed: u64,
}

/// Report JSON; the flow keeps full precision.
#[derive(Debug, Clone, Serialize)]
pub struct ReportJson<'a> {
    pub graph: GraphRef,
    pub d: usize,
    pub best_strength: f64,
    pub lower_bound: f64,
    pub gap: f64,
    pub best_start: usize,
    pub flow: FlowDocument,
    pub starts: &'a [StartRecord],
    pub seed: u64,
}

impl OptimizeReport {
    pub fn json<'a>(&'a self, g: &Multigraph) -> ReportJson<'a> {
        let flow = FlowDocument::new(g, &self.best_flow);
        ReportJson {
            graph: flow.graph.clone(),
            d: self.d,
            best_strength: self.best_strength,
            lower_bound: self.lower_bound,
            gap: self.gap,
            best_start: self.best_start,
            flow,
            starts: &self.per_start,
            seed: self.seed,
        }
    }

    pub fn to_json(&self, g: &Multigraph) -> String {
        serde_json::to_string_pretty(&self.json(g)).expect("report serializes")
    }
}

struct StartResult {
    x: Vec<f64>,
    ratio: f64,
    record: StartRecord,
}

fn random_start(space: &CycleSpace, seed: u64, index: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let d = space.d();
    let scale = space.edge_count() as f64;
    let mut x = Vec::with_capacity(space.variables());
    for _ in 0..space.cycles() {
        // Uniform on the sphere by rejection from the cube.
        let v = loop {
            let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let n2: f64 = v.iter().map(|a| a * a).sum();
            if n2 > 1e-6 && n2 <= 1.0 {
                break v.iter().map(|a| a * scale / n2.sqrt()).collect::<Vec<_>>();
            }
        };
        x.extend(v);
    }
    x
}

fn descend(space: &CycleSpace, x: &mut [f64], config: &OptimizeConfig, warm: bool) -> StartResult {
    let mut iterations = 0;
    let mut converged = true;
    for &beta in &config.beta_schedule {
        let mut objective = smooth::Smoothed::new(space, beta);
        let before = x.to_vec();
        let out = smooth::lbfgs(
            |x, g| objective.eval(x, g),
            x,
            config.max_iterations,
            config.tolerance,
        );
        if !log_ratio(space, x).is_finite() {
            x.copy_from_slice(&before);
        }
        exact::rescale(space, x);
        iterations += out.iterations;
        converged = out.converged;
    }
    let polished = exact::polish(space, x, config.max_iterations, config.tolerance, |_| {});
    iterations += polished.iterations;
    let ratio = log_ratio(space, x);
    StartResult {
        x: x.to_vec(),
        ratio,
        record: StartRecord {
            strength: 1.0 + ratio.exp(),
            iterations,
            converged: converged && ratio.is_finite(),
            warm,
        },
    }
}

/// Flows on which every run also starts, lifted to dimension `d`.
pub fn builtin_warm_starts(g: &Multigraph, d: usize) -> Vec<VectorFlow> {
    let mut out = Vec::new();
    if let Ok(f) = seymour_flow_with_budget(g, WARM_START_BUDGET) {
        out.push(f.with_dimension(d));
    }
    for k in [4, 5] {
        let Ok(points) = kgon_points(k) else { continue };
        if let Ok(outcome) = find_ocdc(g, k, WARM_START_BUDGET) {
            if let Some(cover) = outcome.found() {
                if let Ok(f) = flow_from_ocdc(g, &cover, &points) {
                    out.push(f.with_dimension(d));
                }
            }
        }
    }
    out
}

/// Multi-start minimisation of `1 + max |F(e)| / min |F(e)|` over flows on `g`.
pub fn minimize(g: &Multigraph, config: &OptimizeConfig) -> Result<OptimizeReport> {
    config.validate()?;
    let space = CycleSpace::new(g, config.d)?;
    let bound = lower_bound(g, config.d)?;

    if space.cycles() == 1 {
        // Every edge lies on the single cycle and carries the same vector.
        let mut x = vec![0.0; config.d];
        x[0] = 1.0;
        let flow = space.flow(&x);
        return Ok(OptimizeReport {
            best_flow: flow,
            best_strength: 2.0,
            lower_bound: bound,
            per_start: vec![StartRecord {
                strength: 2.0,
                iterations: 0,
                converged: true,
                warm: false,
            }],
            gap: 2.0 - bound,
            best_start: 0,
            d: config.d,
            seed: config.seed,
        });
    }

    let mut warm = Vec::new();
    for f in &config.warm_starts {
        if f.dimension() > config.d {
            return Err(Error::Shape(format!(
                "warm start has dimension {}, run has {}",
                f.dimension(),
                config.d
            )));
        }
        let lifted = f.with_dimension(config.d);
        let report = verify_flow(g, &lifted, DEFAULT_TOLERANCE)?;
        if !report.is_valid() {
            return Err(Error::InvalidFlow("warm start does not verify".into()));
        }
        warm.push(space.coordinates(&lifted)?);
    }
    if config.builtin_warm_starts {
        for f in builtin_warm_starts(g, config.d) {
            warm.push(space.coordinates(&f)?);
        }
    }

    let total = config.starts + warm.len();
    let mut results: Vec<StartResult> = (0..total)
        .into_par_iter()
        .map(|i| {
            if i < config.starts {
                let mut x = random_start(&space, config.seed, i);
                descend(&space, &mut x, config, false)
            } else {
                let mut x = warm[i - config.starts].clone();
                polish_only(&space, &mut x, config)
            }
        })
        .collect();

    refine(&space, &mut results, config);

    let (best_start, best) = results
        .iter()
        .enumerate()
        .filter(|(_, r)| r.ratio.is_finite())
        .min_by(|a, b| a.1.ratio.total_cmp(&b.1.ratio).then(a.0.cmp(&b.0)))
        .ok_or_else(|| Error::Internal("every start hit a zero edge value".into()))?;
    let best_flow = normalize(&space.flow(&best.x))?;
    let best_strength = 1.0 + best.ratio.exp();
    Ok(OptimizeReport {
        best_flow,
        best_strength,
        lower_bound: bound,
        gap: best_strength - bound,
        per_start: results.iter().map(|r| r.record.clone()).collect(),
        best_start,
        d: config.d,
        seed: config.seed,
    })
}

/// Perturbs the best starts and descends again, keeping strict improvements.
fn refine(space: &CycleSpace, results: &mut [StartResult], config: &OptimizeConfig) {
    let mut order: Vec<usize> = (0..results.len())
        .filter(|&i| results[i].ratio.is_finite())
        .collect();
    order.sort_by(|&a, &b| {
        results[a]
            .ratio
            .total_cmp(&results[b].ratio)
            .then(a.cmp(&b))
    });
    order.truncate(config.refine_starts);
    let improved: Vec<(usize, StartResult)> = order
        .into_par_iter()
        .map(|i| {
            let mut best = StartResult {
                x: results[i].x.clone(),
                ratio: results[i].ratio,
                record: results[i].record.clone(),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x9e37_79b9_7f4a_7c15);
            rng.set_stream(i as u64);
            let d = space.d();
            for trial in 0..config.refine_trials {
                // Redraw a few cycle coordinates outright.
                let mut x = best.x.clone();
                let y = space.edge_values(&x);
                let typical = y
                    .chunks_exact(d)
                    .map(|v| v.iter().map(|a| a * a).sum::<f64>().sqrt())
                    .sum::<f64>()
                    / space.edge_count() as f64;
                for _ in 0..1 + trial % 3 {
                    let c = rng.gen_range(0..space.cycles());
                    for v in &mut x[c * d..(c + 1) * d] {
                        *v = typical * rng.gen_range(-1.0..1.0);
                    }
                }
                let mut next = descend(space, &mut x, config, best.record.warm);
                next.record.iterations += best.record.iterations;
                if next.ratio < best.ratio {
                    best = next;
                } else {
                    best.record.iterations = next.record.iterations;
                }
            }
            (i, best)
        })
        .collect();
    for (i, r) in improved {
        results[i] = r;
    }
}

fn polish_only(space: &CycleSpace, x: &mut [f64], config: &OptimizeConfig) -> StartResult {
    let before = log_ratio(space, x);
    let start = x.to_vec();
    let out = exact::polish(space, x, config.max_iterations, config.tolerance, |_| {});
    let mut ratio = log_ratio(space, x);
    if ratio.is_nan() || ratio > before {
        x.copy_from_slice(&start);
        ratio = before;
    }
    StartResult {
        x: x.to_vec(),
        ratio,
        record: StartRecord {
            strength: 1.0 + ratio.exp(),
            iterations: out.iterations,
            converged: out.converged,
            warm: true,
        },
    }
}

/// Runs only the exact polish on an existing flow. The result never has
/// larger strength than the input.
pub fn polish(g: &Multigraph, f: &VectorFlow, config: &OptimizeConfig) -> Result<VectorFlow> {
    polish_traced(g, f, config, |_| {})
}

/// [`polish`], reporting the strength after every accepted step.
pub fn polish_traced(
    g: &Multigraph,
    f: &VectorFlow,
    config: &OptimizeConfig,
    mut trace: impl FnMut(f64),
) -> Result<VectorFlow> {
    config.validate()?;
    let report = verify_flow(g, f, DEFAULT_TOLERANCE)?;
    let Some(input) = report.strength else {
        return Err(Error::InvalidFlow(report.violations.first().map_or_else(
            || "graph has no edges".into(),
            |v| v.description.clone(),
        )));
    };
    let space = CycleSpace::new(g, f.dimension())?;
    let mut x = space.coordinates(f)?;
    exact::polish(
        &space,
        &mut x,
        config.max_iterations,
        config.tolerance,
        |r| trace(1.0 + r.exp()),
    );
    let out = normalize(&space.flow(&x))?;
    let (lo, hi) = out.norm_range();
    if 1.0 + hi / lo <= input {
        Ok(out)
    } else {
        Ok(f.clone())
    }
}

#[cfg(test)]
mod tests;
