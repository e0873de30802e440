//! Monte Carlo laboratory: random models, probability estimates with Wilson
//! intervals, exact enumeration, half-point search and threshold formulas.

pub mod event;
pub mod exact;
pub mod formula;
pub mod record;
pub mod sample;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::EngineError;
use crate::graph::GraphError;
use crate::group::GroupError;
use crate::oracle::OracleError;
use crate::solver::DEFAULT_BUDGET;

pub use event::{Event, Root, Sample};
pub use exact::{birthday_exact, exact_probability, ExactLimits};
pub use formula::{
    formula_cube_bounds, formula_f, formula_f_structure, formula_path_tau, formula_prime_power,
    Convention, ExponentStructure, ThresholdFormulaParams,
};
pub use record::{format_g17, write_csv, write_json, ExperimentRecord};
pub use sample::{
    sample_configuration, sample_sequence, trial_rng, vertex_placement_distribution, RandomModel,
};

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("{unknowns} of {trials} trials exhausted the budget (more than 1%)")]
    Tainted { unknowns: u64, trials: u64 },
    #[error("no probe up to t = {max_t} reached probability 1/2")]
    NoConvergence { max_t: usize },
    #[error("{outcomes} outcomes exceed the enumeration limit {limit}")]
    EnumerationLimit { outcomes: u128, limit: u128 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// 97.5% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z_95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).clamp(0.0, p), (center + half).clamp(p, 1.0))
}

#[derive(Debug, Clone, Copy)]
pub struct EstimateOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Per-trial budget of the decision procedure.
    pub budget: u64,
}

impl Default for EstimateOptions {
    fn default() -> Self {
        Self {
            threads: None,
            budget: DEFAULT_BUDGET,
        }
    }
}

fn run_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, LabError> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| LabError::ThreadPool(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Monte Carlo estimate of the event probability at size `t`.
pub fn estimate_probability(
    event: &Event,
    model: RandomModel,
    t: usize,
    trials: u64,
    seed: u64,
    options: EstimateOptions,
) -> Result<ExperimentRecord, LabError> {
    if trials == 0 {
        return Err(LabError::NoTrials);
    }
    event.check_model(model)?;
    let start = Instant::now();
    let (successes, unknowns) = run_pool(options.threads, || {
        (0..trials)
            .into_par_iter()
            .map(|trial| {
                let mut rng = trial_rng(seed, t as u64, trial);
                let sample = event.sample(model, t, &mut rng);
                event.decide(&sample, options.budget).map(|v| match v {
                    Some(true) => (1u64, 0u64),
                    Some(false) => (0, 0),
                    None => (0, 1),
                })
            })
            .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))
    })??;
    if unknowns * 100 > trials {
        return Err(LabError::Tainted { unknowns, trials });
    }
    let (ci_lo, ci_hi) = wilson_interval(successes, trials);
    Ok(ExperimentRecord {
        descriptor: event.descriptor(),
        model,
        t: t as u64,
        trials,
        successes,
        estimate: successes as f64 / trials as f64,
        ci_lo,
        ci_hi,
        seed,
        unknowns,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// One record per `t`, in the given order.
pub fn sweep(
    event: &Event,
    model: RandomModel,
    ts: &[usize],
    trials: u64,
    seed: u64,
    options: EstimateOptions,
) -> Result<Vec<ExperimentRecord>, LabError> {
    ts.iter()
        .map(|&t| estimate_probability(event, model, t, trials, seed, options))
        .collect()
}

#[derive(Debug, Clone)]
pub struct HalfPointOptions {
    pub start: usize,
    pub max_t: usize,
}

impl Default for HalfPointOptions {
    fn default() -> Self {
        Self {
            start: 1,
            max_t: 1 << 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct HalfPoint {
    /// Smallest probed `t` whose Wilson lower bound is at least 1/2.
    pub t_star: usize,
    /// Last rejected and first accepted probe of the exponential phase.
    pub bracket: (usize, usize),
    /// Every probe, ordered by `t`.
    pub probes: Vec<ExperimentRecord>,
}

/// Exponential bracketing then bisection on `t`; a probe accepts when its
/// Wilson lower bound clears 1/2.
pub fn half_point_search(
    event: &Event,
    model: RandomModel,
    trials: u64,
    seed: u64,
    options: EstimateOptions,
    search: &HalfPointOptions,
) -> Result<HalfPoint, LabError> {
    let mut probes: BTreeMap<usize, ExperimentRecord> = BTreeMap::new();
    let mut accept = |t: usize| -> Result<bool, LabError> {
        if let std::collections::btree_map::Entry::Vacant(e) = probes.entry(t) {
            let rec = estimate_probability(event, model, t, trials, seed, options)?;
            e.insert(rec);
        }
        Ok(probes[&t].ci_lo >= 0.5)
    };
    let mut lo = search.start.saturating_sub(1);
    let mut hi = search.start.max(1);
    while !accept(hi)? {
        lo = hi;
        hi *= 2;
        if hi > search.max_t {
            return Err(LabError::NoConvergence {
                max_t: search.max_t,
            });
        }
    }
    let bracket = (lo, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if accept(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(HalfPoint {
        t_star: hi,
        bracket,
        probes: probes.into_values().collect(),
    })
}
