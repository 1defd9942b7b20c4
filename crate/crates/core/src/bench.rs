//! Seeded Monte Carlo campaigns with CSV output.
//!
//! A config is a JSON object with a master `seed` and a list of `groups`;
//! each group fixes one instance and runs one algorithm for `trials` seeds.
//! Trials may run in parallel (`MONOCLS_THREADS` caps the workers) but rows
//! are always emitted in trial order, so output depends only on the config.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ae_game::{ae_game, Bob};
use crate::classifier::err;
use crate::coreset::{approx_classifier, build_coreset_with_chains, CoresetParams};
use crate::error::{Error, Result};
use crate::geometry::LabeledPointSet;
use crate::instances::FamilySpec;
use crate::oracle::ProbeOracle;
use crate::poset::{chain_decomposition, ChainDecomposition};
use crate::rng::derive_seed;
use crate::rpe::{run_rpe, test_monotonicity, Verdict};
use crate::solver::optimal_error;
use crate::stats::Summary;

pub const CSV_HEADER: [&str; 11] =
    ["instance", "n", "w", "kstar", "algorithm", "eps", "seed", "probes", "coreset_size", "error", "ratio"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "rpe")]
    Rpe,
    #[serde(rename = "coreset")]
    Coreset,
    #[serde(rename = "testmono")]
    TestMono,
    #[serde(rename = "ae_game:noop")]
    GameNoOp,
    #[serde(rename = "ae_game:halver")]
    GameHalver,
    /// Bob deletes position `r` of the chain in round `r`.
    #[serde(rename = "ae_game:scripted")]
    GameScripted,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Rpe => "rpe",
            Algorithm::Coreset => "coreset",
            Algorithm::TestMono => "testmono",
            Algorithm::GameNoOp => "ae_game:noop",
            Algorithm::GameHalver => "ae_game:halver",
            Algorithm::GameScripted => "ae_game:scripted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    /// Instance column; defaults to the family name.
    pub name: Option<String>,
    pub instance: FamilySpec,
    pub algorithm: Algorithm,
    pub eps: Option<f64>,
    pub delta: Option<f64>,
    pub xi: Option<f64>,
    pub trials: usize,
    /// Seed of the trial seeds; derived from the master seed if absent.
    pub seed: Option<u64>,
    /// Seed for generating the instance; derived from the master seed if absent.
    pub instance_seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub seed: u64,
    pub groups: Vec<GroupConfig>,
}

impl BenchConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("bad bench config: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialResult {
    pub seed: u64,
    /// Distinct probes; rounds for game simulations.
    pub probes: usize,
    pub coreset_size: Option<usize>,
    /// Misclassified elements; for the tester, 1 on a "no" verdict.
    pub error: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupResult {
    pub name: String,
    pub n: usize,
    pub w: usize,
    pub kstar: usize,
    pub algorithm: Algorithm,
    pub eps: Option<f64>,
    pub trials: Vec<TrialResult>,
}

impl GroupResult {
    pub fn summary(&self, column: impl Fn(&TrialResult) -> f64) -> Summary {
        Summary::of(&self.trials.iter().map(column).collect::<Vec<_>>())
    }
}

/// `error / k*`, with `1` for a perfect answer on a realizable instance.
pub fn error_ratio(error: f64, kstar: usize) -> f64 {
    match (kstar, error == 0.0) {
        (0, true) => 1.0,
        (0, false) => f64::INFINITY,
        _ => error / kstar as f64,
    }
}

/// Worker count from `MONOCLS_THREADS`; 0 or unset means rayon's default.
pub fn thread_count() -> Result<usize> {
    match std::env::var("MONOCLS_THREADS") {
        Err(_) => Ok(0),
        Ok(v) => v.trim().parse().map_err(|_| Error::invalid(format!("MONOCLS_THREADS must be a count, got {v:?}"))),
    }
}

struct Prepared<'a> {
    config: &'a GroupConfig,
    set: LabeledPointSet,
    chains: ChainDecomposition,
    kstar: usize,
}

impl Prepared<'_> {
    fn trial(&self, seed: u64) -> Result<TrialResult> {
        let points = self.set.unlabeled();
        let mut oracle = ProbeOracle::from_labeled(&self.set);
        let param = |v: Option<f64>, what: &str| v.ok_or_else(|| Error::invalid(format!("{what} is required")));
        let (probes, coreset_size, error) = match self.config.algorithm {
            Algorithm::Rpe => {
                let r = run_rpe(points, &mut oracle, seed)?;
                (r.cost, None, err(&r.classifier, &self.set)? as f64)
            }
            Algorithm::Coreset => {
                let params =
                    CoresetParams::new(param(self.config.eps, "eps")?, param(self.config.delta, "delta")?, seed)?;
                let z = build_coreset_with_chains(points, &self.chains, &params, &mut oracle)?;
                let h = approx_classifier(&z)?;
                (z.probes, Some(z.len()), err(&h, &self.set)? as f64)
            }
            Algorithm::TestMono => {
                let verdict = test_monotonicity(points, param(self.config.xi, "xi")?, &mut oracle, seed)?;
                (oracle.cost(), None, if verdict == Verdict::No { 1.0 } else { 0.0 })
            }
            Algorithm::GameNoOp | Algorithm::GameHalver | Algorithm::GameScripted => {
                let m = self.set.len();
                let bob = match self.config.algorithm {
                    Algorithm::GameNoOp => Bob::NoOp,
                    Algorithm::GameHalver => Bob::Halver,
                    _ => Bob::staircase(m),
                };
                (ae_game(m, &bob, seed)?, None, 0.0)
            }
        };
        Ok(TrialResult { seed, probes, coreset_size, error, ratio: error_ratio(error, self.kstar) })
    }
}

/// Runs group number `index` of a campaign with master seed `master`.
pub fn run_group(config: &GroupConfig, master: u64, index: usize) -> Result<GroupResult> {
    if config.trials == 0 {
        return Err(Error::invalid("a group needs at least one trial"));
    }
    let instance_seed = config.instance_seed.unwrap_or_else(|| derive_seed(master, 2 * index as u64));
    let group_seed = config.seed.unwrap_or_else(|| derive_seed(master, 2 * index as u64 + 1));
    let set = config.instance.generate(instance_seed)?;
    let chains = chain_decomposition(set.unlabeled())?;
    let kstar = optimal_error(&set)?;
    let prepared = Prepared { config, set, chains, kstar };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count()?)
        .build()
        .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
    let trials = pool.install(|| {
        (0..config.trials as u64)
            .into_par_iter()
            .map(|t| prepared.trial(derive_seed(group_seed, t)))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(GroupResult {
        name: config.name.clone().unwrap_or_else(|| config.instance.name().to_string()),
        n: prepared.set.len(),
        w: prepared.chains.len(),
        kstar,
        algorithm: config.algorithm,
        eps: if config.algorithm == Algorithm::Coreset { config.eps.map(|e| e.min(1.0)) } else { None },
        trials,
    })
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<GroupResult>> {
    config.groups.iter().enumerate().map(|(i, g)| run_group(g, config.seed, i)).collect()
}

/// One row per trial, then `mean` and `std` rows per group.
pub fn write_csv(out: impl Write, results: &[GroupResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Io(e.into());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for g in results {
        let fixed = |seed: String, cols: [String; 4]| {
            let eps = g.eps.map(|e| e.to_string()).unwrap_or_default();
            let [probes, size, error, ratio] = cols;
            [g.name.clone(), g.n.to_string(), g.w.to_string(), g.kstar.to_string(), g.algorithm.name().to_string(), eps, seed, probes, size, error, ratio]
        };
        for t in &g.trials {
            let size = t.coreset_size.map(|s| s.to_string()).unwrap_or_default();
            let row = fixed(t.seed.to_string(), [t.probes.to_string(), size, t.error.to_string(), t.ratio.to_string()]);
            w.write_record(row).map_err(csv_err)?;
        }
        let probes = g.summary(|t| t.probes as f64);
        let size = g.trials[0].coreset_size.map(|_| g.summary(|t| t.coreset_size.unwrap_or(0) as f64));
        let error = g.summary(|t| t.error);
        let ratio = g.summary(|t| t.ratio);
        for (label, pick) in [("mean", (|s: &Summary| s.mean) as fn(&Summary) -> f64), ("std", |s: &Summary| s.std)] {
            let size_col = size.as_ref().map(|s| pick(s).to_string()).unwrap_or_default();
            let row = fixed(label.to_string(), [pick(&probes).to_string(), size_col, pick(&error).to_string(), pick(&ratio).to_string()]);
            w.write_record(row).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}
