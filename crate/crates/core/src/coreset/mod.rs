//! Relative-comparison coresets.
//!
//! A coreset `Z` is a weighted, probed subset of `P` such that for some
//! unknown shift `Delta` every monotone `h` satisfies
//! `err_P(h)(1 - eps/4) + Delta <= w-err_Z(h) <= err_P(h)(1 + eps/4) + Delta`,
//! so minimizing `w-err_Z` yields a `(1 + eps)`-approximate classifier.
//!
//! Each chain of a minimum chain decomposition is handled as a 1D problem in
//! rank space by a recursive split into `P_alpha`, `P_mid` and `P_rest`.

mod build;
mod diagnostics;
mod estimate;

pub use build::{approx_classifier, build_coreset, build_coreset_1d, build_coreset_with_chains};
pub use diagnostics::{pairwise_violations, relative_comparison_1d, SandwichCheck};
pub use estimate::{compute_split, ErrorEstimate, SplitBounds, SplitResult, Threshold};

use crate::classifier::WeightedLabeledPoint;
use crate::error::{Error, Result};

/// How many elements each sample draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleSizing {
    /// `sample_size(eps/64, delta_chain / (3 l (|P| + 1)))` with
    /// `l = ceil(log2 n_chain) + 1`.
    Theoretical,
    /// A fixed count, for exercising the sampled path on small inputs.
    Fixed(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoresetParams {
    pub eps: f64,
    pub delta: f64,
    pub seed: u64,
    pub sizing: SampleSizing,
}

impl CoresetParams {
    /// `eps > 1` is clamped to 1.
    pub fn new(eps: f64, delta: f64, seed: u64) -> Result<Self> {
        if !(eps > 0.0) || eps.is_nan() {
            return Err(Error::invalid(format!("eps must be positive, got {eps}")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::invalid(format!("delta must lie in (0, 1), got {delta}")));
        }
        Ok(CoresetParams { eps: eps.min(1.0), delta, seed, sizing: SampleSizing::Theoretical })
    }

    pub fn with_sizing(mut self, sizing: SampleSizing) -> Result<Self> {
        if sizing == SampleSizing::Fixed(0) {
            return Err(Error::invalid("a fixed sample size must be positive"));
        }
        self.sizing = sizing;
        Ok(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// A lone element at the bottom of the recursion.
    Single,
    Rest,
    Alpha,
}

/// Mass bookkeeping for one weighted sample added to `Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoresetGroup {
    pub chain: usize,
    pub level: usize,
    pub kind: GroupKind,
    /// Size of the part of `P` the group stands for.
    pub target_size: usize,
    pub weight_sum: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Coreset {
    pub dim: usize,
    /// Distinct elements; repeated draws are merged into one weight.
    pub points: Vec<WeightedLabeledPoint>,
    pub groups: Vec<CoresetGroup>,
    /// Distinct elements probed while building, including samples that only
    /// guided the split.
    pub probes: usize,
    pub chains: usize,
}

impl Coreset {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.points.iter().map(|p| p.weight).sum()
    }
}
