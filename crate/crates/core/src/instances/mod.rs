//! Instance generators and dataset files.

mod generators;
pub mod io;

pub use generators::{
    flip_labels, gen_alternating, gen_boxes_nonrealizable, gen_boxes_realizable, gen_lone_positive,
    gen_noisy_boxes, gen_noisy_monotone, gen_pairs_family, gen_two_location, random_thresholds, NoisyInstance,
    TwoLocation,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Label, LabeledPointSet};

/// A named instance family with its parameters, as used in bench configs.
/// Box thresholds left out are drawn from the seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// Member `which` of the pairs family on `n` points.
    Pairs { n: usize, which: usize },
    Boxes { n_prime: usize, w_prime: usize, thresholds: Option<Vec<usize>> },
    Dummy { n_prime: usize, w_prime: usize, k: usize, c: usize, thresholds: Option<Vec<usize>> },
    TwoLocation { n: usize, w: usize, eps: f64 },
    Noisy { n: usize, d: usize, noise: f64 },
    NoisyBoxes { n_prime: usize, w_prime: usize, noise: f64 },
    Lone { n: usize },
    Alternating { n: usize },
    /// `m` points on a line, all `+1`; the chain for game simulations.
    Chain { m: usize },
}

impl FamilySpec {
    pub fn generate(&self, seed: u64) -> Result<LabeledPointSet> {
        match self {
            FamilySpec::Pairs { n, which } => {
                let mut family = gen_pairs_family(*n)?;
                if *which >= family.len() {
                    return Err(Error::invalid(format!("pairs member {which} out of range for n = {n}")));
                }
                Ok(family.swap_remove(*which))
            }
            FamilySpec::Boxes { n_prime, w_prime, thresholds } => {
                let t = thresholds.clone().unwrap_or_else(|| random_thresholds(*n_prime, *w_prime, seed));
                gen_boxes_realizable(*n_prime, *w_prime, &t)
            }
            FamilySpec::Dummy { n_prime, w_prime, k, c, thresholds } => {
                let t = thresholds.clone().unwrap_or_else(|| random_thresholds(*n_prime, *w_prime, seed));
                gen_boxes_nonrealizable(*n_prime, *w_prime, *k, *c, &t)
            }
            FamilySpec::TwoLocation { n, w, eps } => Ok(gen_two_location(*n, *w, *eps, seed)?.set),
            FamilySpec::Noisy { n, d, noise } => Ok(gen_noisy_monotone(*n, *d, *noise, seed)?.set),
            FamilySpec::NoisyBoxes { n_prime, w_prime, noise } => gen_noisy_boxes(*n_prime, *w_prime, *noise, seed),
            FamilySpec::Lone { n } => gen_lone_positive(*n),
            FamilySpec::Alternating { n } => gen_alternating(*n),
            FamilySpec::Chain { m } => {
                let values: Vec<f64> = (1..=*m).map(|v| v as f64).collect();
                LabeledPointSet::from_values(&values, &vec![Label::Pos; *m])
            }
        }
    }

    /// Short identifier for tables.
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Pairs { .. } => "pairs",
            FamilySpec::Boxes { .. } => "boxes",
            FamilySpec::Dummy { .. } => "dummy",
            FamilySpec::TwoLocation { .. } => "twoloc",
            FamilySpec::Noisy { .. } => "noisy",
            FamilySpec::NoisyBoxes { .. } => "noisy_boxes",
            FamilySpec::Lone { .. } => "lone",
            FamilySpec::Alternating { .. } => "alternating",
            FamilySpec::Chain { .. } => "chain",
        }
    }
}
