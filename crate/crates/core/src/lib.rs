//! Probe-efficient monotone classification.
//!
//! A multiset of labeled points in `R^d` is given with its labels hidden behind
//! a [`ProbeOracle`]; every label revelation is a probe, and the number of
//! probes is the cost. The crate provides:
//!
//! - [`rpe`]: random probes with elimination, whose classifier has expected
//!   error at most twice the optimum, plus the monotonicity tester built on it
//!   and a simulator for the attrition-and-elimination game.
//! - [`coreset`]: relative-comparison coresets, whose weighted error preserves
//!   pairwise comparisons between monotone classifiers up to a `1 + eps`
//!   factor, and the approximate classifier obtained from them.
//! - [`solver`]: exact optimal monotone classification (1D sweep and a
//!   min-cut formulation for any dimension) used as verification oracles.
//! - [`poset`]: width and minimum chain decompositions (Dilworth).
//! - [`instances`]: generators for the hard-instance families and JSONL I/O.
//! - [`bench`]: the Monte Carlo harness behind the `monocls bench` command.

pub mod ae_game;
pub mod bench;
pub mod classifier;
pub mod coreset;
mod error;
pub mod geometry;
pub mod instances;
pub mod oracle;
pub mod poset;
pub mod rng;
pub mod rpe;
pub mod solver;
pub mod stats;

pub use classifier::{err, w_err, AnchorSet, MonotoneClassifier, WeightedLabeledPoint};
pub use error::{Error, Result};
pub use geometry::{dominates, dominates_or_equals, Label, LabeledPoint, LabeledPointSet, Point, PointSet};
pub use oracle::ProbeOracle;
pub use poset::{chain_decomposition, width, ChainDecomposition};
