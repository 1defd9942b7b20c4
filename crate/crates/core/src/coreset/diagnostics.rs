//! Checks of the coreset guarantee over all effective 1D thresholds.
//!
//! These need every label, so they are evaluation tools, not part of the
//! probing algorithms.

use super::Coreset;
use crate::error::{Error, Result};
use crate::geometry::{Label, LabeledPointSet};

/// Outcome of the shift-feasibility check on one coreset.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SandwichCheck {
    /// Largest `w-err_Z(h) - err_P(h)(1 + eps/4)`: the lowest admissible shift.
    pub lo: f64,
    /// Smallest `w-err_Z(h) - err_P(h)(1 - eps/4)`: the highest admissible shift.
    pub hi: f64,
    /// Some shift satisfies the sandwich for every threshold.
    pub feasible: bool,
    /// The admissible shifts meet `[-eps n / 64, eps n / 64]`.
    pub delta_bounded: bool,
    /// Largest `|w-err_Z(h) - err_P(h)|`.
    pub max_abs_dev: f64,
}

impl SandwichCheck {
    pub fn holds(&self) -> bool {
        self.feasible && self.delta_bounded
    }
}

/// `(err_P, w-err_Z)` for `-inf` followed by every distinct value of `set`.
fn threshold_errors(set: &LabeledPointSet, z: &Coreset) -> Result<(Vec<f64>, Vec<f64>)> {
    if set.dim() != 1 || z.dim != 1 {
        return Err(Error::invalid("threshold diagnostics need one-dimensional input"));
    }
    let value = |i: usize| set.unlabeled().point(i).coords()[0];
    let mut values: Vec<f64> = (0..set.len()).map(value).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let k = values.len();
    let slot = |v: f64| values.partition_point(|&x| x < v) + 1;

    // errors of h^tau: positives at or below tau plus negatives above it
    let mut pos = vec![0.0; k + 1];
    let mut neg = vec![0.0; k + 1];
    for i in 0..set.len() {
        match set.label(i) {
            Label::Pos => pos[slot(value(i))] += 1.0,
            Label::Neg => neg[slot(value(i))] += 1.0,
        }
    }
    let mut wpos = vec![0.0; k + 1];
    let mut wneg = vec![0.0; k + 1];
    for p in &z.points {
        let s = slot(p.point.coords()[0]);
        if s > k || values[s - 1] != p.point.coords()[0] {
            return Err(Error::invalid("coreset element is not in the point set"));
        }
        match p.label {
            Label::Pos => wpos[s] += p.weight,
            Label::Neg => wneg[s] += p.weight,
        }
    }
    let sweep = |pos: &[f64], neg: &[f64]| {
        let mut above: f64 = neg.iter().sum();
        let mut below = 0.0;
        (0..=k)
            .map(|t| {
                below += pos[t];
                above -= neg[t];
                below + above
            })
            .collect::<Vec<f64>>()
    };
    Ok((sweep(&pos, &neg), sweep(&wpos, &wneg)))
}

/// Tests whether one shift `Delta` sandwiches `w-err_Z` between
/// `err_P (1 - eps/4) + Delta` and `err_P (1 + eps/4) + Delta` on every
/// effective threshold, in linear time after sorting.
pub fn relative_comparison_1d(set: &LabeledPointSet, z: &Coreset, eps: f64) -> Result<SandwichCheck> {
    let (ep, wz) = threshold_errors(set, z)?;
    let n = set.len() as f64;
    let tol = 1e-9 * n.max(1.0);
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    let mut max_abs_dev: f64 = 0.0;
    for (e, w) in ep.iter().zip(&wz) {
        lo = lo.max(w - e * (1.0 + eps / 4.0));
        hi = hi.min(w - e * (1.0 - eps / 4.0));
        max_abs_dev = max_abs_dev.max((w - e).abs());
    }
    let bound = eps * n / 64.0;
    let feasible = lo <= hi + tol;
    let delta_bounded = feasible && lo <= bound + tol && hi >= -bound - tol;
    Ok(SandwichCheck { lo, hi, feasible, delta_bounded, max_abs_dev })
}

/// Counts thresholds `h'` for which some `h` with `w-err_Z(h) <= w-err_Z(h')`
/// has `err_P(h) > factor * err_P(h')`.
pub fn pairwise_violations(set: &LabeledPointSet, z: &Coreset, factor: f64) -> Result<usize> {
    let (ep, wz) = threshold_errors(set, z)?;
    let mut order: Vec<usize> = (0..ep.len()).collect();
    order.sort_by(|&a, &b| wz[a].total_cmp(&wz[b]));
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut start = 0;
    while start < order.len() {
        let mut end = start;
        while end < order.len() && wz[order[end]] == wz[order[start]] {
            worst = worst.max(ep[order[end]]);
            end += 1;
        }
        violations += order[start..end].iter().filter(|&&t| worst > factor * ep[t]).count();
        start = end;
    }
    Ok(violations)
}
