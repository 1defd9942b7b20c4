//! Exact optimal monotone classification.
//!
//! [`optimal_1d`] sweeps the effective thresholds of a 1D set.
//! [`optimal_mincut`] handles any dimension and positive weights: monotone
//! labelings are exactly the up-closed positive sets, and the cheapest one is
//! a minimum s-t cut in a closure network:
//!
//! - `source -> p` with capacity `weight(p)` for every `-1` element,
//! - `p -> sink` with capacity `weight(p)` for every `+1` element,
//! - an uncuttable edge `p -> q` whenever `p ⪰ q`, so the source side (the
//!   negative region) is closed downwards.
//!
//! Dominance edges are only materialized along a minimum chain decomposition
//! (chain successors, plus from every element to the highest element it
//! dominates in each other chain), which has the same transitive closure as the
//! full relation.

mod maxflow;

use crate::classifier::{w_err, AnchorSet, MonotoneClassifier, WeightedLabeledPoint};
use crate::error::{Error, Result};
use crate::geometry::{Label, LabeledPointSet, Point, PointSet};
use crate::poset::chain_decomposition;

use maxflow::FlowNetwork;

/// Largest instance accepted by [`brute_force_optimal`].
pub const BRUTE_FORCE_LIMIT: usize = 15;

/// Optimal threshold classifier for a fully labeled 1D set.
///
/// Among minimizers the smallest threshold (the most positive classifier)
/// wins; `-inf` counts as the smallest threshold.
pub fn optimal_1d(set: &LabeledPointSet) -> Result<(MonotoneClassifier, usize)> {
    if set.dim() != 1 {
        return Err(Error::invalid(format!("optimal_1d needs 1D input, got dimension {}", set.dim())));
    }
    let mut order: Vec<(f64, Label)> =
        set.unlabeled().points().iter().map(|p| p.coords()[0]).zip(set.labels().iter().copied()).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));

    // h^{-inf} misclassifies every -1
    let mut current = order.iter().filter(|(_, l)| *l == Label::Neg).count() as i64;
    let mut best = (f64::NEG_INFINITY, current);
    let mut i = 0;
    while i < order.len() {
        let value = order[i].0;
        while i < order.len() && order[i].0 == value {
            current += if order[i].1 == Label::Pos { 1 } else { -1 };
            i += 1;
        }
        if current < best.1 {
            best = (value, current);
        }
    }
    Ok((MonotoneClassifier::Threshold1D { tau: best.0 }, best.1 as usize))
}

/// Minimum weighted error over all monotone classifiers of `dim`-dimensional
/// weighted points, and a classifier achieving it.
///
/// The returned classifier is the anchor set of the minimal elements of the
/// positive side; ties between optimal cuts resolve to the smallest negative
/// region (residual reachability from the source).
pub fn optimal_mincut(dim: usize, elements: &[WeightedLabeledPoint]) -> Result<(MonotoneClassifier, f64)> {
    if let Some(e) = elements.iter().find(|e| !(e.weight > 0.0 && e.weight.is_finite())) {
        return Err(Error::invalid(format!("element {} has non-positive weight {}", e.id, e.weight)));
    }
    if elements.is_empty() {
        return Ok((MonotoneClassifier::AnchorSet(AnchorSet::empty(dim)?), 0.0));
    }
    let points = PointSet::new(
        dim,
        elements.iter().map(|e| e.id).collect(),
        elements.iter().map(|e| e.point.clone()).collect(),
    )?;
    let n = points.len();
    let chains = chain_decomposition(&points)?;

    let total: f64 = elements.iter().map(|e| e.weight).sum();
    let infinite = total + 1.0;
    let (source, sink) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2, 1e-12 * infinite);
    for (i, e) in elements.iter().enumerate() {
        match e.label {
            Label::Neg => net.add_edge(source, i, e.weight),
            Label::Pos => net.add_edge(i, sink, e.weight),
        }
    }
    let mut chain_of = vec![0usize; n];
    for (c, chain) in chains.chains().iter().enumerate() {
        for &i in chain {
            chain_of[i] = c;
        }
        for pair in chain.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            net.add_edge(hi, lo, infinite);
            if points.point(lo) == points.point(hi) {
                net.add_edge(lo, hi, infinite);
            }
        }
    }
    for i in 0..n {
        for (c, chain) in chains.chains().iter().enumerate() {
            if c == chain_of[i] {
                continue;
            }
            // elements of a chain dominated by i form a prefix
            let m = chain.partition_point(|&j| points.ge(i, j));
            if m > 0 {
                net.add_edge(i, chain[m - 1], infinite);
            }
        }
    }

    let cut = net.max_flow(source, sink);
    let negative_side = net.source_side(source);
    let positives: Vec<Point> =
        (0..n).filter(|&i| !negative_side[i]).map(|i| points.point(i).clone()).collect();
    let h = MonotoneClassifier::AnchorSet(AnchorSet::new(dim, positives)?);

    let achieved = w_err(&h, elements)?;
    if (achieved - cut).abs() > 1e-9 * infinite {
        return Err(Error::SolverMismatch { achieved, optimum: cut });
    }
    Ok((h, achieved))
}

/// Unit-weight [`optimal_mincut`] on a labeled set: returns `(h, k*)`.
pub fn optimal_monotone(set: &LabeledPointSet) -> Result<(MonotoneClassifier, usize)> {
    let unit: Vec<WeightedLabeledPoint> = set
        .elements()
        .map(|e| WeightedLabeledPoint { id: e.id, point: e.point, label: e.label, weight: 1.0 })
        .collect();
    let (h, opt) = optimal_mincut(set.dim(), &unit)?;
    Ok((h, opt.round() as usize))
}

/// `k*` computed with the 1D sweep when `d = 1` and the min-cut otherwise.
pub fn optimal_error(set: &LabeledPointSet) -> Result<usize> {
    if set.dim() == 1 {
        Ok(optimal_1d(set)?.1)
    } else {
        Ok(optimal_monotone(set)?.1)
    }
}

/// Exhaustive `k*`: the minimum Hamming distance from the true labels to any
/// monotone-consistent labeling. Only for `n <= 15`.
pub fn brute_force_optimal(set: &LabeledPointSet) -> Result<usize> {
    let n = set.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::invalid(format!("brute force is limited to {BRUTE_FORCE_LIMIT} elements, got {n}")));
    }
    let points = set.unlabeled();
    // up[i]: elements other than i that weakly dominate i
    let up: Vec<u32> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && points.ge(j, i)).fold(0u32, |m, j| m | 1 << j))
        .collect();
    let truth = (0..n).filter(|&i| set.label(i) == Label::Pos).fold(0u32, |m, i| m | 1 << i);
    let best = (0u32..1 << n)
        .filter(|&g| (0..n).all(|i| g >> i & 1 == 0 || up[i] & !g == 0))
        .map(|g| (g ^ truth).count_ones())
        .min()
        .expect("the all-positive labeling is always feasible");
    Ok(best as usize)
}
