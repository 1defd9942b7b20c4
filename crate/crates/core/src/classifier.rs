//! Monotone classifiers and their (weighted) error.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{Label, LabeledPointSet, Point};

/// Positive region given as the up-set of a set of anchors: `h(p) = +1` iff
/// `p ⪰ a` for some anchor `a`.
///
/// The anchors are always reduced to the minimal antichain: duplicates are
/// merged and every anchor that dominates another one is dropped. The
/// remaining anchors are kept in lexicographic order, so two anchor sets with
/// the same positive region compare equal.
#[derive(Clone, Debug, PartialEq)]
pub struct AnchorSet {
    dim: usize,
    anchors: Vec<Point>,
}

impl AnchorSet {
    pub fn new(dim: usize, mut anchors: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if let Some(a) = anchors.iter().find(|a| a.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: a.dim() });
        }
        anchors.sort_by(|a, b| a.lex_cmp(b));
        anchors.dedup();
        // After dedup, an anchor is redundant iff it dominates some other anchor.
        let keep: Vec<bool> = anchors
            .iter()
            .enumerate()
            .map(|(i, a)| !anchors.iter().enumerate().any(|(j, b)| i != j && a.ge(b)))
            .collect();
        let anchors = anchors.into_iter().zip(keep).filter_map(|(a, k)| k.then_some(a)).collect();
        Ok(AnchorSet { dim, anchors })
    }

    /// The all-negative classifier.
    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn anchors(&self) -> &[Point] {
        &self.anchors
    }

    pub fn len(&self) -> usize {
        self.anchors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.anchors.is_empty()
    }

    #[inline]
    fn label_of(&self, p: &Point) -> Label {
        if self.anchors.iter().any(|a| p.ge(a)) {
            Label::Pos
        } else {
            Label::Neg
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MonotoneClassifier {
    /// 1D threshold: `h(p) = +1` iff `p > tau`. `tau = -inf` is the all-positive classifier.
    Threshold1D { tau: f64 },
    AnchorSet(AnchorSet),
}

impl MonotoneClassifier {
    pub fn threshold(tau: f64) -> Result<Self> {
        if tau.is_nan() || tau == f64::INFINITY {
            return Err(Error::invalid(format!("invalid threshold {tau}")));
        }
        Ok(MonotoneClassifier::Threshold1D { tau })
    }

    pub fn anchors(dim: usize, anchors: Vec<Point>) -> Result<Self> {
        Ok(MonotoneClassifier::AnchorSet(AnchorSet::new(dim, anchors)?))
    }

    pub fn dim(&self) -> usize {
        match self {
            MonotoneClassifier::Threshold1D { .. } => 1,
            MonotoneClassifier::AnchorSet(a) => a.dim(),
        }
    }

    pub fn evaluate(&self, p: &Point) -> Result<Label> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: p.dim() });
        }
        Ok(self.label_of(p))
    }

    #[inline]
    pub(crate) fn label_of(&self, p: &Point) -> Label {
        match self {
            MonotoneClassifier::Threshold1D { tau } => {
                if p.coords()[0] > *tau {
                    Label::Pos
                } else {
                    Label::Neg
                }
            }
            MonotoneClassifier::AnchorSet(a) => a.label_of(p),
        }
    }
}

impl fmt::Display for MonotoneClassifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonotoneClassifier::Threshold1D { tau } => write!(f, "threshold({tau})"),
            MonotoneClassifier::AnchorSet(a) => {
                write!(f, "anchors[")?;
                for (i, p) in a.anchors().iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Number of elements of `set` that `h` misclassifies.
pub fn err(h: &MonotoneClassifier, set: &LabeledPointSet) -> Result<usize> {
    if set.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: set.dim() });
    }
    let points = set.unlabeled().points();
    Ok(points.iter().zip(set.labels()).filter(|(p, l)| h.label_of(p) != **l).count())
}

/// A coreset element: a probed element carrying a positive weight.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedLabeledPoint {
    pub id: u64,
    pub point: Point,
    pub label: Label,
    pub weight: f64,
}

/// Weighted error `sum weight(p) * [h(p) != label(p)]`.
pub fn w_err(h: &MonotoneClassifier, z: &[WeightedLabeledPoint]) -> Result<f64> {
    let mut total = 0.0;
    for e in z {
        if !(e.weight > 0.0 && e.weight.is_finite()) {
            return Err(Error::invalid(format!("element {} has non-positive weight {}", e.id, e.weight)));
        }
        if h.evaluate(&e.point)? != e.label {
            total += e.weight;
        }
    }
    Ok(total)
}
