//! Points, labels, and the dominance order.
//!
//! `p ⪰ q` ("p dominates or equals q") holds when every coordinate of `p` is at
//! least the matching coordinate of `q`; `p ≻ q` additionally requires `p != q`.
//! Coordinates are compared exactly. Two elements with identical coordinates
//! are mutually `⪰`-comparable and neither strictly dominates the other.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A point in `R^d` with finite coordinates, `d >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("a point needs at least one coordinate"));
        }
        if let Some(c) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::invalid(format!("non-finite coordinate {c}")));
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// `self ⪰ other`. Dimensions are assumed equal.
    #[inline]
    pub(crate) fn ge(&self, other: &Point) -> bool {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub(crate) fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.total_cmp(b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_dims(p: &Point, q: &Point) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    Ok(())
}

/// Strict dominance `p ≻ q`.
pub fn dominates(p: &Point, q: &Point) -> Result<bool> {
    check_dims(p, q)?;
    Ok(p.ge(q) && p != q)
}

/// Weak dominance `p ⪰ q`.
pub fn dominates_or_equals(p: &Point, q: &Point) -> Result<bool> {
    check_dims(p, q)?;
    Ok(p.ge(q))
}

/// A binary label, ordered `Neg < Pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Neg,
    Pos,
}

impl Label {
    pub fn as_i8(self) -> i8 {
        match self {
            Label::Neg => -1,
            Label::Pos => 1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Label> {
        match v {
            -1 => Some(Label::Neg),
            1 => Some(Label::Pos),
            _ => None,
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Neg => Label::Pos,
            Label::Pos => Label::Neg,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPoint {
    pub id: u64,
    pub point: Point,
    pub label: Label,
}

/// Element locations without labels. Algorithms only ever see this view; labels
/// are reachable through a [`ProbeOracle`](crate::ProbeOracle).
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    ids: Vec<u64>,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(dim: usize, ids: Vec<u64>, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if ids.len() != points.len() {
            return Err(Error::invalid(format!("{} ids for {} points", ids.len(), points.len())));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
        let mut seen = HashSet::with_capacity(ids.len());
        if let Some(dup) = ids.iter().find(|id| !seen.insert(**id)) {
            return Err(Error::invalid(format!("duplicate element id {dup}")));
        }
        Ok(PointSet { dim, ids, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn id(&self, index: usize) -> u64 {
        self.ids[index]
    }

    pub fn ids(&self) -> &[u64] {
        &self.ids
    }

    pub fn point(&self, index: usize) -> &Point {
        &self.points[index]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// `points[i] ⪰ points[j]`.
    #[inline]
    pub(crate) fn ge(&self, i: usize, j: usize) -> bool {
        self.points[i].ge(&self.points[j])
    }
}

/// The multiset `P` with its labels.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPointSet {
    points: PointSet,
    labels: Vec<Label>,
}

impl LabeledPointSet {
    pub fn new(dim: usize, elements: Vec<LabeledPoint>) -> Result<Self> {
        let mut ids = Vec::with_capacity(elements.len());
        let mut points = Vec::with_capacity(elements.len());
        let mut labels = Vec::with_capacity(elements.len());
        for e in elements {
            ids.push(e.id);
            points.push(e.point);
            labels.push(e.label);
        }
        Ok(LabeledPointSet { points: PointSet::new(dim, ids, points)?, labels })
    }

    /// Builds a set with ids `0..n` from raw coordinates and labels.
    pub fn from_coords(dim: usize, coords: Vec<Vec<f64>>, labels: Vec<Label>) -> Result<Self> {
        if coords.len() != labels.len() {
            return Err(Error::invalid("coordinate and label counts differ"));
        }
        let elements = coords
            .into_iter()
            .zip(labels)
            .enumerate()
            .map(|(i, (c, label))| Ok(LabeledPoint { id: i as u64, point: Point::new(c)?, label }))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dim, elements)
    }

    /// 1D set with ids `0..n` at the given values.
    pub fn from_values(values: &[f64], labels: &[Label]) -> Result<Self> {
        Self::from_coords(1, values.iter().map(|v| vec![*v]).collect(), labels.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The label-free view handed to algorithms.
    pub fn unlabeled(&self) -> &PointSet {
        &self.points
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Label {
        self.labels[index]
    }

    pub fn element(&self, index: usize) -> LabeledPoint {
        LabeledPoint {
            id: self.points.id(index),
            point: self.points.point(index).clone(),
            label: self.labels[index],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = LabeledPoint> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    /// Same locations, different labels.
    pub fn with_labels(&self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::invalid("label count does not match the number of elements"));
        }
        Ok(LabeledPointSet { points: self.points.clone(), labels })
    }
}
