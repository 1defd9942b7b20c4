//! Sampled error estimates over 1D thresholds and the three-way split.
//!
//! Everything here works in rank space: elements of a chain carry integer
//! ranks, equal coordinates sharing a rank. A threshold `tau` classifies rank
//! `r` as `+1` iff `r > tau`.

use crate::error::{Error, Result};
use crate::geometry::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Threshold {
    /// Everything positive.
    NegInf,
    Rank(u32),
}

impl Threshold {
    fn positive(self, rank: u32) -> bool {
        match self {
            Threshold::NegInf => true,
            Threshold::Rank(t) => rank > t,
        }
    }
}

/// `scale * err_S(h^tau)` for a sample `S`, as a step function of `tau`.
#[derive(Clone, Debug)]
pub struct ErrorEstimate {
    ranks: Vec<u32>,
    /// `pos_le[k]` = positives among the `k` smallest distinct ranks.
    pos_le: Vec<u64>,
    neg_le: Vec<u64>,
    scale: f64,
}

impl ErrorEstimate {
    /// Builds the estimate from a sample drawn uniformly with replacement
    /// from a target of `target_len` elements; the scale is
    /// `target_len / |sample|`.
    pub fn new(sample: &[(u32, Label)], target_len: usize) -> Result<Self> {
        if sample.is_empty() && target_len > 0 {
            return Err(Error::invalid("empty sample for a nonempty target"));
        }
        let mut sorted = sample.to_vec();
        sorted.sort_unstable();
        let mut ranks = Vec::new();
        let (mut pos_le, mut neg_le) = (vec![0u64], vec![0u64]);
        for (rank, label) in sorted {
            if ranks.last() != Some(&rank) {
                ranks.push(rank);
                pos_le.push(*pos_le.last().unwrap());
                neg_le.push(*neg_le.last().unwrap());
            }
            match label {
                Label::Pos => *pos_le.last_mut().unwrap() += 1,
                Label::Neg => *neg_le.last_mut().unwrap() += 1,
            }
        }
        let scale = if sample.is_empty() { 0.0 } else { target_len as f64 / sample.len() as f64 };
        Ok(ErrorEstimate { ranks, pos_le, neg_le, scale })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn value(&self, tau: Threshold) -> f64 {
        let k = match tau {
            Threshold::NegInf => 0,
            Threshold::Rank(t) => self.ranks.partition_point(|&r| r <= t),
        };
        let wrong = self.pos_le[k] + (self.neg_le[self.ranks.len()] - self.neg_le[k]);
        self.scale * wrong as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitBounds {
    pub alpha: Threshold,
    pub beta: Threshold,
    /// Smallest rank of the target above `beta`; `None` stands for `+inf`.
    pub beta_next: Option<u32>,
}

/// Partition of a rank-sorted target; the vectors hold indices into it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    /// `None` when no effective threshold estimates below the cutoff.
    pub bounds: Option<SplitBounds>,
    pub p_alpha: Vec<usize>,
    pub p_mid: Vec<usize>,
    pub p_rest: Vec<usize>,
}

/// Splits `ranks` (sorted ascending) around the thresholds whose estimate
/// falls below `|P| (1/4 - eps/64)`.
///
/// `alpha` and `beta` are the smallest and largest such threshold among
/// `-inf` and the ranks present; `P_alpha` holds the elements at `alpha`,
/// `P_mid` those in `(alpha, beta]`, and `P_rest` the remainder.
pub fn compute_split(ranks: &[u32], g1: &ErrorEstimate, eps: f64) -> SplitResult {
    debug_assert!(ranks.windows(2).all(|w| w[0] <= w[1]));
    let n = ranks.len();
    let cutoff = n as f64 * (0.25 - eps / 64.0);
    let mut candidates = vec![Threshold::NegInf];
    for (i, &r) in ranks.iter().enumerate() {
        if i == 0 || ranks[i - 1] != r {
            candidates.push(Threshold::Rank(r));
        }
    }
    let below: Vec<Threshold> = candidates.iter().copied().filter(|&t| g1.value(t) < cutoff).collect();
    let (Some(&alpha), Some(&beta)) = (below.first(), below.last()) else {
        return SplitResult { bounds: None, p_alpha: vec![], p_mid: vec![], p_rest: (0..n).collect() };
    };
    let mut split = SplitResult { bounds: None, p_alpha: vec![], p_mid: vec![], p_rest: vec![] };
    for (i, &r) in ranks.iter().enumerate() {
        let part = if alpha == Threshold::Rank(r) {
            &mut split.p_alpha
        } else if alpha.positive(r) && !beta.positive(r) {
            &mut split.p_mid
        } else {
            &mut split.p_rest
        };
        part.push(i);
    }
    let beta_next = ranks.iter().copied().find(|&r| beta.positive(r));
    split.bounds = Some(SplitBounds { alpha, beta, beta_next });
    split
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{Neg, Pos};

    fn exact(sample: &[(u32, Label)], tau: Threshold) -> usize {
        sample.iter().filter(|&&(r, l)| (l == Pos) != tau.positive(r)).count()
    }

    #[test]
    fn full_sample_is_exact() {
        let s = [(1, Neg), (2, Pos), (2, Neg), (4, Pos), (5, Neg), (5, Neg)];
        let g = ErrorEstimate::new(&s, s.len()).unwrap();
        for tau in [Threshold::NegInf, Threshold::Rank(0), Threshold::Rank(1), Threshold::Rank(2), Threshold::Rank(3), Threshold::Rank(5), Threshold::Rank(9)] {
            assert_eq!(g.value(tau), exact(&s, tau) as f64, "{tau:?}");
        }
    }

    #[test]
    fn all_positive_sample() {
        let s = [(3, Pos), (1, Pos), (7, Pos)];
        let g = ErrorEstimate::new(&s, 30).unwrap();
        assert_eq!(g.scale(), 10.0);
        assert_eq!(g.value(Threshold::NegInf), 0.0);
        assert_eq!(g.value(Threshold::Rank(7)), 30.0);
        assert_eq!(g.value(Threshold::Rank(2)), 10.0);
    }

    #[test]
    fn empty_sample() {
        assert!(ErrorEstimate::new(&[], 3).is_err());
        assert_eq!(ErrorEstimate::new(&[], 0).unwrap().value(Threshold::NegInf), 0.0);
    }

    #[test]
    fn estimate_is_constant_between_sample_ranks() {
        let s = [(2, Pos), (6, Neg)];
        let g = ErrorEstimate::new(&s, 2).unwrap();
        assert_eq!(g.value(Threshold::Rank(2)), g.value(Threshold::Rank(5)));
        assert_eq!(g.value(Threshold::NegInf), g.value(Threshold::Rank(1)));
    }

    fn split_exact(labels: &[Label], eps: f64) -> SplitResult {
        let ranks: Vec<u32> = (1..=labels.len() as u32).collect();
        let s: Vec<(u32, Label)> = ranks.iter().copied().zip(labels.iter().copied()).collect();
        compute_split(&ranks, &ErrorEstimate::new(&s, s.len()).unwrap(), eps)
    }

    #[test]
    fn all_negative_split() {
        for n in 1..20 {
            let r = split_exact(&vec![Neg; n], 0.5);
            // -inf errs on everything; the top rank errs on nothing
            assert_eq!(r.bounds.unwrap().beta, Threshold::Rank(n as u32));
            assert_eq!(r.p_alpha.len() + r.p_mid.len() + r.p_rest.len(), n);
        }
        // a single negative: every threshold but -inf is exact, cutoff 0.24
        let r = split_exact(&[Neg], 0.5);
        assert_eq!(r.bounds.unwrap().alpha, Threshold::Rank(1));
    }

    #[test]
    fn high_estimates_give_null_split() {
        let labels: Vec<Label> = (0..40).map(|i| if i % 2 == 0 { Pos } else { Neg }).collect();
        let r = split_exact(&labels, 1.0);
        assert_eq!(r.bounds, None);
        assert_eq!(r.p_rest, (0..40).collect::<Vec<_>>());
    }

    #[test]
    fn clean_instance_split() {
        let mut labels = vec![Neg; 50];
        labels.extend(vec![Pos; 50]);
        let r = split_exact(&labels, 0.5);
        let b = r.bounds.unwrap();
        // errors below 100 * (1/4 - 1/128) = 24.2 for tau in 26..=74
        assert_eq!(b.alpha, Threshold::Rank(26));
        assert_eq!(b.beta, Threshold::Rank(74));
        assert_eq!(b.beta_next, Some(75));
        assert_eq!(r.p_alpha, vec![25]);
        assert_eq!(r.p_mid, (26..74).collect::<Vec<_>>());
        assert!(r.p_mid.len() < 50);
        assert_eq!(r.p_rest.len(), 100 - 1 - 48);
    }

    #[test]
    fn split_with_neg_inf_alpha() {
        let labels = vec![Pos; 8];
        let r = split_exact(&labels, 0.5);
        let b = r.bounds.unwrap();
        assert_eq!(b.alpha, Threshold::NegInf);
        assert_eq!(b.beta, Threshold::Rank(1));
        assert!(r.p_alpha.is_empty());
        assert_eq!(r.p_mid, vec![0]);
    }

    #[test]
    fn split_groups_equal_ranks() {
        let ranks = [1, 1, 2, 2, 2, 3, 3, 3, 3, 4];
        let labels = [Neg, Neg, Neg, Neg, Neg, Pos, Pos, Pos, Pos, Pos];
        let s: Vec<(u32, Label)> = ranks.iter().copied().zip(labels).collect();
        let r = compute_split(&ranks, &ErrorEstimate::new(&s, s.len()).unwrap(), 0.5);
        let b = r.bounds.unwrap();
        assert_eq!(b.alpha, Threshold::Rank(2));
        assert_eq!(b.beta, Threshold::Rank(2));
        assert_eq!(b.beta_next, Some(3));
        assert_eq!(r.p_alpha, vec![2, 3, 4]);
        assert!(r.p_mid.is_empty());
    }
}
