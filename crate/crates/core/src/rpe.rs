//! Random probes with elimination (RPE) and the monotonicity tester.
//!
//! RPE repeatedly probes a uniformly random surviving element `z`. A `+1`
//! label removes every survivor `p ⪰ z`, a `-1` label every survivor `p ⪯ z`
//! (always including `z`). The output classifier is positive exactly on the
//! up-set of the probed `+1` elements. Expected cost is `O(w log(n/w))` probes
//! and expected error at most `2 k*`.

use rand::Rng;

use crate::classifier::{AnchorSet, MonotoneClassifier};
use crate::error::{Error, Result};
use crate::geometry::{Label, PointSet};
use crate::oracle::ProbeOracle;
use crate::rng;

#[derive(Clone, Debug, PartialEq)]
pub struct RpeResult {
    /// Probed elements with their labels, in probe order.
    pub probed: Vec<(u64, Label)>,
    pub classifier: MonotoneClassifier,
    pub cost: usize,
    /// Label that elimination assigned to each element (by element index).
    pub assigned: Vec<Label>,
}

/// Surviving elements: alive flags plus a compacted index list that is
/// rebuilt once more than half of it is dead.
struct Survivors {
    alive: Vec<bool>,
    list: Vec<usize>,
    count: usize,
}

impl Survivors {
    fn new(n: usize) -> Self {
        Survivors { alive: vec![true; n], list: (0..n).collect(), count: n }
    }

    fn pick(&self, rng: &mut impl Rng) -> usize {
        loop {
            let i = self.list[rng.gen_range(0..self.list.len())];
            if self.alive[i] {
                return i;
            }
        }
    }

    fn compact(&mut self) {
        if self.count * 2 < self.list.len() {
            let alive = &self.alive;
            self.list.retain(|&i| alive[i]);
        }
    }
}

/// Runs RPE on `points`, revealing labels only through `oracle`.
pub fn run_rpe(points: &PointSet, oracle: &mut ProbeOracle, seed: u64) -> Result<RpeResult> {
    let mut rng = rng::stream(seed, 0);
    let n = points.len();
    let mut survivors = Survivors::new(n);
    let mut assigned = vec![Label::Neg; n];
    let mut probed = Vec::new();
    let mut positives = Vec::new();

    while survivors.count > 0 {
        let z = survivors.pick(&mut rng);
        let label = oracle.probe(points.id(z))?;
        probed.push((points.id(z), label));
        if label == Label::Pos {
            positives.push(points.point(z).clone());
        }
        for k in 0..survivors.list.len() {
            let p = survivors.list[k];
            if !survivors.alive[p] {
                continue;
            }
            let removed = match label {
                Label::Pos => points.ge(p, z),
                Label::Neg => points.ge(z, p),
            };
            if removed {
                survivors.alive[p] = false;
                survivors.count -= 1;
                assigned[p] = label;
            }
        }
        debug_assert!(!survivors.alive[z]);
        survivors.compact();
    }

    let classifier = MonotoneClassifier::AnchorSet(AnchorSet::new(points.dim(), positives)?);
    let cost = probed.len();
    Ok(RpeResult { probed, classifier, cost, assigned })
}

/// Number of verification samples, `ceil(2 / xi)`.
pub fn tester_sample_count(xi: f64) -> Result<usize> {
    if !(xi > 0.0 && xi < 1.0) {
        return Err(Error::invalid(format!("xi must lie in (0, 1), got {xi}")));
    }
    Ok((2.0 / xi).ceil() as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Consistent with a monotone labeling.
    Yes,
    /// A sample contradicts the RPE classifier.
    No,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
        })
    }
}

/// Monotonicity tester: always "yes" on monotone input, "no" with
/// probability at least 2/3 when `k* >= xi * n`.
///
/// Runs RPE, then checks its classifier against `ceil(2 / xi)` uniform
/// samples drawn with replacement.
pub fn test_monotonicity(points: &PointSet, xi: f64, oracle: &mut ProbeOracle, seed: u64) -> Result<Verdict> {
    let samples = tester_sample_count(xi)?;
    if points.is_empty() {
        return Ok(Verdict::Yes);
    }
    let rpe = run_rpe(points, oracle, seed)?;
    let mut rng = rng::stream(seed, 1);
    let mut verdict = Verdict::Yes;
    for _ in 0..samples {
        let i = rng.gen_range(0..points.len());
        let label = oracle.probe(points.id(i))?;
        if rpe.classifier.label_of(points.point(i)) != label {
            verdict = Verdict::No;
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::err;
    use crate::geometry::{LabeledPointSet, Point};
    use crate::solver::optimal_error;
    use rand::SeedableRng;

    fn lone_positive(n: usize) -> LabeledPointSet {
        let values: Vec<f64> = (1..=n).map(|v| v as f64).collect();
        let mut labels = vec![Label::Neg; n];
        labels[0] = Label::Pos;
        LabeledPointSet::from_values(&values, &labels).unwrap()
    }

    fn random_set(seed: u64, n: usize, d: usize) -> LabeledPointSet {
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let coords = (0..n).map(|_| (0..d).map(|_| r.gen_range(0..8) as f64).collect()).collect();
        let labels = (0..n).map(|_| if r.gen_bool(0.5) { Label::Pos } else { Label::Neg }).collect();
        LabeledPointSet::from_coords(d, coords, labels).unwrap()
    }

    #[test]
    fn single_element() {
        for label in [Label::Pos, Label::Neg] {
            let set = LabeledPointSet::from_values(&[3.0], &[label]).unwrap();
            let mut o = ProbeOracle::from_labeled(&set);
            let r = run_rpe(set.unlabeled(), &mut o, 1).unwrap();
            assert_eq!(r.cost, 1);
            assert_eq!(o.cost(), 1);
            assert_eq!(r.classifier.evaluate(&Point::new(vec![3.0]).unwrap()).unwrap(), label);
        }
    }

    #[test]
    fn empty_input() {
        let set = LabeledPointSet::new(2, vec![]).unwrap();
        let mut o = ProbeOracle::from_labeled(&set);
        let r = run_rpe(set.unlabeled(), &mut o, 0).unwrap();
        assert_eq!(r.cost, 0);
        assert_eq!(r.classifier, MonotoneClassifier::anchors(2, vec![]).unwrap());
    }

    #[test]
    fn never_reprobes() {
        for seed in 0..50 {
            let set = random_set(seed, 40, 2);
            let mut o = ProbeOracle::from_labeled(&set).with_audit();
            let r = run_rpe(set.unlabeled(), &mut o, seed).unwrap();
            assert_eq!(r.cost, o.cost());
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let set = random_set(4, 60, 2);
        let mut o1 = ProbeOracle::from_labeled(&set);
        let mut o2 = ProbeOracle::from_labeled(&set);
        let a = run_rpe(set.unlabeled(), &mut o1, 77).unwrap();
        let b = run_rpe(set.unlabeled(), &mut o2, 77).unwrap();
        assert_eq!(a, b);
        assert_eq!(o1.ledger(), o2.ledger());
    }

    #[test]
    fn probed_set_is_monotone_and_classified_correctly() {
        for seed in 0..100 {
            let set = random_set(seed, 30, 2);
            let mut o = ProbeOracle::from_labeled(&set);
            let r = run_rpe(set.unlabeled(), &mut o, seed).unwrap();
            let pts = set.unlabeled();
            let index_of = |id: u64| pts.ids().iter().position(|&x| x == id).unwrap();
            for &(a, la) in &r.probed {
                assert_eq!(r.classifier.label_of(pts.point(index_of(a))), la);
                for &(b, lb) in &r.probed {
                    let (ia, ib) = (index_of(a), index_of(b));
                    if ia != ib && pts.ge(ia, ib) {
                        assert!(!(la == Label::Neg && lb == Label::Pos), "seed {seed}");
                    }
                }
            }
        }
    }

    #[test]
    fn elimination_agrees_with_classifier() {
        for seed in 0..100 {
            let set = random_set(seed + 1000, 50, 3);
            let mut o = ProbeOracle::from_labeled(&set);
            let r = run_rpe(set.unlabeled(), &mut o, seed).unwrap();
            for i in 0..set.len() {
                assert_eq!(r.classifier.label_of(set.unlabeled().point(i)), r.assigned[i]);
            }
        }
    }

    #[test]
    fn classifier_is_monotone() {
        let set = random_set(5, 80, 2);
        let mut o = ProbeOracle::from_labeled(&set);
        let h = run_rpe(set.unlabeled(), &mut o, 5).unwrap().classifier;
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10_000 {
            let q = [r.gen_range(-1..10) as f64, r.gen_range(-1..10) as f64];
            let p = Point::new(vec![q[0] + r.gen_range(0..4) as f64, q[1] + r.gen_range(0..4) as f64]).unwrap();
            assert!(h.evaluate(&p).unwrap() >= h.evaluate(&Point::new(q.to_vec()).unwrap()).unwrap());
        }
    }

    #[test]
    fn realizable_input_is_solved_exactly() {
        let values: Vec<f64> = (0..200).map(|v| (v % 37) as f64).collect();
        let labels: Vec<Label> = values.iter().map(|&v| if v > 20.0 { Label::Pos } else { Label::Neg }).collect();
        let set = LabeledPointSet::from_values(&values, &labels).unwrap();
        for seed in 0..200 {
            let mut o = ProbeOracle::from_labeled(&set);
            let r = run_rpe(set.unlabeled(), &mut o, seed).unwrap();
            assert_eq!(err(&r.classifier, &set).unwrap(), 0);
        }
    }

    #[test]
    fn lone_positive_error_distribution() {
        // error is n-1 when the positive is probed first, 1 otherwise
        let set = lone_positive(10);
        let mut total = 0usize;
        let trials = 20_000;
        for seed in 0..trials {
            let mut o = ProbeOracle::from_labeled(&set);
            let e = err(&run_rpe(set.unlabeled(), &mut o, seed).unwrap().classifier, &set).unwrap();
            assert!(e == 1 || e == 9);
            total += e;
        }
        let mean = total as f64 / trials as f64;
        assert!((mean - 1.8).abs() < 0.06, "{mean}");
    }

    #[test]
    fn budget_error_propagates() {
        let set = random_set(1, 50, 2);
        let mut o = ProbeOracle::from_labeled(&set).with_budget(1);
        assert!(matches!(run_rpe(set.unlabeled(), &mut o, 3), Err(Error::BudgetExhausted { .. })));
    }

    #[test]
    fn tester_sample_counts() {
        assert_eq!(tester_sample_count(0.5).unwrap(), 4);
        assert_eq!(tester_sample_count(0.2).unwrap(), 10);
        assert_eq!(tester_sample_count(0.3).unwrap(), 7);
        assert!(tester_sample_count(0.0).is_err());
        assert!(tester_sample_count(1.0).is_err());
    }

    #[test]
    fn tester_accepts_monotone_input() {
        let values: Vec<f64> = (0..100).map(f64::from).collect();
        let labels: Vec<Label> = values.iter().map(|&v| if v >= 40.0 { Label::Pos } else { Label::Neg }).collect();
        let set = LabeledPointSet::from_values(&values, &labels).unwrap();
        for seed in 0..200 {
            let mut o = ProbeOracle::from_labeled(&set);
            assert_eq!(test_monotonicity(set.unlabeled(), 0.1, &mut o, seed).unwrap(), Verdict::Yes);
        }
    }

    #[test]
    fn tester_rejects_far_from_monotone_input() {
        let values: Vec<f64> = (1..=100).map(f64::from).collect();
        let labels: Vec<Label> = (0..100).map(|i| if i % 2 == 0 { Label::Pos } else { Label::Neg }).collect();
        let set = LabeledPointSet::from_values(&values, &labels).unwrap();
        assert!(optimal_error(&set).unwrap() >= 20);
        let no = (0..300)
            .filter(|&seed| {
                let mut o = ProbeOracle::from_labeled(&set);
                test_monotonicity(set.unlabeled(), 0.2, &mut o, seed).unwrap() == Verdict::No
            })
            .count();
        assert!(no >= 200, "{no}");
    }
}
