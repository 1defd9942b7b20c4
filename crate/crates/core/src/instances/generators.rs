use rand::Rng;

use crate::classifier::MonotoneClassifier;
use crate::error::{Error, Result};
use crate::geometry::{Label, LabeledPointSet, Point};
use crate::rng;

/// The `n` one-dimensional inputs at values `1..=n` whose normal pairs
/// `(2j-1, 2j)` are labeled `(+1, -1)`, each with one anomaly pair.
///
/// The first `n/2` instances are the `-1` inputs (element `2i-1` relabeled
/// `-1`), the rest the `+1` inputs (element `2i` relabeled `+1`). Every one
/// has optimal error `n/2 - 1`.
pub fn gen_pairs_family(n: usize) -> Result<Vec<LabeledPointSet>> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::invalid(format!("the pairs family needs an even n >= 4, got {n}")));
    }
    let values: Vec<f64> = (1..=n).map(|v| v as f64).collect();
    let normal: Vec<Label> = (1..=n).map(|v| if v % 2 == 1 { Label::Pos } else { Label::Neg }).collect();
    let mut family = Vec::with_capacity(n);
    for anomaly in [Label::Neg, Label::Pos] {
        for i in 1..=n / 2 {
            let mut labels = normal.clone();
            match anomaly {
                Label::Neg => labels[2 * i - 2] = Label::Neg,
                Label::Pos => labels[2 * i - 1] = Label::Pos,
            }
            family.push(LabeledPointSet::from_values(&values, &labels)?);
        }
    }
    Ok(family)
}

/// Places `boxes` mutually independent diagonals of `len` points each; box
/// `i` moves right and down as `i` grows, so no two boxes are comparable.
fn diagonal_boxes(boxes: usize, len: &[usize], labels: &[Vec<Label>]) -> Result<LabeledPointSet> {
    let stride = len.iter().copied().max().unwrap_or(0) as f64 + 1.0;
    let mut coords = Vec::new();
    let mut all = Vec::new();
    for i in 0..boxes {
        for j in 0..len[i] {
            let x = i as f64 * stride + j as f64;
            let y = (boxes - 1 - i) as f64 * stride + j as f64;
            coords.push(vec![x, y]);
            all.push(labels[i][j]);
        }
    }
    LabeledPointSet::from_coords(2, coords, all)
}

fn check_boxes(n_prime: usize, w_prime: usize, thresholds: &[usize]) -> Result<usize> {
    if w_prime == 0 || n_prime == 0 || n_prime % w_prime != 0 {
        return Err(Error::invalid(format!("n' = {n_prime} must be a positive multiple of w' = {w_prime}")));
    }
    let m = n_prime / w_prime;
    if thresholds.len() != w_prime {
        return Err(Error::invalid(format!("expected {w_prime} thresholds, got {}", thresholds.len())));
    }
    if let Some(t) = thresholds.iter().find(|&&t| t > m) {
        return Err(Error::invalid(format!("threshold {t} exceeds the box size {m}")));
    }
    Ok(m)
}

fn box_labels(m: usize, threshold: usize) -> Vec<Label> {
    (0..m).map(|j| if j < threshold { Label::Neg } else { Label::Pos }).collect()
}

/// `w'` independent boxes with `n'/w'` diagonal points each; in box `i` the
/// `thresholds[i]` lowest points are `-1`. Monotone with width `w'`.
pub fn gen_boxes_realizable(n_prime: usize, w_prime: usize, thresholds: &[usize]) -> Result<LabeledPointSet> {
    let m = check_boxes(n_prime, w_prime, thresholds)?;
    let labels: Vec<Vec<Label>> = thresholds.iter().map(|&t| box_labels(m, t)).collect();
    diagonal_boxes(w_prime, &vec![m; w_prime], &labels)
}

/// Uniform thresholds in `[0, n'/w']`, one per box.
pub fn random_thresholds(n_prime: usize, w_prime: usize, seed: u64) -> Vec<usize> {
    let m = n_prime / w_prime.max(1);
    let mut r = rng::stream(seed, 0);
    (0..w_prime).map(|_| r.gen_range(0..=m)).collect()
}

/// The realizable boxes padded with dummy points so that the optimal error
/// is exactly `k`, plus one dummy box of `2k` points whose `k` lowest are
/// `+1` and `k` highest `-1`.
///
/// In each box, `ck` dummies copy the label of the lowest point below it, `ck`
/// copy the label of the highest point above it, and `2ck` sit between
/// consecutive points: all with the shared label, or `ck` of `-1` then `ck` of
/// `+1` across a label change. Size `n' + 2k + 2ckn'`, width `w' + 1`.
pub fn gen_boxes_nonrealizable(
    n_prime: usize,
    w_prime: usize,
    k: usize,
    c: usize,
    thresholds: &[usize],
) -> Result<LabeledPointSet> {
    let m = check_boxes(n_prime, w_prime, thresholds)?;
    if n_prime < 2 || k == 0 || c == 0 {
        return Err(Error::invalid("need n' >= 2, k >= 1 and c >= 1"));
    }
    let ck = c * k;
    let mut labels = Vec::with_capacity(w_prime + 1);
    for &t in thresholds {
        let base = box_labels(m, t);
        let mut run = vec![base[0]; ck];
        for j in 0..m {
            run.push(base[j]);
            if j + 1 < m {
                if base[j] == base[j + 1] {
                    run.extend(vec![base[j]; 2 * ck]);
                } else {
                    run.extend(vec![Label::Neg; ck]);
                    run.extend(vec![Label::Pos; ck]);
                }
            }
        }
        run.extend(vec![base[m - 1]; ck]);
        labels.push(run);
    }
    let mut dummy = vec![Label::Pos; k];
    dummy.extend(vec![Label::Neg; k]);
    labels.push(dummy);
    let lens: Vec<usize> = labels.iter().map(Vec::len).collect();
    diagonal_boxes(w_prime + 1, &lens, &labels)
}

/// Instance at `w` pairwise incomparable locations with `n/w` coincident
/// points each; location `i` has its points labeled `+1` independently with
/// probability `mu[i]`.
#[derive(Clone, Debug)]
pub struct TwoLocation {
    pub set: LabeledPointSet,
    pub mu: Vec<f64>,
    pub gamma: f64,
    /// `ln(9/8) (1 - gamma^2) / gamma^2`.
    pub m: f64,
}

/// `mu[i]` is drawn uniformly from `{(1 - gamma)/2, (1 + gamma)/2}` with
/// `gamma = 9 eps`.
pub fn gen_two_location(n: usize, w: usize, eps: f64, seed: u64) -> Result<TwoLocation> {
    if w == 0 || n == 0 || n % w != 0 {
        return Err(Error::invalid(format!("n = {n} must be a positive multiple of w = {w}")));
    }
    if !(eps > 0.0 && eps <= 0.1) {
        return Err(Error::invalid(format!("eps must lie in (0, 0.1], got {eps}")));
    }
    let gamma = 9.0 * eps;
    let (mu1, mu2) = ((1.0 - gamma) / 2.0, (1.0 + gamma) / 2.0);
    let m = (9.0f64 / 8.0).ln() * (1.0 - gamma * gamma) / (gamma * gamma);
    let mut r = rng::stream(seed, 0);
    let mu: Vec<f64> = (0..w).map(|_| if r.gen_bool(0.5) { mu1 } else { mu2 }).collect();
    let mut coords = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (i, &p) in mu.iter().enumerate() {
        for _ in 0..n / w {
            coords.push(vec![i as f64, (w - 1 - i) as f64]);
            labels.push(if r.gen_bool(p) { Label::Pos } else { Label::Neg });
        }
    }
    Ok(TwoLocation { set: LabeledPointSet::from_coords(2, coords, labels)?, mu, gamma, m })
}

/// Flips each label independently with probability `rate`.
pub fn flip_labels(set: &LabeledPointSet, rate: f64, seed: u64) -> Result<(LabeledPointSet, usize)> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::invalid(format!("flip rate must lie in [0, 1], got {rate}")));
    }
    let mut r = rng::stream(seed, 1);
    let mut flipped = 0;
    let labels = set
        .labels()
        .iter()
        .map(|&l| {
            if r.gen_bool(rate) {
                flipped += 1;
                l.flipped()
            } else {
                l
            }
        })
        .collect();
    Ok((set.with_labels(labels)?, flipped))
}

#[derive(Clone, Debug)]
pub struct NoisyInstance {
    pub set: LabeledPointSet,
    /// The monotone labeling before noise.
    pub truth: MonotoneClassifier,
    pub flipped: usize,
}

/// `n` random integer points in `[0, 10n)^d`, labeled by a random anchor set
/// and then flipped independently with probability `noise`.
pub fn gen_noisy_monotone(n: usize, d: usize, noise: f64, seed: u64) -> Result<NoisyInstance> {
    if d == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if !(0.0..0.5).contains(&noise) {
        return Err(Error::invalid(format!("noise must lie in [0, 1/2), got {noise}")));
    }
    let range = 10 * n.max(1) as u64;
    let mut r = rng::stream(seed, 0);
    let coords: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| r.gen_range(0..range) as f64).collect()).collect();
    // anchors in the middle band keep both classes populated
    let lo = range as f64 * 0.15;
    let hi = range as f64 * 0.6;
    let anchors = (0..d + 1)
        .map(|_| Point::new((0..d).map(|_| r.gen_range(lo..hi).floor()).collect()))
        .collect::<Result<Vec<_>>>()?;
    let truth = MonotoneClassifier::anchors(d, anchors)?;
    let clean = coords
        .iter()
        .map(|c| truth.evaluate(&Point::new(c.clone())?))
        .collect::<Result<Vec<_>>>()?;
    let base = LabeledPointSet::from_coords(d, coords, clean)?;
    let (set, flipped) = flip_labels(&base, noise, seed)?;
    Ok(NoisyInstance { set, truth, flipped })
}

/// 1D values `1..=n`; only the smallest is `+1`.
pub fn gen_lone_positive(n: usize) -> Result<LabeledPointSet> {
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let values: Vec<f64> = (1..=n).map(|v| v as f64).collect();
    let labels: Vec<Label> = (0..n).map(|i| if i == 0 { Label::Pos } else { Label::Neg }).collect();
    LabeledPointSet::from_values(&values, &labels)
}

/// 1D values `1..=n` labeled `+1, -1, +1, ...`.
pub fn gen_alternating(n: usize) -> Result<LabeledPointSet> {
    let values: Vec<f64> = (1..=n).map(|v| v as f64).collect();
    let labels: Vec<Label> = (0..n).map(|i| if i % 2 == 0 { Label::Pos } else { Label::Neg }).collect();
    LabeledPointSet::from_values(&values, &labels)
}

/// Realizable boxes with random thresholds and labels flipped at `noise`.
pub fn gen_noisy_boxes(n_prime: usize, w_prime: usize, noise: f64, seed: u64) -> Result<LabeledPointSet> {
    let thresholds = random_thresholds(n_prime, w_prime, seed);
    let clean = gen_boxes_realizable(n_prime, w_prime, &thresholds)?;
    Ok(flip_labels(&clean, noise, seed)?.0)
}
