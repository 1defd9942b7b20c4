use std::collections::BTreeMap;

use rand::Rng;

use super::estimate::{compute_split, ErrorEstimate};
use super::{Coreset, CoresetGroup, CoresetParams, GroupKind, SampleSizing};
use crate::classifier::{MonotoneClassifier, WeightedLabeledPoint};
use crate::error::{Error, Result};
use crate::geometry::{Label, PointSet};
use crate::oracle::ProbeOracle;
use crate::poset::{chain_decomposition, ChainDecomposition};
use crate::rng::{self, MonoRng};
use crate::solver::optimal_mincut;
use crate::stats::sample_size;

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// One chain's recursive construction, unrolled into a loop over levels.
struct ChainBuild<'a> {
    points: &'a PointSet,
    chain: &'a [usize],
    ranks: Vec<u32>,
    index: usize,
    eps: f64,
    delta: f64,
    sizing: SampleSizing,
    levels: usize,
    rng: MonoRng,
}

impl ChainBuild<'_> {
    /// Sample count for one draw at a level whose input has `level_len` elements.
    fn sample_count(&self, level_len: usize) -> Result<usize> {
        match self.sizing {
            SampleSizing::Fixed(k) => Ok(k),
            SampleSizing::Theoretical => {
                let per_classifier = self.delta / (3.0 * self.levels as f64 * (level_len + 1) as f64);
                sample_size(self.eps / 64.0, per_classifier)
            }
        }
    }

    /// Positions drawn uniformly with replacement from `target`, or all of
    /// `target` once when the count reaches its size.
    fn draw(&mut self, target: &[usize], count: usize) -> Vec<usize> {
        if count >= target.len() {
            return target.to_vec();
        }
        (0..count).map(|_| target[self.rng.gen_range(0..target.len())]).collect()
    }

    fn probe(&self, oracle: &mut ProbeOracle, pos: usize) -> Result<Label> {
        oracle.probe(self.points.id(self.chain[pos]))
    }

    fn add_group(
        &mut self,
        oracle: &mut ProbeOracle,
        target: &[usize],
        count: usize,
        kind: GroupKind,
        level: usize,
        out: &mut Coreset,
    ) -> Result<()> {
        let draws = self.draw(target, count);
        let mut multiplicity: BTreeMap<usize, usize> = BTreeMap::new();
        for &pos in &draws {
            *multiplicity.entry(pos).or_default() += 1;
        }
        let ratio = target.len() as f64 / draws.len() as f64;
        let mut weight_sum = 0.0;
        for &pos in &draws {
            let Some(m) = multiplicity.remove(&pos) else { continue };
            let label = self.probe(oracle, pos)?;
            let element = self.chain[pos];
            let weight = m as f64 * ratio;
            weight_sum += weight;
            out.points.push(WeightedLabeledPoint {
                id: self.points.id(element),
                point: self.points.point(element).clone(),
                label,
                weight,
            });
        }
        out.groups.push(CoresetGroup { chain: self.index, level, kind, target_size: target.len(), weight_sum });
        Ok(())
    }

    fn run(&mut self, oracle: &mut ProbeOracle, out: &mut Coreset) -> Result<()> {
        let limit = ceil_log2(self.chain.len()) + 2;
        let mut current: Vec<usize> = (0..self.chain.len()).collect();
        let mut level = 0;
        while !current.is_empty() {
            if level >= limit {
                return Err(Error::RecursionDepth { depth: level + 1, limit });
            }
            if current.len() == 1 {
                self.add_group(oracle, &current, 1, GroupKind::Single, level, out)?;
                break;
            }
            let count = self.sample_count(current.len())?;
            let s1 = self.draw(&current, count);
            let mut sample = Vec::with_capacity(s1.len());
            for &pos in &s1 {
                sample.push((self.ranks[pos], self.probe(oracle, pos)?));
            }
            let g1 = ErrorEstimate::new(&sample, current.len())?;
            let level_ranks: Vec<u32> = current.iter().map(|&pos| self.ranks[pos]).collect();
            let split = compute_split(&level_ranks, &g1, self.eps);
            if 2 * split.p_mid.len() >= current.len() {
                return Err(Error::SplitFailure { level, mid: split.p_mid.len(), total: current.len() });
            }
            let to_positions = |idx: &[usize]| idx.iter().map(|&i| current[i]).collect::<Vec<_>>();
            let rest = to_positions(&split.p_rest);
            let alpha = to_positions(&split.p_alpha);
            let mid = to_positions(&split.p_mid);
            if !rest.is_empty() {
                self.add_group(oracle, &rest, count, GroupKind::Rest, level, out)?;
            }
            if !alpha.is_empty() {
                self.add_group(oracle, &alpha, count, GroupKind::Alpha, level, out)?;
            }
            current = mid;
            level += 1;
        }
        Ok(())
    }
}

/// Ranks along a chain sorted ascending; equal points share a rank.
fn chain_ranks(points: &PointSet, chain: &[usize]) -> Result<Vec<u32>> {
    let mut ranks = Vec::with_capacity(chain.len());
    for (k, &e) in chain.iter().enumerate() {
        let rank = match k {
            0 => 1,
            _ => {
                let prev = chain[k - 1];
                if !points.ge(e, prev) {
                    return Err(Error::invalid("chain elements are not in ascending order"));
                }
                let last = ranks[k - 1];
                if points.point(e) == points.point(prev) {
                    last
                } else {
                    last + 1
                }
            }
        };
        ranks.push(rank);
    }
    Ok(ranks)
}

fn build_chain(
    points: &PointSet,
    chain: &[usize],
    index: usize,
    params: &CoresetParams,
    delta: f64,
    oracle: &mut ProbeOracle,
    out: &mut Coreset,
) -> Result<()> {
    let mut job = ChainBuild {
        points,
        chain,
        ranks: chain_ranks(points, chain)?,
        index,
        eps: params.eps,
        delta,
        sizing: params.sizing,
        levels: ceil_log2(chain.len()) + 1,
        rng: rng::stream(params.seed, index as u64),
    };
    job.run(oracle, out)
}

fn empty_coreset(dim: usize, chains: usize) -> Coreset {
    Coreset { dim, points: Vec::new(), groups: Vec::new(), probes: 0, chains }
}

/// Coreset of a single chain, given as element indices of `points` in
/// ascending order.
pub fn build_coreset_1d(
    points: &PointSet,
    chain: &[usize],
    params: &CoresetParams,
    oracle: &mut ProbeOracle,
) -> Result<Coreset> {
    if chain.iter().any(|&e| e >= points.len()) {
        return Err(Error::invalid("chain index out of range"));
    }
    let before = oracle.cost();
    let mut out = empty_coreset(points.dim(), 1);
    build_chain(points, chain, 0, params, params.delta, oracle, &mut out)?;
    out.probes = oracle.cost() - before;
    Ok(out)
}

/// Coreset of `points` from a precomputed chain decomposition; each chain
/// gets failure budget `delta / w` and its own RNG stream.
pub fn build_coreset_with_chains(
    points: &PointSet,
    chains: &ChainDecomposition,
    params: &CoresetParams,
    oracle: &mut ProbeOracle,
) -> Result<Coreset> {
    chains.validate(points)?;
    let before = oracle.cost();
    let mut out = empty_coreset(points.dim(), chains.len());
    let delta = params.delta / chains.len().max(1) as f64;
    for (i, chain) in chains.chains().iter().enumerate() {
        build_chain(points, chain, i, params, delta, oracle, &mut out)?;
    }
    out.probes = oracle.cost() - before;
    Ok(out)
}

pub fn build_coreset(points: &PointSet, params: &CoresetParams, oracle: &mut ProbeOracle) -> Result<Coreset> {
    if points.is_empty() {
        return Ok(empty_coreset(points.dim(), 0));
    }
    let chains = chain_decomposition(points)?;
    build_coreset_with_chains(points, &chains, params, oracle)
}

/// Minimizer of the weighted coreset error; all-negative for an empty coreset.
pub fn approx_classifier(z: &Coreset) -> Result<MonotoneClassifier> {
    if z.is_empty() {
        return MonotoneClassifier::anchors(z.dim, vec![]);
    }
    Ok(optimal_mincut(z.dim, &z.points)?.0)
}
